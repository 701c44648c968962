//! Named property suites run by the command-line verifier and the
//! acceptance tests.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::generate::{random_claw, random_twins};
use super::{
    check_proposition, colored_graph_winner, contraction_commutes, enumerate_ae, shenanigan_counterexamples,
    twins_become_leaves, verify_simulation_step,
};
use crate::ae::AePlayer;
use crate::bipartite::{contract, BipartitePosition};
use crate::color::Color;
use crate::grid::GridPosition;
use crate::reduction::{build_reduction, default_k};
use crate::solver::{MemoMode, SolveOptions, Solver};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Claw,
    Neighbors,
    Complete,
    Shenanigans,
    Simulation,
    Proposition,
    Normalization,
    Representation,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Claw,
        Suite::Neighbors,
        Suite::Complete,
        Suite::Shenanigans,
        Suite::Simulation,
        Suite::Proposition,
        Suite::Normalization,
        Suite::Representation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Claw => "claw",
            Suite::Neighbors => "neighbors",
            Suite::Complete => "complete",
            Suite::Shenanigans => "shenanigans",
            Suite::Simulation => "simulation",
            Suite::Proposition => "proposition",
            Suite::Normalization => "normalization",
            Suite::Representation => "representation",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite `{s}` (expected one of {})", names.join(", "))
        })
    }
}

/// Size bounds. Unset fields fall back to per-suite defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteParams {
    /// Largest side of `K_{m,n}`, or the largest grid dimension.
    pub max: Option<usize>,
    pub cells: Option<usize>,
    pub sets: Option<usize>,
    /// Number of random instances.
    pub count: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{tag} {}", c.name)?;
            } else {
                writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
            }
        }
        write!(f, "{}: {} passed, {} failed", self.suite, self.passed(), self.failed())
    }
}

fn case(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CaseResult {
    CaseResult { name: name.into(), passed, detail: detail.into() }
}

fn error_case(name: impl Into<String>, err: impl fmt::Display) -> CaseResult {
    case(name, false, format!("error: {err}"))
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> SuiteReport {
    let cases = match suite {
        Suite::Claw => claw(params),
        Suite::Neighbors => neighbors(params),
        Suite::Complete => complete(params),
        Suite::Shenanigans => shenanigans(params),
        Suite::Simulation => simulation(params),
        Suite::Proposition => proposition(params),
        Suite::Normalization => normalization(params),
        Suite::Representation => representation(params),
    };
    SuiteReport { suite, cases }
}

/// Winner of `K_{m,n}` with `to_move` first, read off the four clauses.
pub fn complete_expected(m: usize, n: usize, to_move: Color) -> Color {
    match (m > 1, n > 1) {
        (true, true) => to_move.opposite(),
        (true, false) => Color::Black,
        (false, true) => Color::White,
        (false, false) => to_move,
    }
}

fn complete(params: &SuiteParams) -> Vec<CaseResult> {
    let max = params.max.unwrap_or(4);
    let solver = Solver::new(SolveOptions::default());
    let mut out = Vec::new();
    for m in 1..=max {
        for n in 1..=max {
            let p = BipartitePosition::complete(m as u32, n as u32);
            let mut got = Vec::new();
            let mut ok = true;
            for to_move in Color::ALL {
                match solver.solve(&p, to_move) {
                    Ok(r) => {
                        ok &= r.winner == complete_expected(m, n, to_move);
                        got.push(format!("{to_move} first: {} wins", r.winner));
                    }
                    Err(e) => {
                        ok = false;
                        got.push(format!("{to_move} first: {e}"));
                    }
                }
            }
            out.push(case(format!("K{m},{n}"), ok, got.join(", ")));
        }
    }
    out
}

fn claw(params: &SuiteParams) -> Vec<CaseResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let max_base = params.max.unwrap_or(10);
    let solver = Solver::new(SolveOptions::default());
    (0..params.count.unwrap_or(200))
        .map(|i| {
            let c = random_claw(&mut rng, max_base, 6);
            let name = format!("claw#{i} m={} k={} n={}", c.whites, c.leaves, c.position.vertex_count());
            let first = solver.solve(&c.position, Color::Black).map(|r| r.winner);
            let second = solver.solve(&c.position, Color::White).map(|r| r.winner);
            match (first, second) {
                (Ok(first), Ok(second)) => {
                    let ok = first == Color::Black && (c.whites == c.leaves || second == Color::Black);
                    case(name, ok, format!("Black first: {first} wins, White first: {second} wins; {}", c.position))
                }
                (Err(e), _) | (_, Err(e)) => error_case(name, e),
            }
        })
        .collect()
}

fn neighbors(params: &SuiteParams) -> Vec<CaseResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let max_base = params.max.unwrap_or(8);
    (0..params.count.unwrap_or(200))
        .map(|i| {
            let (p, twins) = random_twins(&mut rng, max_base, 4);
            let name = format!("twins#{i} n={} twins={}", p.vertex_count(), twins.len());
            match twins_become_leaves(&p, &twins) {
                Ok(ok) => case(name, ok, if ok { String::new() } else { p.to_string() }),
                Err(e) => error_case(name, e),
            }
        })
        .collect()
}

fn shenanigans(params: &SuiteParams) -> Vec<CaseResult> {
    let solver = Solver::new(SolveOptions { memo: MemoMode::Iso, ..Default::default() });
    let mut out = Vec::new();
    for cells in 0..=params.cells.unwrap_or(2) {
        for ae in enumerate_ae(cells, params.sets.unwrap_or(2), AePlayer::Avoider) {
            let ri = match build_reduction(&ae, default_k(&ae)) {
                Ok(ri) => ri,
                Err(e) => {
                    out.push(error_case(ae.to_string(), e));
                    continue;
                }
            };
            for player in Color::ALL {
                if player == Color::Black && ae.sets().is_empty() {
                    continue;
                }
                let name = format!("{} {player}", ae_label(&ae));
                match shenanigan_counterexamples(&ri, player, &solver) {
                    Ok(bad) if bad.is_empty() => out.push(case(name, true, "")),
                    Ok(bad) => {
                        let roles: Vec<String> = bad.iter().map(|r| r.to_string()).collect();
                        out.push(case(name, false, format!("off-type moves that do not lose: {}", roles.join(" "))))
                    }
                    Err(e) => out.push(error_case(name, e)),
                }
            }
        }
    }
    out
}

fn simulation(params: &SuiteParams) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for cells in 1..=params.cells.unwrap_or(3) {
        for ae in enumerate_ae(cells, params.sets.unwrap_or(2), AePlayer::Avoider) {
            let ri = match build_reduction(&ae, default_k(&ae)) {
                Ok(ri) => ri,
                Err(e) => {
                    out.push(error_case(ae.to_string(), e));
                    continue;
                }
            };
            for cell in ae.cells() {
                for player in Color::ALL {
                    let name = format!("{} {player}@{cell}", ae_label(&ae));
                    match verify_simulation_step(&ri, cell, player) {
                        Ok(ok) => out.push(case(name, ok, "")),
                        Err(e) => out.push(error_case(name, e)),
                    }
                }
            }
        }
    }
    out
}

fn proposition(params: &SuiteParams) -> Vec<CaseResult> {
    let solver = Solver::new(SolveOptions { memo: MemoMode::Iso, ..Default::default() });
    let mut out = Vec::new();
    for cells in 0..=params.cells.unwrap_or(2) {
        for ae in enumerate_ae(cells, params.sets.unwrap_or(2), AePlayer::Avoider) {
            let name = ae_label(&ae);
            match check_proposition(&ae, default_k(&ae), &solver) {
                Ok(c) => out.push(case(
                    name,
                    c.holds(),
                    format!(
                        "Black {}, avoider {}",
                        if c.black_wins { "wins" } else { "loses" },
                        if c.avoider_wins { "wins" } else { "loses" }
                    ),
                )),
                Err(e) => out.push(error_case(name, e)),
            }
        }
    }
    out
}

fn normalization(params: &SuiteParams) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for cells in 0..=params.cells.unwrap_or(4) {
        for base in enumerate_ae(cells, params.sets.unwrap_or(3), AePlayer::Avoider) {
            for to_move in [AePlayer::Avoider, AePlayer::Enforcer] {
                let ae = base.with_to_move(to_move);
                let name = ae_label(&ae);
                let result = (|| {
                    let original = ae.solve()?.winner;
                    let mut steps = Vec::new();
                    let mut current = ae.clone();
                    if current.to_move() == AePlayer::Enforcer {
                        current = current.normalize_avoider_first()?;
                        steps.push(("avoider-first", current.solve()?.winner));
                    }
                    if current.cells().len() % 2 == 1 {
                        current = current.normalize_even()?;
                        steps.push(("even", current.solve()?.winner));
                    }
                    Ok::<_, crate::error::AeError>((original, steps))
                })();
                match result {
                    Ok((original, steps)) => {
                        let ok = steps.iter().all(|&(_, w)| w == original);
                        let detail: Vec<String> = steps.iter().map(|(s, w)| format!("{s}: {w} wins")).collect();
                        out.push(case(name, ok, format!("{original} wins; {}", detail.join(", "))));
                    }
                    Err(e) => out.push(error_case(name, e)),
                }
            }
        }
    }
    out
}

fn representation(params: &SuiteParams) -> Vec<CaseResult> {
    let max = params.max.unwrap_or(3);
    let solver = Solver::new(SolveOptions::default());
    let mut out = Vec::new();
    for cols in 2..=max.max(2) {
        let (rows, cols) = (2, cols);
        let n = rows * cols;
        for mask in 0u32..1 << n {
            let pixels: Vec<Color> =
                (0..n).map(|i| if mask & (1 << i) != 0 { Color::Black } else { Color::White }).collect();
            let grid = GridPosition::new(rows, cols, pixels).expect("valid grid");
            let g = grid.to_colored_graph();
            let p = match contract(&g) {
                Ok(p) => p,
                Err(e) => {
                    out.push(error_case(grid.to_text().replace('\n', "/"), e));
                    continue;
                }
            };
            for to_move in Color::ALL {
                let name = format!("{} {to_move} to move", grid.to_text().trim_end().replace('\n', "/"));
                let direct = colored_graph_winner(&g, to_move);
                let mut commutes = true;
                for (id, color) in g.vertices() {
                    if color != to_move && !g.is_monochromatic() {
                        commutes &= contraction_commutes(&g, id, to_move).unwrap_or(false);
                    }
                }
                match solver.solve(&p, to_move) {
                    Ok(r) => out.push(case(
                        name,
                        r.winner == direct && commutes,
                        format!("graph: {direct} wins, contracted: {} wins, moves commute: {commutes}", r.winner),
                    )),
                    Err(e) => out.push(error_case(name, e)),
                }
            }
        }
    }
    out
}

fn ae_label(ae: &crate::ae::AePosition) -> String {
    ae.to_string()
}
