//! Mechanical checks of the structural lemmas and of the winner
//! equivalence between an avoider-enforcer position and its reduction.

pub mod generate;
mod suites;

use std::collections::BTreeMap;

use crate::ae::AePlayer;
use crate::ae::AePosition;
use crate::bipartite::{contract_with_groups, BipartitePosition, Move};
use crate::color::{Color, VertexId};
use crate::error::{AeError, GameError};
use crate::graph::ColoredGraph;
use crate::reduction::{build_reduction, ReductionError, ReductionInstance, Role};
use crate::solver::{isomorphic, SolveOptions, Solver};

pub use suites::{run_suite, CaseResult, Suite, SuiteParams, SuiteReport};

/// Black at `u_i` must mirror the avoider at `c_i`; White at `v_i` must
/// mirror the enforcer at `c_i`. Returns whether the moved graph is
/// isomorphic to the reduction of the corresponding successor.
pub fn verify_simulation_step(ri: &ReductionInstance, cell: &str, player: Color) -> Result<bool, ReductionError> {
    let i = ri.ae.cell_index(cell).ok_or_else(|| AeError::UnknownCell(cell.to_string()))?;
    let (role, ae_player) = match player {
        Color::Black => (Role::U { i }, AePlayer::Avoider),
        Color::White => (Role::V { i }, AePlayer::Enforcer),
    };
    let target = ri.id_of(role).expect("every cell has its u and v vertices");
    let moved = ri.graph.apply_move(Move::new(player, target))?;
    let successor = ri.ae.with_to_move(ae_player).apply(cell)?;
    let expected = build_reduction(&successor, ri.k)?;
    Ok(isomorphic(&moved, &expected.graph))
}

fn require_large_k(ae: &AePosition, k: usize) -> Result<(), ReductionError> {
    let needed = ae.cells().len() + 2;
    if k < needed {
        return Err(ReductionError::KTooSmall { k, needed });
    }
    Ok(())
}

/// Off-type moves by `player` after which `player` does not lose. White's
/// intended moves are the `v` vertices, Black's are the `u` vertices.
pub fn shenanigan_counterexamples(
    ri: &ReductionInstance,
    player: Color,
    solver: &Solver,
) -> Result<Vec<Role>, ReductionError> {
    require_large_k(&ri.ae, ri.k)?;
    if player == Color::Black && ri.ae.sets().is_empty() {
        return Err(ReductionError::Precondition("the Black shenanigan lemma needs a non-empty family"));
    }
    let mut failures = Vec::new();
    for m in ri.graph.legal_moves(player) {
        let role = ri.roles[&m.target];
        let intended = matches!((player, role), (Color::Black, Role::U { .. }) | (Color::White, Role::V { .. }));
        if intended {
            continue;
        }
        let child = ri.graph.apply_move(m)?;
        if !solver.mover_wins(&child, player.opposite())? {
            failures.push(role);
        }
    }
    Ok(failures)
}

/// True iff every off-type move by `player` loses.
pub fn verify_shenanigans(ri: &ReductionInstance, player: Color, opts: &SolveOptions) -> Result<bool, ReductionError> {
    let solver = Solver::new(opts.clone());
    Ok(shenanigan_counterexamples(ri, player, &solver)?.is_empty())
}

/// Both sides of the winner equivalence for one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropositionCheck {
    /// Even `|C|`: Black wins moving first. Odd `|C|`: Black wins moving second.
    pub black_wins: bool,
    /// Even `|C|`: the avoider wins moving first. Odd: moving second.
    pub avoider_wins: bool,
}

impl PropositionCheck {
    pub fn holds(&self) -> bool {
        self.black_wins == self.avoider_wins
    }
}

pub fn check_proposition(ae: &AePosition, k: usize, solver: &Solver) -> Result<PropositionCheck, ReductionError> {
    require_large_k(ae, k)?;
    let ri = build_reduction(ae, k)?;
    let even = ae.cells().len() % 2 == 0;
    let (paint_first, ae_first) =
        if even { (Color::Black, AePlayer::Avoider) } else { (Color::White, AePlayer::Enforcer) };
    let black_wins = solver.mover_wins(&ri.graph, paint_first)? == (paint_first == Color::Black);
    let avoider_wins = ae.with_to_move(ae_first).solve()?.winner == AePlayer::Avoider;
    Ok(PropositionCheck { black_wins, avoider_wins })
}

/// Truth value of the winner biconditional for `G_K(C, A)`.
pub fn verify_proposition(ae: &AePosition, k: usize, opts: &SolveOptions) -> Result<bool, ReductionError> {
    Ok(check_proposition(ae, k, &Solver::new(opts.clone()))?.holds())
}

/// Names `c1..cn`.
pub fn cell_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("c{i}")).collect()
}

/// Every family of at most `max_sets` subsets of `cells`, up to the order of
/// its members (repetitions included).
pub fn enumerate_families(cells: &[String], max_sets: usize) -> Vec<Vec<Vec<String>>> {
    let subsets: Vec<Vec<String>> = (0..1u32 << cells.len())
        .map(|mask| cells.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, c)| c.clone()).collect())
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        subsets: &[Vec<String>],
        start: usize,
        left: usize,
        current: &mut Vec<Vec<String>>,
        out: &mut Vec<Vec<Vec<String>>>,
    ) {
        out.push(current.clone());
        if left == 0 {
            return;
        }
        for s in start..subsets.len() {
            current.push(subsets[s].clone());
            rec(subsets, s, left - 1, current, out);
            current.pop();
        }
    }
    rec(&subsets, 0, max_sets, &mut current, &mut out);
    out
}

/// Every position on `c1..c<cells>` with at most `max_sets` avoider sets.
pub fn enumerate_ae(cells: usize, max_sets: usize, to_move: AePlayer) -> Vec<AePosition> {
    let names = cell_names(cells);
    enumerate_families(&names, max_sets)
        .into_iter()
        .map(|family| AePosition::new(names.iter().cloned(), family, to_move).expect("generated positions are valid"))
        .collect()
}

/// Winner of Paintbucket played directly on a colored graph by flipping
/// groups, without contracting.
pub fn colored_graph_winner(g: &ColoredGraph, to_move: Color) -> Color {
    fn rec(g: &ColoredGraph, to_move: Color, memo: &mut BTreeMap<(Vec<Color>, Color), Color>) -> Color {
        if g.is_monochromatic() {
            return g.vertices().next().map(|(_, c)| c).expect("non-empty graph");
        }
        let key = (g.vertices().map(|(_, c)| c).collect::<Vec<_>>(), to_move);
        if let Some(&w) = memo.get(&key) {
            return w;
        }
        let mut winner = to_move.opposite();
        for group in g.groups() {
            if g.color(group[0]) != Some(to_move.opposite()) {
                continue;
            }
            let next = g.flip_group(group[0], to_move).expect("opponent group");
            if rec(&next, to_move.opposite(), memo) == to_move {
                winner = to_move;
                break;
            }
        }
        memo.insert(key, winner);
        winner
    }
    rec(g, to_move, &mut BTreeMap::new())
}

/// Flipping the group of `target` then contracting must equal contracting
/// then playing the group's vertex, after renaming every surviving vertex to
/// the smallest member of its new group.
pub fn contraction_commutes(g: &ColoredGraph, target: VertexId, player: Color) -> Result<bool, GameError> {
    let (contracted, _) = contract_with_groups(g)?;
    let group_min = g.group_of(target).ok_or(GameError::UnknownTarget(target))?[0];
    let flipped = g.flip_group(target, player)?;
    let (expected, _) = contract_with_groups(&flipped)?;
    let moved = contracted.apply_move(Move::new(player, group_min))?;
    let renamed = moved.relabeled(|id| flipped.group_of(id).expect("surviving ids are original vertices")[0])?;
    Ok(renamed == expected)
}

/// Lemma check for twins: after the opponent plays `twins[0]`, every other
/// twin is a leaf hanging off `twins[0]`.
pub fn twins_become_leaves(p: &BipartitePosition, twins: &[VertexId]) -> Result<bool, GameError> {
    let color = p.color(twins[0]).ok_or(GameError::UnknownTarget(twins[0]))?;
    let after = p.apply_move(Move::new(color.opposite(), twins[0]))?;
    Ok(twins[1..].iter().all(|&t| after.neighbors(t) == vec![twins[0]]))
}
