//! Perfect-play Paintbucket solver.
//!
//! The search is plain backward induction: the player to move wins iff some
//! move leads to a position lost for the opponent. Solved positions are
//! stored in a shared transposition table keyed by (position key, player to
//! move). Among winning moves the smallest target id is reported; a lost
//! position plays its smallest target id.

mod canon;
mod matcher;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use dashmap::DashMap;
use rayon::prelude::*;
use thiserror::Error;

use crate::bipartite::{BipartitePosition, Move};
use crate::color::Color;

pub use canon::{canonical_key, isomorphic, CanonicalKey, MemoMode};
pub use matcher::find_isomorphism;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub memo: MemoMode,
    /// Maximum number of node expansions per solve call.
    pub budget: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Worker threads used for the root moves; 1 searches sequentially.
    pub threads: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { memo: MemoMode::Labeled, budget: Some(DEFAULT_BUDGET), time_limit: None, threads: 1 }
    }
}

impl SolveOptions {
    pub fn iso() -> Self {
        SolveOptions { memo: MemoMode::Iso, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("node budget exhausted after {0} expansions")]
    BudgetExhausted(u64),
    #[error("time limit of {0:?} exceeded")]
    TimeLimit(Duration),
    #[error("position is terminal")]
    Terminal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub winner: Color,
    pub pv: Vec<Move>,
    pub nodes_expanded: u64,
    pub table_hits: u64,
    pub elapsed: Duration,
}

/// Recommended move and whether it wins.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BestMove {
    pub mv: Move,
    pub winning: bool,
}

/// Solver with a transposition table that persists across calls. Safe to
/// share between threads.
pub struct Solver {
    opts: SolveOptions,
    table: DashMap<(CanonicalKey, Color), bool>,
}

struct Search<'a> {
    solver: &'a Solver,
    nodes: AtomicU64,
    hits: AtomicU64,
    abort: AtomicBool,
    deadline: Option<Instant>,
}

impl Solver {
    pub fn new(opts: SolveOptions) -> Self {
        Solver { opts, table: DashMap::new() }
    }

    pub fn options(&self) -> &SolveOptions {
        &self.opts
    }

    pub fn table_len(&self) -> usize {
        self.table.len()
    }

    pub fn clear(&self) {
        self.table.clear();
    }

    fn search(&self) -> Search<'_> {
        Search {
            solver: self,
            nodes: AtomicU64::new(0),
            hits: AtomicU64::new(0),
            abort: AtomicBool::new(false),
            deadline: self.opts.time_limit.map(|t| Instant::now() + t),
        }
    }

    /// Winner under optimal play with a principal variation.
    pub fn solve(&self, p: &BipartitePosition, to_move: Color) -> Result<SolveResult, SolveError> {
        let started = Instant::now();
        let search = self.search();
        let mover_wins = if self.opts.threads > 1 { search.root_parallel(p, to_move)? } else { search.wins(p, to_move)? };
        let winner = if mover_wins { to_move } else { to_move.opposite() };
        let pv = search.principal_variation(p, to_move)?;
        Ok(SolveResult {
            winner,
            pv,
            nodes_expanded: search.nodes.load(Ordering::Relaxed),
            table_hits: search.hits.load(Ordering::Relaxed),
            elapsed: started.elapsed(),
        })
    }

    /// Whether the player to move wins.
    pub fn mover_wins(&self, p: &BipartitePosition, to_move: Color) -> Result<bool, SolveError> {
        self.search().wins(p, to_move)
    }

    /// Smallest winning move, or the smallest legal move if none wins.
    pub fn best_move(&self, p: &BipartitePosition, to_move: Color) -> Result<BestMove, SolveError> {
        if p.is_terminal() {
            return Err(SolveError::Terminal);
        }
        let search = self.search();
        let (index, winning) = search.choose(p, to_move)?;
        Ok(BestMove { mv: Move::new(to_move, p.ids()[index]), winning })
    }
}

impl Search<'_> {
    fn wins(&self, p: &BipartitePosition, to_move: Color) -> Result<bool, SolveError> {
        if p.is_terminal() {
            return Ok(p.colors_raw()[0] == to_move);
        }
        // a lone opponent vertex is adjacent to everything: taking it ends the game
        if p.count(to_move.opposite()) == 1 {
            return Ok(true);
        }
        let key = (canonical_key(p, self.solver.opts.memo), to_move);
        if let Some(v) = self.solver.table.get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(*v);
        }
        self.expand()?;
        let mut win = false;
        for (i, &c) in p.colors_raw().iter().enumerate() {
            if c == to_move {
                continue;
            }
            if !self.wins(&p.play_index(i), to_move.opposite())? {
                win = true;
                break;
            }
        }
        self.solver.table.entry(key).or_insert(win);
        Ok(win)
    }

    fn expand(&self) -> Result<(), SolveError> {
        if self.abort.load(Ordering::Relaxed) {
            return Err(self.abort_reason());
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(budget) = self.solver.opts.budget {
            if n > budget {
                self.abort.store(true, Ordering::Relaxed);
                return Err(SolveError::BudgetExhausted(budget));
            }
        }
        if n % 1024 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    self.abort.store(true, Ordering::Relaxed);
                    return Err(SolveError::TimeLimit(self.solver.opts.time_limit.unwrap()));
                }
            }
        }
        Ok(())
    }

    fn abort_reason(&self) -> SolveError {
        match (self.solver.opts.budget, self.deadline) {
            (Some(b), _) if self.nodes.load(Ordering::Relaxed) > b => SolveError::BudgetExhausted(b),
            (_, Some(_)) => SolveError::TimeLimit(self.solver.opts.time_limit.unwrap()),
            (Some(b), None) => SolveError::BudgetExhausted(b),
            (None, None) => unreachable!("abort without a limit"),
        }
    }

    /// Evaluates every root move on the worker pool. Each child value is
    /// exact, so the outcome matches the sequential search.
    fn root_parallel(&self, p: &BipartitePosition, to_move: Color) -> Result<bool, SolveError> {
        if p.is_terminal() || p.count(to_move.opposite()) == 1 {
            return self.wins(p, to_move);
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.solver.opts.threads)
            .build()
            .expect("thread pool");
        let targets: Vec<usize> = (0..p.vertex_count()).filter(|&i| p.colors_raw()[i] != to_move).collect();
        let children: Vec<Result<bool, SolveError>> =
            pool.install(|| targets.par_iter().map(|&i| self.wins(&p.play_index(i), to_move.opposite())).collect());
        let mut win = false;
        for child in children {
            if !child? {
                win = true;
            }
        }
        let key = (canonical_key(p, self.solver.opts.memo), to_move);
        self.solver.table.entry(key).or_insert(win);
        Ok(win)
    }

    /// Index of the smallest winning target, else the smallest target.
    fn choose(&self, p: &BipartitePosition, to_move: Color) -> Result<(usize, bool), SolveError> {
        let mut first = None;
        for (i, &c) in p.colors_raw().iter().enumerate() {
            if c == to_move {
                continue;
            }
            first.get_or_insert(i);
            if !self.wins(&p.play_index(i), to_move.opposite())? {
                return Ok((i, true));
            }
        }
        Ok((first.expect("non-terminal positions have moves"), false))
    }

    fn principal_variation(&self, p: &BipartitePosition, to_move: Color) -> Result<Vec<Move>, SolveError> {
        let mut pv = Vec::new();
        let mut pos = p.clone();
        let mut player = to_move;
        while !pos.is_terminal() {
            let (i, _) = self.choose(&pos, player)?;
            pv.push(Move::new(player, pos.ids()[i]));
            pos = pos.play_index(i);
            player = player.opposite();
        }
        Ok(pv)
    }
}

/// Solves `p` with a fresh transposition table.
pub fn solve(p: &BipartitePosition, to_move: Color, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    Solver::new(opts.clone()).solve(p, to_move)
}

/// Winning move with the smallest target id, or the smallest legal move when
/// every move loses.
pub fn best_move(p: &BipartitePosition, to_move: Color, opts: &SolveOptions) -> Result<Move, SolveError> {
    Solver::new(opts.clone()).best_move(p, to_move).map(|b| b.mv)
}
