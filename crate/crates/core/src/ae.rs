//! The avoider-enforcer game in its cell-removal formulation.
//!
//! A move by the avoider at cell `c` removes `c` from the board and from
//! every avoider set. A move by the enforcer at `c` removes `c` from the board
//! and drops every avoider set containing it. When the board is empty the
//! avoider has won iff no avoider set survives.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::doc::AeDocument;
use crate::error::AeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AePlayer {
    Avoider,
    Enforcer,
}

impl AePlayer {
    pub fn opposite(self) -> AePlayer {
        match self {
            AePlayer::Avoider => AePlayer::Enforcer,
            AePlayer::Enforcer => AePlayer::Avoider,
        }
    }
}

impl fmt::Display for AePlayer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AePlayer::Avoider => "Avoider",
            AePlayer::Enforcer => "Enforcer",
        })
    }
}

impl FromStr for AePlayer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "avoider" => Ok(AePlayer::Avoider),
            "enforcer" => Ok(AePlayer::Enforcer),
            other => Err(format!("unknown avoider-enforcer player `{other}`")),
        }
    }
}

/// Cell added by [`AePosition::normalize_avoider_first`].
pub const FIRST_MOVE_CELL: &str = "x0";
/// Cell added by [`AePosition::normalize_even`].
pub const PARITY_CELL: &str = "x1";

/// Names of the form `x<digits>` are reserved for normalization cells.
pub fn is_reserved_cell(name: &str) -> bool {
    name.strip_prefix('x').is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
}

/// Position `(C, A)` plus the player to move. Cells keep their declaration
/// order; avoider sets form an indexed family and may repeat.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AePosition {
    cells: Vec<String>,
    sets: Vec<BTreeSet<String>>,
    to_move: AePlayer,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AeOutcome {
    pub winner: AePlayer,
    pub pv: Vec<(AePlayer, String)>,
}

impl AePosition {
    pub fn new<S: Into<String>>(
        cells: impl IntoIterator<Item = S>,
        sets: impl IntoIterator<Item = Vec<S>>,
        to_move: AePlayer,
    ) -> Result<Self, AeError> {
        let mut seen = BTreeSet::new();
        let mut ordered = Vec::new();
        for c in cells {
            let c = c.into();
            if is_reserved_cell(&c) {
                return Err(AeError::ReservedCell(c));
            }
            if !seen.insert(c.clone()) {
                return Err(AeError::DuplicateCell(c));
            }
            ordered.push(c);
        }
        let mut family = Vec::new();
        for set in sets {
            let mut members = BTreeSet::new();
            for c in set {
                let c = c.into();
                if !seen.contains(&c) {
                    return Err(AeError::UnknownCell(c));
                }
                members.insert(c);
            }
            family.push(members);
        }
        Ok(AePosition { cells: ordered, sets: family, to_move })
    }

    pub fn cells(&self) -> &[String] {
        &self.cells
    }

    pub fn sets(&self) -> &[BTreeSet<String>] {
        &self.sets
    }

    pub fn to_move(&self) -> AePlayer {
        self.to_move
    }

    pub fn with_to_move(&self, to_move: AePlayer) -> AePosition {
        AePosition { to_move, ..self.clone() }
    }

    /// 1-based position of `cell` in declaration order.
    pub fn cell_index(&self, cell: &str) -> Option<usize> {
        self.cells.iter().position(|c| c == cell).map(|i| i + 1)
    }

    /// The player to move claims `cell`.
    pub fn apply(&self, cell: &str) -> Result<AePosition, AeError> {
        if !self.cells.iter().any(|c| c == cell) {
            return Err(AeError::UnknownCell(cell.to_string()));
        }
        let cells = self.cells.iter().filter(|c| *c != cell).cloned().collect();
        let sets = match self.to_move {
            AePlayer::Avoider => self
                .sets
                .iter()
                .map(|s| {
                    let mut s = s.clone();
                    s.remove(cell);
                    s
                })
                .collect(),
            AePlayer::Enforcer => self.sets.iter().filter(|s| !s.contains(cell)).cloned().collect(),
        };
        Ok(AePosition { cells, sets, to_move: self.to_move.opposite() })
    }

    /// Winner of a finished game: the avoider iff no avoider set survives.
    pub fn winner_at_end(&self) -> Result<AePlayer, AeError> {
        if !self.cells.is_empty() {
            return Err(AeError::NotFinished(self.cells.len()));
        }
        Ok(if self.sets.is_empty() { AePlayer::Avoider } else { AePlayer::Enforcer })
    }

    /// Winner under optimal play with a witness line. Among winning cells the
    /// lexicographically smallest is chosen; a losing side plays its smallest
    /// cell.
    pub fn solve(&self) -> Result<AeOutcome, AeError> {
        let mut search = AeSearch::new(self)?;
        let mut remaining = search.full;
        let mut family = search.initial_family();
        let mut to_move = self.to_move;
        let winner = search.winner(remaining, &family, to_move);
        let order = search.order.clone();
        let mut pv = Vec::with_capacity(self.cells.len());
        while remaining != 0 {
            let choice = order
                .iter()
                .copied()
                .filter(|&c| remaining & (1 << c) != 0)
                .find(|&c| {
                    let (r, f) = AeSearch::play(remaining, &family, to_move, c);
                    search.winner(r, &f, to_move.opposite()) == to_move
                })
                .unwrap_or_else(|| order.iter().copied().find(|&c| remaining & (1 << c) != 0).unwrap());
            pv.push((to_move, self.cells[choice].clone()));
            (remaining, family) = AeSearch::play(remaining, &family, to_move, choice);
            to_move = to_move.opposite();
        }
        Ok(AeOutcome { winner, pv })
    }

    /// Gives the avoider the move by adding a cell outside every avoider set.
    pub fn normalize_avoider_first(&self) -> Result<AePosition, AeError> {
        if self.to_move != AePlayer::Enforcer {
            return Err(AeError::Precondition("the enforcer to move"));
        }
        let mut cells = self.cells.clone();
        cells.push(FIRST_MOVE_CELL.to_string());
        Ok(AePosition { cells, sets: self.sets.clone(), to_move: AePlayer::Avoider })
    }

    /// Makes the cell count even by adding a cell together with the
    /// singleton avoider set containing it.
    pub fn normalize_even(&self) -> Result<AePosition, AeError> {
        if self.to_move != AePlayer::Avoider {
            return Err(AeError::Precondition("the avoider to move"));
        }
        if self.cells.len() % 2 == 0 {
            return Err(AeError::Precondition("an odd number of cells"));
        }
        let mut cells = self.cells.clone();
        cells.push(PARITY_CELL.to_string());
        let mut sets = self.sets.clone();
        sets.push(BTreeSet::from([PARITY_CELL.to_string()]));
        Ok(AePosition { cells, sets, to_move: self.to_move })
    }

    pub fn to_document(&self) -> AeDocument {
        AeDocument {
            cells: self.cells.clone(),
            sets: self.sets.iter().map(|s| s.iter().cloned().collect()).collect(),
            to_move: self.to_move,
        }
    }

    pub fn from_document(doc: &AeDocument) -> Result<Self, AeError> {
        AePosition::new(doc.cells.iter().cloned(), doc.sets.iter().cloned(), doc.to_move)
    }
}

impl fmt::Display for AePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> =
            self.sets.iter().map(|s| format!("{{{}}}", s.iter().cloned().collect::<Vec<_>>().join(","))).collect();
        write!(f, "({{{}}}, [{}], {} to move)", self.cells.join(","), sets.join(", "), self.to_move)
    }
}

/// Backward induction over bitmask states. Avoider sets are bitmasks over
/// the original cell indices; the family is kept sorted and deduplicated,
/// which does not change the winner.
struct AeSearch {
    full: u64,
    masks: Vec<u64>,
    order: Vec<usize>,
    memo: HashMap<(u64, Vec<u64>, AePlayer), AePlayer>,
}

impl AeSearch {
    fn new(p: &AePosition) -> Result<Self, AeError> {
        let n = p.cells.len();
        if n > 64 {
            return Err(AeError::TooLarge(n));
        }
        let masks = p
            .sets
            .iter()
            .map(|s| s.iter().map(|c| 1u64 << p.cells.iter().position(|x| x == c).unwrap()).fold(0, |a, b| a | b))
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| p.cells[a].cmp(&p.cells[b]));
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(AeSearch { full, masks, order, memo: HashMap::new() })
    }

    fn initial_family(&self) -> Vec<u64> {
        let mut f = self.masks.clone();
        f.sort_unstable();
        f.dedup();
        f
    }

    fn play(remaining: u64, family: &[u64], player: AePlayer, cell: usize) -> (u64, Vec<u64>) {
        let bit = 1u64 << cell;
        let mut next: Vec<u64> = match player {
            AePlayer::Avoider => family.iter().map(|s| s & !bit).collect(),
            AePlayer::Enforcer => family.iter().copied().filter(|s| s & bit == 0).collect(),
        };
        next.sort_unstable();
        next.dedup();
        (remaining & !bit, next)
    }

    fn winner(&mut self, remaining: u64, family: &[u64], to_move: AePlayer) -> AePlayer {
        // an emptied avoider set can never be removed again
        if family.is_empty() {
            return AePlayer::Avoider;
        }
        if family[0] == 0 {
            return AePlayer::Enforcer;
        }
        let key = (remaining, family.to_vec(), to_move);
        if let Some(&w) = self.memo.get(&key) {
            return w;
        }
        let mut result = to_move.opposite();
        let mut rest = remaining;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (r, f) = AeSearch::play(remaining, family, to_move, c);
            if self.winner(r, &f, to_move.opposite()) == to_move {
                result = to_move;
                break;
            }
        }
        self.memo.insert(key, result);
        result
    }
}
