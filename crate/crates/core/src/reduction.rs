//! The Paintbucket position `G_K(C, A)` encoding an avoider-enforcer
//! position.
//!
//! Black vertices: `v_i` per cell, the cluster `w_1..w_K`, and `r`.
//! White vertices: `u_i` per cell, a cluster `t_{j,1}..t_{j,K}` per avoider
//! set, and `s`.
//!
//! * `r` is adjacent to every white vertex and `s` to every black vertex;
//! * `u_i` is a pendant of `v_i` (its other neighbor is `r`);
//! * the `w` and `t` vertices form a complete bipartite graph;
//! * `v_i` is adjacent to the whole cluster of `A_j` iff `c_i` is in `A_j`.
//!
//! Ids are dense from 0 in the order `r, s, v_1..v_I, u_1..u_I, w_1..w_K,
//! t_{1,1}..t_{J,K}`. Role indices are 1-based.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ae::{AePlayer, AePosition};
use crate::bipartite::BipartitePosition;
use crate::color::{Color, VertexId};
use crate::error::{AeError, GameError};
use crate::solver::SolveError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Role {
    V { i: usize },
    U { i: usize },
    W { k: usize },
    T { j: usize, k: usize },
    R,
    S,
}

impl Role {
    pub fn color(self) -> Color {
        match self {
            Role::V { .. } | Role::W { .. } | Role::R => Color::Black,
            Role::U { .. } | Role::T { .. } | Role::S => Color::White,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::V { i } => write!(f, "v_{i}"),
            Role::U { i } => write!(f, "u_{i}"),
            Role::W { k } => write!(f, "w_{k}"),
            Role::T { j, k } => write!(f, "t_{{{j},{k}}}"),
            Role::R => f.write_str("r"),
            Role::S => f.write_str("s"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("K must be at least 1")]
    ZeroK,
    #[error("K = {k} is below |C| + 2 = {needed}; the shenanigan lemmas do not apply")]
    KTooSmall { k: usize, needed: usize },
    #[error("{0}")]
    Precondition(&'static str),
    #[error(transparent)]
    Ae(#[from] AeError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Sidecar document mapping every vertex id to its role.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RolesDocument {
    pub roles: BTreeMap<VertexId, Role>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionInstance {
    pub ae: AePosition,
    pub k: usize,
    pub graph: BipartitePosition,
    pub roles: BTreeMap<VertexId, Role>,
}

/// `|C| + 2`, the smallest cluster size the shenanigan lemmas allow.
pub fn default_k(ae: &AePosition) -> usize {
    ae.cells().len() + 2
}

pub fn build_reduction(ae: &AePosition, k: usize) -> Result<ReductionInstance, ReductionError> {
    if k == 0 {
        return Err(ReductionError::ZeroK);
    }
    let cells = ae.cells().len();
    let sets = ae.sets().len();
    let mut roles = BTreeMap::new();
    let mut next = 0u32;
    let mut add = |role: Role| {
        let id = VertexId(next);
        next += 1;
        roles.insert(id, role);
        id
    };
    let r = add(Role::R);
    let s = add(Role::S);
    let v: Vec<VertexId> = (1..=cells).map(|i| add(Role::V { i })).collect();
    let u: Vec<VertexId> = (1..=cells).map(|i| add(Role::U { i })).collect();
    let w: Vec<VertexId> = (1..=k).map(|k| add(Role::W { k })).collect();
    let t: Vec<Vec<VertexId>> = (1..=sets).map(|j| (1..=k).map(|kk| add(Role::T { j, k: kk })).collect()).collect();

    let blacks: Vec<VertexId> = v.iter().chain(&w).copied().chain([r]).collect();
    let whites: Vec<VertexId> = u.iter().chain(t.iter().flatten()).copied().chain([s]).collect();

    let mut edges = BTreeSet::new();
    for &x in &whites {
        edges.insert((r, x));
    }
    for &b in &blacks {
        edges.insert((b, s));
    }
    for i in 0..cells {
        edges.insert((v[i], u[i]));
    }
    for &wk in &w {
        for &tj in t.iter().flatten() {
            edges.insert((wk, tj));
        }
    }
    for (j, set) in ae.sets().iter().enumerate() {
        for (i, cell) in ae.cells().iter().enumerate() {
            if set.contains(cell) {
                for &tjk in &t[j] {
                    edges.insert((v[i], tjk));
                }
            }
        }
    }
    let vertices = roles.iter().map(|(&id, role)| (id, role.color()));
    let graph = BipartitePosition::new(vertices, edges)?;
    Ok(ReductionInstance { ae: ae.clone(), k, graph, roles })
}

impl ReductionInstance {
    pub fn role(&self, id: VertexId) -> Option<Role> {
        self.roles.get(&id).copied()
    }

    pub fn id_of(&self, role: Role) -> Option<VertexId> {
        self.roles.iter().find(|(_, &r)| r == role).map(|(&id, _)| id)
    }

    pub fn roles_document(&self) -> RolesDocument {
        RolesDocument { roles: self.roles.clone() }
    }

    /// Checks the built graph against the defining adjacency rules and
    /// vertex counts. Returns a description of the first violation.
    pub fn audit(&self) -> Result<(), String> {
        let g = &self.graph;
        let (cells, sets, k) = (self.ae.cells().len(), self.ae.sets().len(), self.k);
        if g.count(Color::Black) != cells + k + 1 {
            return Err(format!("{} black vertices, expected {}", g.count(Color::Black), cells + k + 1));
        }
        if g.count(Color::White) != cells + sets * k + 1 {
            return Err(format!("{} white vertices, expected {}", g.count(Color::White), cells + sets * k + 1));
        }
        for (id, color) in g.vertices() {
            let role = self.role(id).ok_or_else(|| format!("vertex {id} has no role"))?;
            if role.color() != color {
                return Err(format!("{role} has color {color}"));
            }
        }
        for (b, w) in g.vertices_of(Color::Black).flat_map(|b| g.vertices_of(Color::White).map(move |w| (b, w))) {
            let (rb, rw) = (self.roles[&b], self.roles[&w]);
            let expected = match (rb, rw) {
                (Role::R, _) | (_, Role::S) => true,
                (Role::V { i }, Role::U { i: i2 }) => i == i2,
                (Role::W { .. }, Role::T { .. }) => true,
                (Role::V { i }, Role::T { j, .. }) => self.ae.sets()[j - 1].contains(&self.ae.cells()[i - 1]),
                _ => false,
            };
            if g.has_edge(b, w) != expected {
                return Err(format!("edge {rb}-{rw} is {}", if expected { "missing" } else { "unexpected" }));
            }
        }
        for i in 1..=cells {
            let ui = self.id_of(Role::U { i }).ok_or("missing u vertex")?;
            if g.degree(ui) != Some(2) {
                return Err(format!("u_{i} has degree {:?}", g.degree(ui)));
            }
        }
        if !g.is_connected() {
            return Err("graph is disconnected".into());
        }
        Ok(())
    }
}

/// Normalization applied by [`reduce_decision`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// A free cell was added so that the avoider moves first.
    AvoiderFirst,
    /// A cell and its singleton avoider set were added to make `|C|` even.
    EvenCells,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::AvoiderFirst => "added free cell x0 so the avoider moves first",
            Normalization::EvenCells => "added cell x1 with avoider set {x1} to make the cell count even",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedDecision {
    pub instance: ReductionInstance,
    /// Always Black: the avoider moves first in the normalized position.
    pub to_move: Color,
    pub steps: Vec<Normalization>,
}

/// Normalizes `ae` to an even number of cells with the avoider to move and
/// builds `G_K` with `K = |C| + 2`. Black to move wins the result iff the
/// avoider wins `ae`.
pub fn reduce_decision(ae: &AePosition) -> Result<ReducedDecision, ReductionError> {
    let mut steps = Vec::new();
    let mut pos = ae.clone();
    if pos.to_move() == AePlayer::Enforcer {
        pos = pos.normalize_avoider_first()?;
        steps.push(Normalization::AvoiderFirst);
    }
    if pos.cells().len() % 2 == 1 {
        pos = pos.normalize_even()?;
        steps.push(Normalization::EvenCells);
    }
    let k = default_k(&pos);
    let instance = build_reduction(&pos, k)?;
    Ok(ReducedDecision { instance, to_move: Color::Black, steps })
}
