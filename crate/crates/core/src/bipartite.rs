//! Contracted Paintbucket positions.
//!
//! Every monochromatic group of a board is a single vertex, so every edge
//! joins a black vertex to a white one. A move by Black picks a white vertex,
//! recolors it black and merges it with all of its (black) neighbors; White
//! moves dually. The game ends when one vertex is left, and the color of that
//! vertex is the winner, which is the same as the last player to move.
//!
//! The played vertex keeps its id; the ids of merged neighbors are retired.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::color::{Color, VertexId};
use crate::doc::{GraphDocument, VertexEntry};
use crate::error::GameError;
use crate::graph::ColoredGraph;

/// A move: `player` fills the opponent vertex `target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Move {
    pub player: Color,
    pub target: VertexId,
}

impl Move {
    pub fn new(player: Color, target: VertexId) -> Self {
        Move { player, target }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.player, self.target)
    }
}

/// Connected bipartite position. Vertices are stored in ascending id order
/// and adjacency lists hold sorted indices into that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BipartitePosition {
    ids: Vec<VertexId>,
    colors: Vec<Color>,
    adj: Vec<Vec<u32>>,
}

impl BipartitePosition {
    pub fn new(
        vertices: impl IntoIterator<Item = (VertexId, Color)>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GameError> {
        let mut colors = BTreeMap::new();
        for (id, color) in vertices {
            if colors.insert(id, color).is_some() {
                return Err(GameError::DuplicateVertex(id));
            }
        }
        if colors.is_empty() {
            return Err(GameError::EmptyPosition);
        }
        let ids: Vec<VertexId> = colors.keys().copied().collect();
        let index: BTreeMap<VertexId, u32> = ids.iter().enumerate().map(|(i, &id)| (id, i as u32)).collect();
        let mut sets = vec![BTreeSet::new(); ids.len()];
        for (a, b) in edges {
            if a == b {
                return Err(GameError::SelfLoop(a));
            }
            let ia = *index.get(&a).ok_or(GameError::UnknownVertex(a))?;
            let ib = *index.get(&b).ok_or(GameError::UnknownVertex(b))?;
            if colors[&a] == colors[&b] {
                return Err(GameError::SameColorEdge(a, b));
            }
            if !sets[ia as usize].insert(ib) {
                return Err(GameError::DuplicateEdge(a.min(b), a.max(b)));
            }
            sets[ib as usize].insert(ia);
        }
        let pos = BipartitePosition {
            colors: colors.into_values().collect(),
            ids,
            adj: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        };
        if !pos.is_connected() {
            return Err(GameError::Disconnected);
        }
        Ok(pos)
    }

    /// The complete bipartite graph with `blacks` black vertices (ids
    /// `0..blacks`) and `whites` white vertices (the following ids).
    pub fn complete(blacks: u32, whites: u32) -> Self {
        let vertices = (0..blacks)
            .map(|i| (VertexId(i), Color::Black))
            .chain((0..whites).map(|i| (VertexId(blacks + i), Color::White)));
        let edges = (0..blacks).flat_map(|b| (0..whites).map(move |w| (VertexId(b), VertexId(blacks + w))));
        BipartitePosition::new(vertices, edges).expect("complete bipartite graphs are valid positions")
    }

    pub fn single(id: VertexId, color: Color) -> Self {
        BipartitePosition { ids: vec![id], colors: vec![color], adj: vec![Vec::new()] }
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn count(&self, color: Color) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, Color)> + '_ {
        self.ids.iter().copied().zip(self.colors.iter().copied())
    }

    pub fn vertices_of(&self, color: Color) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(move |&(_, c)| c == color).map(|(id, _)| id)
    }

    pub fn contains(&self, id: VertexId) -> bool {
        self.index_of(id).is_some()
    }

    pub fn color(&self, id: VertexId) -> Option<Color> {
        self.index_of(id).map(|i| self.colors[i])
    }

    pub fn neighbors(&self, id: VertexId) -> Vec<VertexId> {
        self.index_of(id)
            .map(|i| self.adj[i].iter().map(|&j| self.ids[j as usize]).collect())
            .unwrap_or_default()
    }

    pub fn degree(&self, id: VertexId) -> Option<usize> {
        self.index_of(id).map(|i| self.adj[i].len())
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adj[i].binary_search(&(j as u32)).is_ok(),
            _ => false,
        }
    }

    /// Edges as `(black, white)` pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut edges: Vec<_> = (0..self.ids.len())
            .filter(|&i| self.colors[i] == Color::Black)
            .flat_map(|i| self.adj[i].iter().map(move |&j| (self.ids[i], self.ids[j as usize])))
            .collect();
        edges.sort_unstable();
        edges
    }

    pub(crate) fn index_of(&self, id: VertexId) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub(crate) fn colors_raw(&self) -> &[Color] {
        &self.colors
    }

    pub(crate) fn adjacency_raw(&self) -> &[Vec<u32>] {
        &self.adj
    }

    /// One move per opponent vertex, in ascending target order.
    pub fn legal_moves(&self, player: Color) -> Vec<Move> {
        if self.is_terminal() {
            return Vec::new();
        }
        self.vertices_of(player.opposite()).map(|target| Move { player, target }).collect()
    }

    pub fn is_legal(&self, m: Move) -> bool {
        !self.is_terminal() && self.color(m.target) == Some(m.player.opposite())
    }

    pub fn apply_move(&self, m: Move) -> Result<Self, GameError> {
        let v = self.index_of(m.target).ok_or(GameError::UnknownTarget(m.target))?;
        if self.is_terminal() {
            return Err(GameError::GameOver);
        }
        if self.colors[v] != m.player.opposite() {
            return Err(GameError::WrongColor { target: m.target, player: m.player });
        }
        let next = self.play_index(v);
        debug_assert_eq!(next.check_invariants(), Ok(()));
        debug_assert!(next.vertex_count() < self.vertex_count());
        Ok(next)
    }

    /// Flips the vertex at index `v` and merges its neighbors into it.
    pub(crate) fn play_index(&self, v: usize) -> Self {
        let n = self.ids.len();
        let mut merged = vec![false; n];
        for &w in &self.adj[v] {
            merged[w as usize] = true;
        }
        // vertices that become adjacent to v after the merge
        let mut touched = vec![false; n];
        for &w in &self.adj[v] {
            for &x in &self.adj[w as usize] {
                touched[x as usize] = true;
            }
        }
        touched[v] = false;

        let mut new_index = vec![u32::MAX; n];
        let kept = n - self.adj[v].len();
        let mut ids = Vec::with_capacity(kept);
        let mut colors = Vec::with_capacity(kept);
        for i in 0..n {
            if !merged[i] {
                new_index[i] = ids.len() as u32;
                ids.push(self.ids[i]);
                colors.push(if i == v { self.colors[i].opposite() } else { self.colors[i] });
            }
        }
        let nv = new_index[v];
        let mut adj = Vec::with_capacity(kept);
        for i in 0..n {
            if merged[i] {
                continue;
            }
            if i == v {
                adj.push((0..n).filter(|&x| touched[x]).map(|x| new_index[x]).collect());
                continue;
            }
            let mut list: Vec<u32> =
                self.adj[i].iter().filter(|&&x| !merged[x as usize]).map(|&x| new_index[x as usize]).collect();
            if touched[i] {
                let at = list.partition_point(|&x| x < nv);
                list.insert(at, nv);
            }
            adj.push(list);
        }
        BipartitePosition { ids, colors, adj }
    }

    pub fn is_terminal(&self) -> bool {
        self.ids.len() == 1
    }

    /// Color of the last remaining vertex.
    pub fn winner(&self) -> Result<Color, GameError> {
        if self.is_terminal() {
            Ok(self.colors[0])
        } else {
            Err(GameError::NotTerminal)
        }
    }

    /// Applies `moves` in order. Players must alternate; the first move may
    /// be by either color.
    pub fn replay(&self, moves: &[Move]) -> Result<Self, GameError> {
        let mut pos = self.clone();
        let mut last: Option<Color> = None;
        for (ply, &m) in moves.iter().enumerate() {
            if last == Some(m.player) {
                return Err(GameError::OutOfTurn { ply, player: m.player });
            }
            pos = pos.apply_move(m).map_err(|e| GameError::IllegalPly { ply, source: Box::new(e) })?;
            last = Some(m.player);
        }
        Ok(pos)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.ids.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w as usize);
                }
            }
        }
        count == n
    }

    /// Checks every structural invariant: sorted unique ids, symmetric
    /// simple adjacency, proper coloring, connectivity.
    pub fn check_invariants(&self) -> Result<(), GameError> {
        if self.ids.is_empty() {
            return Err(GameError::EmptyPosition);
        }
        for w in self.ids.windows(2) {
            if w[0] >= w[1] {
                return Err(GameError::DuplicateVertex(w[1]));
            }
        }
        for (i, ns) in self.adj.iter().enumerate() {
            for w in ns.windows(2) {
                if w[0] >= w[1] {
                    return Err(GameError::DuplicateEdge(self.ids[i], self.ids[w[1] as usize]));
                }
            }
            for &j in ns {
                let j = j as usize;
                if j == i {
                    return Err(GameError::SelfLoop(self.ids[i]));
                }
                if self.colors[i] == self.colors[j] {
                    return Err(GameError::SameColorEdge(self.ids[i], self.ids[j]));
                }
                if self.adj[j].binary_search(&(i as u32)).is_err() {
                    return Err(GameError::Document(format!("asymmetric edge {}-{}", self.ids[i], self.ids[j])));
                }
            }
        }
        if !self.is_connected() {
            return Err(GameError::Disconnected);
        }
        Ok(())
    }

    /// Renames vertices through `map`, which must be injective.
    pub fn relabeled(&self, map: impl Fn(VertexId) -> VertexId) -> Result<Self, GameError> {
        BipartitePosition::new(
            self.vertices().map(|(id, c)| (map(id), c)),
            self.edges().into_iter().map(|(a, b)| (map(a), map(b))),
        )
    }

    /// Same graph with every color flipped.
    pub fn color_swapped(&self) -> Self {
        BipartitePosition {
            ids: self.ids.clone(),
            colors: self.colors.iter().map(|c| c.opposite()).collect(),
            adj: self.adj.clone(),
        }
    }

    pub fn to_colored_graph(&self) -> ColoredGraph {
        ColoredGraph::new(self.vertices(), self.edges()).expect("bipartite positions are simple graphs")
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.vertices().map(|(id, color)| VertexEntry { id, color }).collect(),
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self, GameError> {
        BipartitePosition::new(
            doc.vertices.iter().map(|v| (v.id, v.color)),
            doc.edges.iter().map(|&[a, b]| (a, b)),
        )
    }
}

impl fmt::Display for BipartitePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blacks: Vec<String> = self.vertices_of(Color::Black).map(|v| v.to_string()).collect();
        let whites: Vec<String> = self.vertices_of(Color::White).map(|v| v.to_string()).collect();
        write!(f, "black [{}] white [{}] edges [", blacks.join(" "), whites.join(" "))?;
        for (k, (a, b)) in self.edges().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        f.write_str("]")
    }
}

/// Quotient of a connected colored graph by its groups. Each group becomes
/// the vertex named after its smallest member.
pub fn contract(g: &ColoredGraph) -> Result<BipartitePosition, GameError> {
    contract_with_groups(g).map(|(p, _)| p)
}

/// Like [`contract`], also returning the members of every contracted vertex.
pub fn contract_with_groups(
    g: &ColoredGraph,
) -> Result<(BipartitePosition, BTreeMap<VertexId, Vec<VertexId>>), GameError> {
    if g.vertex_count() == 0 {
        return Err(GameError::EmptyPosition);
    }
    if !g.is_connected() {
        return Err(GameError::Disconnected);
    }
    let groups = g.groups();
    let mut owner = BTreeMap::new();
    for group in &groups {
        for &v in group {
            owner.insert(v, group[0]);
        }
    }
    let mut edges = BTreeSet::new();
    for (a, b) in g.edges() {
        let (ga, gb) = (owner[&a], owner[&b]);
        if ga != gb {
            edges.insert((ga.min(gb), ga.max(gb)));
        }
    }
    let vertices = groups.iter().map(|grp| (grp[0], g.color(grp[0]).expect("member")));
    let pos = BipartitePosition::new(vertices, edges)?;
    Ok((pos, groups.into_iter().map(|grp| (grp[0], grp)).collect()))
}
