//! Paintbucket on arbitrary two-colored simple graphs.

use std::collections::{BTreeMap, BTreeSet};

use crate::color::{Color, VertexId};
use crate::doc::{GraphDocument, VertexEntry};
use crate::error::GameError;

/// Simple undirected graph with a color on every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    colors: BTreeMap<VertexId, Color>,
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl ColoredGraph {
    /// Validates simplicity: no self-loops, no repeated edges, no unknown endpoints.
    pub fn new(
        vertices: impl IntoIterator<Item = (VertexId, Color)>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GameError> {
        let mut colors = BTreeMap::new();
        let mut adj = BTreeMap::new();
        for (id, color) in vertices {
            if colors.insert(id, color).is_some() {
                return Err(GameError::DuplicateVertex(id));
            }
            adj.insert(id, BTreeSet::new());
        }
        for (a, b) in edges {
            if a == b {
                return Err(GameError::SelfLoop(a));
            }
            for v in [a, b] {
                if !colors.contains_key(&v) {
                    return Err(GameError::UnknownVertex(v));
                }
            }
            if !adj.get_mut(&a).unwrap().insert(b) {
                return Err(GameError::DuplicateEdge(a.min(b), a.max(b)));
            }
            adj.get_mut(&b).unwrap().insert(a);
        }
        Ok(ColoredGraph { colors, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, Color)> + '_ {
        self.colors.iter().map(|(&id, &c)| (id, c))
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.adj
            .iter()
            .flat_map(|(&a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    pub fn color(&self, id: VertexId) -> Option<Color> {
        self.colors.get(&id).copied()
    }

    pub fn neighbors(&self, id: VertexId) -> Vec<VertexId> {
        self.adj.get(&id).map(|s| s.iter().copied().collect()).unwrap_or_default()
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.colors.keys().next() else {
            return true;
        };
        self.component(start, |_| true).len() == self.colors.len()
    }

    pub fn is_monochromatic(&self) -> bool {
        let mut it = self.colors.values();
        match it.next() {
            Some(first) => it.all(|c| c == first),
            None => true,
        }
    }

    // Flood fill from `start` through vertices accepted by `keep`.
    fn component(&self, start: VertexId, keep: impl Fn(VertexId) -> bool) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &n in &self.adj[&v] {
                if keep(n) && seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        seen
    }

    /// The monochromatic group containing `id`, sorted.
    pub fn group_of(&self, id: VertexId) -> Option<Vec<VertexId>> {
        let color = self.color(id)?;
        Some(self.component(id, |n| self.colors[&n] == color).into_iter().collect())
    }

    /// Partition into maximal monochromatic connected sets, ordered by
    /// smallest member; each group is sorted.
    pub fn groups(&self) -> Vec<Vec<VertexId>> {
        let mut assigned = BTreeSet::new();
        let mut groups = Vec::new();
        for &id in self.colors.keys() {
            if assigned.contains(&id) {
                continue;
            }
            let group = self.group_of(id).expect("declared vertex");
            assigned.extend(group.iter().copied());
            groups.push(group);
        }
        groups
    }

    /// `player` flips the opponent group containing `target` to its own color.
    pub fn flip_group(&self, target: VertexId, player: Color) -> Result<ColoredGraph, GameError> {
        let color = self.color(target).ok_or(GameError::UnknownTarget(target))?;
        if color != player.opposite() {
            return Err(GameError::WrongColor { target, player });
        }
        let mut next = self.clone();
        for v in self.group_of(target).expect("declared vertex") {
            next.colors.insert(v, player);
        }
        Ok(next)
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.vertices().map(|(id, color)| VertexEntry { id, color }).collect(),
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self, GameError> {
        ColoredGraph::new(
            doc.vertices.iter().map(|v| (v.id, v.color)),
            doc.edges.iter().map(|&[a, b]| (a, b)),
        )
    }
}
