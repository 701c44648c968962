//! Reference implementations used as oracles. They share no code with the
//! library's move engine or search.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use paintbucket::{AePlayer, AePosition, BipartitePosition, Color};

/// Adjacency-set copy of a bipartite position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plain {
    pub vertices: BTreeMap<u32, (Color, BTreeSet<u32>)>,
}

impl Plain {
    pub fn from_position(p: &BipartitePosition) -> Self {
        let mut vertices: BTreeMap<u32, (Color, BTreeSet<u32>)> =
            p.vertices().map(|(id, c)| (id.0, (c, BTreeSet::new()))).collect();
        for (a, b) in p.edges() {
            vertices.get_mut(&a.0).unwrap().1.insert(b.0);
            vertices.get_mut(&b.0).unwrap().1.insert(a.0);
        }
        Plain { vertices }
    }

    /// Recolors `v` and absorbs its neighbors.
    pub fn play(&self, v: u32) -> Plain {
        let (color, nbrs) = self.vertices[&v].clone();
        let mut reach = BTreeSet::new();
        for w in &nbrs {
            reach.extend(self.vertices[w].1.iter().copied());
        }
        reach.remove(&v);
        let mut vertices = BTreeMap::new();
        for (&id, (c, adj)) in &self.vertices {
            if nbrs.contains(&id) {
                continue;
            }
            if id == v {
                vertices.insert(id, (color.opposite(), reach.clone()));
                continue;
            }
            let mut adj: BTreeSet<u32> = adj.difference(&nbrs).copied().collect();
            if reach.contains(&id) {
                adj.insert(v);
            }
            vertices.insert(id, (*c, adj));
        }
        Plain { vertices }
    }

    pub fn to_move_targets(&self, player: Color) -> Vec<u32> {
        self.vertices.iter().filter(|(_, (c, _))| *c != player).map(|(&id, _)| id).collect()
    }
}

/// Unmemoized game-tree search: the mover wins iff some move reaches a
/// position lost for the opponent.
pub fn plain_winner(p: &Plain, to_move: Color) -> Color {
    if p.vertices.len() == 1 {
        return p.vertices.values().next().unwrap().0;
    }
    for v in p.to_move_targets(to_move) {
        if plain_winner(&p.play(v), to_move.opposite()) == to_move {
            return to_move;
        }
    }
    to_move.opposite()
}

pub fn plain_solve(p: &BipartitePosition, to_move: Color) -> Color {
    plain_winner(&Plain::from_position(p), to_move)
}

/// Avoider-enforcer as a claiming game: the avoider loses iff at the end
/// some set lies entirely inside the avoider's cells.
pub fn claiming_winner(ae: &AePosition) -> AePlayer {
    let cells: Vec<&str> = ae.cells().iter().map(String::as_str).collect();
    let sets: Vec<BTreeSet<&str>> = ae.sets().iter().map(|s| s.iter().map(String::as_str).collect()).collect();
    fn rec<'a>(free: &[&'a str], avoider: &mut BTreeSet<&'a str>, sets: &[BTreeSet<&'a str>], to_move: AePlayer) -> AePlayer {
        if free.is_empty() {
            return if sets.iter().any(|s| s.is_subset(avoider)) { AePlayer::Enforcer } else { AePlayer::Avoider };
        }
        for i in 0..free.len() {
            let mut rest = free.to_vec();
            let cell = rest.remove(i);
            if to_move == AePlayer::Avoider {
                avoider.insert(cell);
            }
            let w = rec(&rest, avoider, sets, to_move.opposite());
            if to_move == AePlayer::Avoider {
                avoider.remove(cell);
            }
            if w == to_move {
                return to_move;
            }
        }
        to_move.opposite()
    }
    rec(&cells, &mut BTreeSet::new(), &sets, ae.to_move())
}
