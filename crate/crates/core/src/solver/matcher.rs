//! Direct backtracking search for a color-preserving isomorphism. Slow, but
//! shares nothing with the canonical-form code, so it serves as a cross-check.

use std::collections::BTreeMap;

use crate::bipartite::BipartitePosition;
use crate::color::VertexId;

/// A color-preserving bijection from `a` onto `b`, if one exists.
pub fn find_isomorphism(a: &BipartitePosition, b: &BipartitePosition) -> Option<BTreeMap<VertexId, VertexId>> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let signature = |p: &BipartitePosition| {
        let mut s: Vec<_> = p.ids().iter().map(|&id| (p.color(id), p.degree(id))).collect();
        s.sort();
        s
    };
    if signature(a) != signature(b) {
        return None;
    }
    // breadth-first order keeps most candidates constrained by a mapped neighbor
    let mut order = Vec::with_capacity(a.vertex_count());
    let mut queued = BTreeMap::new();
    let start = a.ids()[0];
    queued.insert(start, ());
    order.push(start);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for n in a.neighbors(x) {
            if queued.insert(n, ()).is_none() {
                order.push(n);
            }
        }
    }
    let mut map = BTreeMap::new();
    let mut used = BTreeMap::new();
    extend(a, b, &order, &mut map, &mut used).then_some(map)
}

fn extend(
    a: &BipartitePosition,
    b: &BipartitePosition,
    order: &[VertexId],
    map: &mut BTreeMap<VertexId, VertexId>,
    used: &mut BTreeMap<VertexId, ()>,
) -> bool {
    let Some(&x) = order.get(map.len()) else {
        return true;
    };
    for &y in b.ids() {
        if used.contains_key(&y) || a.color(x) != b.color(y) || a.degree(x) != b.degree(y) {
            continue;
        }
        let consistent = map.iter().all(|(&xa, &yb)| a.has_edge(x, xa) == b.has_edge(y, yb));
        if !consistent {
            continue;
        }
        map.insert(x, y);
        used.insert(y, ());
        if extend(a, b, order, map, used) {
            return true;
        }
        map.remove(&x);
        used.remove(&y);
    }
    false
}
