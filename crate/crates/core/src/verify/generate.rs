//! Seeded random instances for the property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bipartite::BipartitePosition;
use crate::color::{Color, VertexId};

/// Random connected bipartite position on `n >= 1` vertices with ids
/// `0..n`. Each vertex gets a uniformly random color, then a random spanning
/// tree is grown along opposite-color pairs and extra edges are added with
/// probability `density`. Colors are redrawn until a spanning tree exists.
pub fn random_position<R: Rng>(rng: &mut R, n: usize, density: f64) -> BipartitePosition {
    assert!(n >= 1);
    if n == 1 {
        let c = if rng.gen() { Color::Black } else { Color::White };
        return BipartitePosition::single(VertexId(0), c);
    }
    let colors: Vec<Color> = loop {
        let colors: Vec<Color> = (0..n).map(|_| if rng.gen() { Color::Black } else { Color::White }).collect();
        if colors.contains(&Color::Black) && colors.contains(&Color::White) {
            break colors;
        }
    };
    random_with_colors(rng, &colors, density)
}

/// Random connected bipartite position with the given vertex colors. Both
/// colors must be present unless there is a single vertex.
pub fn random_with_colors<R: Rng>(rng: &mut R, colors: &[Color], density: f64) -> BipartitePosition {
    let n = colors.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    // start from a pair of opposite colors so that every later vertex has
    // an opposite-colored vertex already in the tree
    let first = order[0];
    let partner = order.iter().position(|&x| colors[x] != colors[first]).expect("both colors present");
    order.swap(1, partner);
    let mut edges = Vec::new();
    let mut has = vec![vec![false; n]; n];
    for i in 1..n {
        let v = order[i];
        let choices: Vec<usize> = order[..i].iter().copied().filter(|&u| colors[u] != colors[v]).collect();
        let u = *choices.choose(rng).expect("an opposite vertex is in the tree");
        has[u][v] = true;
        has[v][u] = true;
        edges.push((u, v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if colors[a] != colors[b] && !has[a][b] && rng.gen_bool(density) {
                edges.push((a, b));
            }
        }
    }
    BipartitePosition::new(
        colors.iter().enumerate().map(|(i, &c)| (VertexId(i as u32), c)),
        edges.into_iter().map(|(a, b)| (VertexId(a as u32), VertexId(b as u32))),
    )
    .expect("generated positions are valid")
}

/// Position `G` plus a white hub carrying `leaves` black leaves.
#[derive(Clone, Debug)]
pub struct ClawInstance {
    pub position: BipartitePosition,
    pub hub: VertexId,
    /// White vertices of `G`, the hub included.
    pub whites: usize,
    pub leaves: usize,
}

/// Claw instance whose base graph has between 1 and `max_base` vertices and
/// at most `max_leaves` whites. The leaf count is drawn from
/// `whites..=max_leaves`, so the hypothesis `whites <= leaves` always holds.
pub fn random_claw<R: Rng>(rng: &mut R, max_base: usize, max_leaves: usize) -> ClawInstance {
    loop {
        let n = rng.gen_range(1..=max_base);
        let base = if n == 1 {
            BipartitePosition::single(VertexId(0), Color::White)
        } else {
            let density = rng.gen_range(0.0..0.6);
            random_position(rng, n, density)
        };
        let whites = base.count(Color::White);
        if whites == 0 || whites > max_leaves {
            continue;
        }
        let hub = *base.vertices_of(Color::White).collect::<Vec<_>>().choose(rng).expect("a white vertex");
        let leaves = rng.gen_range(whites..=max_leaves);
        return ClawInstance { position: attach_leaves(&base, hub, leaves), hub, whites, leaves };
    }
}

/// Adds `count` black leaves to `hub`, numbered after the largest id.
pub fn attach_leaves(base: &BipartitePosition, hub: VertexId, count: usize) -> BipartitePosition {
    let next = base.ids().last().expect("non-empty").0 + 1;
    let leaves: Vec<VertexId> = (0..count as u32).map(|i| VertexId(next + i)).collect();
    BipartitePosition::new(
        base.vertices().chain(leaves.iter().map(|&l| (l, Color::Black))),
        base.edges().into_iter().chain(leaves.iter().map(|&l| (hub, l))),
    )
    .expect("leaves keep the position valid")
}

/// Random position with `twins` planted vertices of one color sharing a
/// neighbor set. Returns the position and the planted ids.
pub fn random_twins<R: Rng>(rng: &mut R, max_base: usize, max_twins: usize) -> (BipartitePosition, Vec<VertexId>) {
    let n = rng.gen_range(2..=max_base.max(2));
    let density = rng.gen_range(0.0..0.6);
    let base = random_position(rng, n, density);
    let color = if rng.gen() { Color::Black } else { Color::White };
    let others: Vec<VertexId> = base.vertices_of(color.opposite()).collect();
    let size = rng.gen_range(1..=others.len());
    let neighborhood: Vec<VertexId> = others.choose_multiple(rng, size).copied().collect();
    let count = rng.gen_range(2..=max_twins.max(2));
    let next = base.ids().last().expect("non-empty").0 + 1;
    let twins: Vec<VertexId> = (0..count as u32).map(|i| VertexId(next + i)).collect();
    let edges = base
        .edges()
        .into_iter()
        .chain(twins.iter().flat_map(|&t| neighborhood.iter().map(move |&u| (t, u))));
    let p = BipartitePosition::new(base.vertices().chain(twins.iter().map(|&t| (t, color))), edges)
        .expect("planted twins keep the position valid");
    (p, twins)
}
