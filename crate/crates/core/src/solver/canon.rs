//! Transposition-table keys.
//!
//! Labeled keys serialize a position literally. Exact keys are canonical
//! forms of the color-preserving isomorphism class: vertices with identical
//! neighborhoods are first collapsed into one vertex carrying a multiplicity,
//! then the quotient is canonized by color refinement and individualization,
//! keeping the smallest adjacency encoding over all discrete leaves.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bipartite::BipartitePosition;
use crate::color::Color;

/// Memoization strategy for the solver.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MemoMode {
    /// Positions are identified by their labeled form.
    #[default]
    Labeled,
    /// Positions are identified up to color-preserving isomorphism.
    Iso,
}

impl FromStr for MemoMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "labeled" => Ok(MemoMode::Labeled),
            "iso" | "exact" => Ok(MemoMode::Iso),
            other => Err(format!("unknown memo mode `{other}` (expected labeled or iso)")),
        }
    }
}

impl fmt::Display for MemoMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MemoMode::Labeled => "labeled",
            MemoMode::Iso => "iso",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

pub fn canonical_key(p: &BipartitePosition, mode: MemoMode) -> CanonicalKey {
    match mode {
        MemoMode::Labeled => CanonicalKey(labeled_bytes(p)),
        MemoMode::Iso => CanonicalKey(words_to_bytes(&exact_encoding(p))),
    }
}

/// True iff a color-preserving isomorphism maps `a` onto `b`.
pub fn isomorphic(a: &BipartitePosition, b: &BipartitePosition) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && a.count(Color::Black) == b.count(Color::Black)
        && canonical_key(a, MemoMode::Iso) == canonical_key(b, MemoMode::Iso)
}

fn color_byte(c: Color) -> u8 {
    match c {
        Color::Black => 0,
        Color::White => 1,
    }
}

// Vertices sorted by (color, id), then edges in lexicographic order.
fn labeled_bytes(p: &BipartitePosition) -> Vec<u8> {
    let mut vertices: Vec<_> = p.vertices().map(|(id, c)| (c, id)).collect();
    vertices.sort_unstable();
    let edges = p.edges();
    let mut out = Vec::with_capacity(8 + 5 * vertices.len() + 8 * edges.len());
    out.extend_from_slice(&(vertices.len() as u32).to_le_bytes());
    for (c, id) in vertices {
        out.push(color_byte(c));
        out.extend_from_slice(&id.0.to_le_bytes());
    }
    out.extend_from_slice(&(edges.len() as u32).to_le_bytes());
    for (a, b) in edges {
        out.extend_from_slice(&a.0.to_le_bytes());
        out.extend_from_slice(&b.0.to_le_bytes());
    }
    out
}

fn words_to_bytes(words: &[u32]) -> Vec<u8> {
    words.iter().flat_map(|w| w.to_le_bytes()).collect()
}

/// Twin quotient: one vertex per class of equal-colored vertices sharing a
/// neighborhood, labeled with (color, class size).
struct Quotient {
    labels: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

fn twin_quotient(p: &BipartitePosition) -> Quotient {
    let colors = p.colors_raw();
    let adj = p.adjacency_raw();
    let n = colors.len();
    let mut class_of = vec![0u32; n];
    let mut reps: Vec<usize> = Vec::new();
    let mut sizes: Vec<u32> = Vec::new();
    let mut index: HashMap<(Color, &[u32]), u32> = HashMap::with_capacity(n);
    for v in 0..n {
        let key = (colors[v], adj[v].as_slice());
        let class = *index.entry(key).or_insert_with(|| {
            reps.push(v);
            sizes.push(0);
            (reps.len() - 1) as u32
        });
        sizes[class as usize] += 1;
        class_of[v] = class;
    }
    let labels = reps.iter().zip(&sizes).map(|(&r, &s)| (color_byte(colors[r]) as u32, s)).collect();
    let qadj = reps
        .iter()
        .map(|&r| {
            let mut ns: Vec<u32> = adj[r].iter().map(|&x| class_of[x as usize]).collect();
            ns.sort_unstable();
            ns.dedup();
            ns
        })
        .collect();
    Quotient { labels, adj: qadj }
}

fn exact_encoding(p: &BipartitePosition) -> Vec<u32> {
    let q = twin_quotient(p);
    let n = q.labels.len();
    let seeds: Vec<(u32, u32, u32)> = (0..n).map(|v| (q.labels[v].0, q.labels[v].1, q.adj[v].len() as u32)).collect();
    let mut sorted = seeds.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let cells: Vec<u32> = seeds.iter().map(|s| sorted.binary_search(s).unwrap() as u32).collect();
    let mut best = None;
    search(&q, cells, &mut best);
    best.expect("at least one leaf")
}

fn search(q: &Quotient, mut cells: Vec<u32>, best: &mut Option<Vec<u32>>) {
    let distinct = refine(&q.adj, &mut cells);
    let n = cells.len();
    if distinct == n {
        let code = encode(q, &cells);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    let mut sizes = vec![0u32; distinct];
    for &c in &cells {
        sizes[c as usize] += 1;
    }
    let target = sizes.iter().position(|&s| s > 1).unwrap() as u32;
    for v in 0..n {
        if cells[v] != target {
            continue;
        }
        let child = cells.iter().enumerate().map(|(x, &c)| 2 * c + u32::from(c == target && x != v)).collect();
        search(q, child, best);
    }
}

/// Refines `cells` to the coarsest equitable partition below it, ranking
/// cells by (old cell, sorted neighbor cells). Returns the number of cells;
/// on return the cell values are dense.
fn refine(adj: &[Vec<u32>], cells: &mut [u32]) -> usize {
    let n = cells.len();
    let mut distinct = compress(cells);
    let mut sigs: Vec<(u32, Vec<u32>, u32)> = Vec::with_capacity(n);
    while distinct < n {
        sigs.clear();
        for v in 0..n {
            let mut s: Vec<u32> = adj[v].iter().map(|&u| cells[u as usize]).collect();
            s.sort_unstable();
            sigs.push((cells[v], s, v as u32));
        }
        sigs.sort_unstable();
        let mut rank = 0u32;
        for k in 0..n {
            if k > 0 && (sigs[k].0 != sigs[k - 1].0 || sigs[k].1 != sigs[k - 1].1) {
                rank += 1;
            }
            cells[sigs[k].2 as usize] = rank;
        }
        let now = rank as usize + 1;
        if now == distinct {
            break;
        }
        distinct = now;
    }
    distinct
}

fn compress(cells: &mut [u32]) -> usize {
    let mut values: Vec<u32> = cells.to_vec();
    values.sort_unstable();
    values.dedup();
    for c in cells.iter_mut() {
        *c = values.binary_search(c).unwrap() as u32;
    }
    values.len()
}

// Size, labels in canonical order, then the upper-triangle adjacency bits.
fn encode(q: &Quotient, cells: &[u32]) -> Vec<u32> {
    let n = cells.len();
    let mut order = vec![0usize; n];
    for (v, &c) in cells.iter().enumerate() {
        order[c as usize] = v;
    }
    let mut code = Vec::with_capacity(1 + 2 * n + n * n / 32 + 1);
    code.push(n as u32);
    for &v in &order {
        code.push(q.labels[v].0);
        code.push(q.labels[v].1);
    }
    let mut word = 0u32;
    let mut bits = 0;
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = q.adj[order[i]].binary_search(&(order[j] as u32)).is_ok();
            word = (word << 1) | u32::from(adjacent);
            bits += 1;
            if bits == 32 {
                code.push(word);
                word = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        code.push(word << (32 - bits));
    }
    code
}
