mod common;

use std::collections::BTreeSet;

use paintbucket::doc::{ae_to_json, bipartite_to_json, graph_to_json, parse_ae, parse_bipartite, parse_graph};
use paintbucket::solver::find_isomorphism;
use paintbucket::verify::generate::{random_position, random_twins};
use paintbucket::verify::{contraction_commutes, enumerate_ae, twins_become_leaves};
use paintbucket::{
    canonical_key, contract, isomorphic, AePlayer, BipartitePosition, Color, GridPosition, MemoMode, Move,
    SolveOptions, Solver, VertexId,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn position(seed: u64, n: usize, density: f64) -> BipartitePosition {
    random_position(&mut ChaCha8Rng::seed_from_u64(seed), n, density)
}

fn scramble(p: &BipartitePosition, seed: u64) -> BipartitePosition {
    let mut images: Vec<u32> = (0..p.vertex_count() as u32 * 3).collect();
    images.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let ids = p.ids().to_vec();
    p.relabeled(|id| VertexId(images[ids.binary_search(&id).unwrap()])).unwrap()
}

/// Removes one edge and adds one missing black-white edge, if the result
/// stays connected.
fn move_one_edge(p: &BipartitePosition, seed: u64) -> Option<BipartitePosition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = p.edges();
    let missing: Vec<(VertexId, VertexId)> = p
        .vertices_of(Color::Black)
        .flat_map(|b| p.vertices_of(Color::White).map(move |w| (b, w)))
        .filter(|&(b, w)| !p.has_edge(b, w))
        .collect();
    let drop = *edges.choose(&mut rng)?;
    let add = *missing.choose(&mut rng)?;
    let kept = edges.into_iter().filter(|&e| e != drop).chain([add]);
    BipartitePosition::new(p.vertices(), kept).ok()
}

fn grid_strategy() -> impl Strategy<Value = GridPosition> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(prop_oneof![Just(Color::Black), Just(Color::White)], r * c)
            .prop_map(move |px| GridPosition::new(r, c, px).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn moves_match_the_reference_merge(seed in any::<u64>(), n in 2usize..=14, density in 0.0f64..0.8) {
        let p = position(seed, n, density);
        let plain = common::Plain::from_position(&p);
        for (id, color) in p.vertices() {
            let q = p.apply_move(Move::new(color.opposite(), id)).unwrap();
            prop_assert_eq!(q.check_invariants(), Ok(()));
            prop_assert_eq!(q.vertex_count(), p.vertex_count() - p.degree(id).unwrap());
            prop_assert_eq!(common::Plain::from_position(&q), plain.play(id.0));
            prop_assert_eq!(q.color(id), Some(color.opposite()));
        }
    }

    #[test]
    fn games_last_fewer_plies_than_vertices(seed in any::<u64>(), n in 1usize..=12) {
        let p = position(seed, n, 0.3);
        let r = Solver::new(SolveOptions::default()).solve(&p, Color::Black).unwrap();
        prop_assert!(r.pv.len() < n);
        let end = p.replay(&r.pv).unwrap();
        prop_assert!(end.is_terminal());
        prop_assert_eq!(end.winner(), Ok(r.winner));
    }

    #[test]
    fn winner_holds_against_every_defence(seed in any::<u64>(), n in 2usize..=10) {
        // the winner follows best_move; every reply of the loser is tried
        let p = position(seed, n, 0.4);
        let solver = Solver::new(SolveOptions::default());
        let winner = solver.solve(&p, Color::White).unwrap().winner;
        fn all_lines(p: &BipartitePosition, to_move: Color, winner: Color, solver: &Solver) -> bool {
            if p.is_terminal() {
                return p.winner() == Ok(winner);
            }
            if to_move == winner {
                let b = solver.best_move(p, to_move).unwrap();
                b.winning && all_lines(&p.apply_move(b.mv).unwrap(), to_move.opposite(), winner, solver)
            } else {
                p.legal_moves(to_move)
                    .into_iter()
                    .all(|m| all_lines(&p.apply_move(m).unwrap(), to_move.opposite(), winner, solver))
            }
        }
        prop_assert!(all_lines(&p, Color::White, winner, &solver));
    }

    #[test]
    fn memo_modes_agree_with_plain_search(seed in any::<u64>(), n in 1usize..=11, density in 0.0f64..0.8) {
        let p = position(seed, n, density);
        for to_move in Color::ALL {
            let expected = common::plain_solve(&p, to_move);
            let labeled = paintbucket::solve(&p, to_move, &SolveOptions::default()).unwrap();
            let iso = paintbucket::solve(&p, to_move, &SolveOptions::iso()).unwrap();
            prop_assert_eq!(labeled.winner, expected);
            prop_assert_eq!(iso.winner, expected);
            prop_assert_eq!(labeled.pv, iso.pv);
        }
    }

    #[test]
    fn parallel_search_is_identical(seed in any::<u64>(), n in 2usize..=12) {
        let p = position(seed, n, 0.3);
        let seq = paintbucket::solve(&p, Color::Black, &SolveOptions::default()).unwrap();
        let par = paintbucket::solve(&p, Color::Black, &SolveOptions { threads: 3, ..Default::default() }).unwrap();
        prop_assert_eq!((seq.winner, seq.pv), (par.winner, par.pv));
    }

    #[test]
    fn iso_keys_ignore_labels(seed in any::<u64>(), n in 1usize..=14, density in 0.0f64..0.8, perm in any::<u64>()) {
        let p = position(seed, n, density);
        let q = scramble(&p, perm);
        prop_assert_eq!(canonical_key(&p, MemoMode::Iso), canonical_key(&q, MemoMode::Iso));
        prop_assert!(isomorphic(&p, &q));
        prop_assert!(isomorphic(&p.color_swapped(), &q.color_swapped()));
    }

    #[test]
    fn iso_keys_agree_with_the_matcher(seed in any::<u64>(), n in 3usize..=10, density in 0.0f64..0.6, swap in any::<bool>()) {
        // the same position scrambled, or scrambled after moving one edge
        let p = position(seed, n, density);
        let q = if swap { move_one_edge(&p, seed).unwrap_or_else(|| p.clone()) } else { p.clone() };
        let q = scramble(&q, seed.wrapping_add(1));
        let matched = find_isomorphism(&p, &q).is_some();
        prop_assert_eq!(isomorphic(&p, &q), matched);
        prop_assert_eq!(canonical_key(&p, MemoMode::Iso) == canonical_key(&q, MemoMode::Iso), matched);
    }

    #[test]
    fn labeled_keys_are_injective(a in any::<u64>(), b in any::<u64>(), n in 1usize..=8) {
        let p = position(a, n, 0.3);
        let q = position(b, n, 0.3);
        prop_assert_eq!(canonical_key(&p, MemoMode::Labeled) == canonical_key(&q, MemoMode::Labeled), p == q);
    }

    #[test]
    fn groups_partition_the_grid(grid in grid_strategy()) {
        let g = grid.to_colored_graph();
        let mut seen = BTreeSet::new();
        for group in g.groups() {
            let color = g.color(group[0]).unwrap();
            for v in &group {
                prop_assert!(seen.insert(*v));
                prop_assert_eq!(g.color(*v), Some(color));
            }
        }
        prop_assert_eq!(seen.len(), grid.rows() * grid.cols());
        let p = contract(&g).unwrap();
        prop_assert_eq!(p.vertex_count(), g.groups().len());
        prop_assert_eq!(p.check_invariants(), Ok(()));
    }

    #[test]
    fn flips_commute_with_contraction(grid in grid_strategy()) {
        let g = grid.to_colored_graph();
        if !g.is_monochromatic() {
            for (id, color) in g.vertices() {
                prop_assert!(contraction_commutes(&g, id, color.opposite()).unwrap());
                let (row, col) = grid.pixel_of(id);
                let flipped = grid.flip_group(row, col, color.opposite()).unwrap();
                prop_assert_eq!(flipped.to_colored_graph(), g.flip_group(id, color.opposite()).unwrap());
            }
        }
    }

    #[test]
    fn twins_collapse_to_leaves(seed in any::<u64>()) {
        let (p, twins) = random_twins(&mut ChaCha8Rng::seed_from_u64(seed), 9, 5);
        prop_assert!(twins_become_leaves(&p, &twins).unwrap());
    }

    #[test]
    fn grid_text_round_trips(grid in grid_strategy()) {
        prop_assert_eq!(GridPosition::parse(&grid.to_text()).unwrap(), grid.clone());
        let g = grid.to_colored_graph();
        prop_assert_eq!(parse_graph(&graph_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn bipartite_documents_round_trip(seed in any::<u64>(), n in 1usize..=14) {
        let p = scramble(&position(seed, n, 0.3), seed);
        prop_assert_eq!(parse_bipartite(&bipartite_to_json(&p)).unwrap(), p);
    }
}

#[test]
fn ae_documents_round_trip() {
    for to_move in [AePlayer::Avoider, AePlayer::Enforcer] {
        for ae in enumerate_ae(3, 2, to_move) {
            assert_eq!(parse_ae(&ae_to_json(&ae)).unwrap(), ae);
        }
    }
}

#[test]
fn scrambled_k23_keys() {
    let k23 = BipartitePosition::complete(2, 3);
    let key = canonical_key(&k23, MemoMode::Iso);
    for seed in 0..100 {
        assert_eq!(canonical_key(&scramble(&k23, seed), MemoMode::Iso), key);
    }
    assert_ne!(canonical_key(&BipartitePosition::complete(3, 2), MemoMode::Iso), key);
}
