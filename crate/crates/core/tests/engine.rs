mod common;

use paintbucket::bipartite::contract_with_groups;
use paintbucket::solver::find_isomorphism;
use paintbucket::verify::generate::random_claw;
use paintbucket::{
    best_move, contract, isomorphic, solve, BipartitePosition, Color, GameError, GridPosition, Move, SolveOptions,
    Solver, VertexId,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const X_PATTERN: &str = "WBW\nBWB\nWBW\n";

fn v(i: u32) -> VertexId {
    VertexId(i)
}

fn x_start() -> BipartitePosition {
    contract(&GridPosition::parse(X_PATTERN).unwrap().to_colored_graph()).unwrap()
}

#[test]
fn example_game_panels() {
    let p0 = x_start();
    assert_eq!((p0.count(Color::Black), p0.count(Color::White), p0.edge_count()), (4, 5, 12));
    assert_eq!(p0.legal_moves(Color::Black).len(), 5);

    let p1 = p0.apply_move(Move::new(Color::Black, v(8))).unwrap();
    assert_eq!((p1.count(Color::Black), p1.count(Color::White)), (3, 4));
    assert_eq!(p1.edge_count(), 9);

    // the second panel drawn independently: blacks 1, 3, 8 and whites 0, 2, 4, 6
    let drawn = BipartitePosition::new(
        [(v(1), Color::Black), (v(3), Color::Black), (v(8), Color::Black)]
            .into_iter()
            .chain([0, 2, 4, 6].map(|i| (v(i), Color::White))),
        [(0, 1), (1, 2), (0, 3), (3, 6), (3, 4), (1, 4), (8, 2), (8, 4), (8, 6)].map(|(a, b)| (v(a), v(b))),
    )
    .unwrap();
    assert_eq!(p1, drawn);
    assert!(isomorphic(&p1, &drawn.relabeled(|id| v(20 - id.0)).unwrap()));

    let p2 = p1.apply_move(Move::new(Color::White, v(3))).unwrap();
    assert_eq!((p2.count(Color::Black), p2.count(Color::White), p2.edge_count()), (2, 2, 4));
    let p3 = p2.apply_move(Move::new(Color::Black, v(3))).unwrap();
    assert_eq!((p3.count(Color::Black), p3.count(Color::White), p3.edge_count()), (1, 1, 1));
    let p4 = p3.apply_move(Move::new(Color::White, v(3))).unwrap();
    assert!(p4.is_terminal());
    assert_eq!(p4.winner(), Ok(Color::White));
}

#[test]
fn replay_reports_the_offending_ply() {
    let p = x_start();
    assert_eq!(p.replay(&[]).unwrap(), p);
    let moves = [Move::new(Color::Black, v(8)), Move::new(Color::Black, v(0))];
    match p.replay(&moves) {
        Err(GameError::OutOfTurn { ply, .. }) => assert_eq!(ply, 1),
        other => panic!("unexpected {other:?}"),
    }
    let moves = [Move::new(Color::Black, v(8)), Move::new(Color::White, v(0))];
    match p.replay(&moves) {
        Err(GameError::IllegalPly { ply, .. }) => assert_eq!(ply, 1),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn terminal_queries() {
    let w = BipartitePosition::single(v(0), Color::White);
    assert!(w.is_terminal());
    assert_eq!(w.winner(), Ok(Color::White));
    assert_eq!(BipartitePosition::single(v(0), Color::Black).winner(), Ok(Color::Black));
    let k11 = BipartitePosition::complete(1, 1);
    assert!(!k11.is_terminal());
    assert_eq!(k11.winner(), Err(GameError::NotTerminal));
}

#[test]
fn grid_games_match_the_plain_oracle() {
    for text in [X_PATTERN, "BWB\nWBW\nBWB\n"] {
        let p = contract(&GridPosition::parse(text).unwrap().to_colored_graph()).unwrap();
        for to_move in Color::ALL {
            let expected = common::plain_solve(&p, to_move);
            assert_eq!(solve(&p, to_move, &SolveOptions::default()).unwrap().winner, expected, "{text}");
            assert_eq!(solve(&p, to_move, &SolveOptions::iso()).unwrap().winner, expected, "{text}");
        }
    }
}

#[test]
fn complete_graphs_match_the_plain_oracle() {
    for m in 1..=4 {
        for n in 1..=4 {
            let p = BipartitePosition::complete(m, n);
            for to_move in Color::ALL {
                assert_eq!(solve(&p, to_move, &SolveOptions::default()).unwrap().winner, common::plain_solve(&p, to_move));
            }
        }
    }
}

#[test]
fn best_move_examples() {
    let opts = SolveOptions::default();
    assert_eq!(best_move(&BipartitePosition::complete(2, 1), Color::White, &opts), Ok(Move::new(Color::White, v(0))));
    assert_eq!(best_move(&BipartitePosition::complete(1, 1), Color::Black, &opts), Ok(Move::new(Color::Black, v(1))));
}

#[test]
fn claw_best_moves_win() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let solver = Solver::new(SolveOptions::default());
    for _ in 0..100 {
        let c = random_claw(&mut rng, 10, 6);
        let b = solver.best_move(&c.position, Color::Black).unwrap();
        assert!(b.winning);
        let after = c.position.apply_move(b.mv).unwrap();
        assert!(after.is_terminal() || !solver.mover_wins(&after, Color::White).unwrap());
    }
}

#[test]
fn contraction_names_groups_by_smallest_member() {
    let g = GridPosition::parse("BBW\nWWB\n").unwrap().to_colored_graph();
    let (p, groups) = contract_with_groups(&g).unwrap();
    assert_eq!(p.ids(), &[v(0), v(2), v(3), v(5)]);
    assert_eq!(groups[&v(3)], vec![v(3), v(4)]);
}

#[test]
fn matcher_finds_color_preserving_maps() {
    let a = x_start();
    let b = a.relabeled(|id| v((id.0 * 5) % 9 + 100)).unwrap();
    let map = find_isomorphism(&a, &b).expect("relabeling is an isomorphism");
    for (x, y) in a.edges() {
        assert!(b.has_edge(map[&x], map[&y]));
    }
    for (x, c) in a.vertices() {
        assert_eq!(b.color(map[&x]), Some(c));
    }
    assert!(find_isomorphism(&BipartitePosition::complete(2, 3), &BipartitePosition::complete(3, 2)).is_none());
}
