use std::path::Path;
use std::process::{Command, Output};

use paintbucket::doc::parse_bipartite;
use paintbucket::{contract, solve, Color, GridPosition, SolveOptions};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paintbucket")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const K22: &str = r#"{"vertices": [{"id": 0, "color": "black"}, {"id": 1, "color": "black"},
  {"id": 2, "color": "white"}, {"id": 3, "color": "white"}],
  "edges": [[0, 2], [0, 3], [1, 2], [1, 3]]}"#;

#[test]
fn solve_complete_bipartite() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "k22.json", K22);
    let out = run(&["solve", &file, "--format", "bipartite", "--to-move", "black"]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("position: 2 black and 2 white vertices, 4 edges"), "{text}");
    assert!(text.contains("White wins (Black to move)"), "{text}");
    assert!(text.contains("nodes expanded:"));
}

#[test]
fn solve_detects_graph_documents() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "k22.json", K22);
    let out = run(&["solve", &file, "--memo", "iso"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn solve_avoider_enforcer() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "ae.json", r#"{"cells": ["c1"], "sets": [["c1"]], "to_move": "avoider"}"#);
    let out = run(&["solve", &file]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("Enforcer wins (Avoider to move)"));
    assert!(stdout(&out).contains("pv: Avoider:c1"));

    let file = write(&dir, "empty.json", r#"{"cells": ["c1"], "sets": [], "to_move": "enforcer"}"#);
    let out = run(&["solve", &file]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Avoider wins (Enforcer to move)"));
}

#[test]
fn solve_grid_agrees_with_the_library() {
    let dir = TempDir::new().unwrap();
    let text = "BWB\nWBW\nBWB\n";
    let file = write(&dir, "board.txt", text);
    let p = contract(&GridPosition::parse(text).unwrap().to_colored_graph()).unwrap();
    for (flag, color) in [("black", Color::Black), ("white", Color::White)] {
        let expected = solve(&p, color, &SolveOptions::iso()).unwrap().winner;
        let out = run(&["solve", &file, "--to-move", flag, "--threads", "2"]);
        assert_eq!(out.status.code(), Some(if expected == Color::Black { 0 } else { 1 }));
        assert!(stdout(&out).contains(&format!("{expected} wins")));
    }
}

#[test]
fn exhausted_budget_exits_3() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "board.txt", "BWBWBWBWBW\n");
    let out = run(&["solve", &file, "--budget", "2"]);
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
    assert!(stderr(&out).contains("search stopped"));
}

#[test]
fn bad_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "bad.txt", "BWX\n");
    assert_eq!(run(&["solve", &file]).status.code(), Some(2));
    assert_eq!(run(&["solve", "/nonexistent/board.txt"]).status.code(), Some(2));
    let file = write(&dir, "odd.json", r#"{"vertices": [{"id": 0, "color": "black"}, {"id": 1, "color": "black"}], "edges": [[0, 1]]}"#);
    assert_eq!(run(&["solve", &file, "--format", "bipartite"]).status.code(), Some(2));
}

#[test]
fn reduce_writes_position_and_roles() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "ae.json", r#"{"cells": ["c1", "c2"], "sets": [["c1"]], "to_move": "avoider"}"#);
    let out_path = dir.path().join("g.json");
    let out = run(&["reduce", &file, "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("normalization: none"));
    let g = parse_bipartite(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    // r, v_1, v_2, w_1..w_4 black; s, u_1, u_2, t_{1,1..4} white
    assert_eq!((g.count(Color::Black), g.count(Color::White)), (7, 7));
    let roles = Path::new(&out_path).with_extension("roles.json");
    let roles: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(roles).unwrap()).unwrap();
    assert_eq!(roles["roles"].as_object().unwrap().len(), 14);
    assert_eq!(roles["roles"]["0"]["type"], "r");
    assert_eq!(roles["roles"]["1"]["type"], "s");
}

#[test]
fn reduce_empty_instance_with_explicit_k() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "ae.json", r#"{"cells": [], "sets": [], "to_move": "avoider"}"#);
    let out_path = dir.path().join("claw.json");
    let out = run(&["reduce", &file, "--k", "2", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let g = parse_bipartite(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(g.vertex_count(), 4);
    assert!(stderr(&out).is_empty());
}

#[test]
fn reduce_reports_normalizations() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "ae.json", r#"{"cells": ["c1", "c2"], "sets": [["c1"]], "to_move": "enforcer"}"#);
    let out_path = dir.path().join("g.json");
    let out = run(&["reduce", &file, "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<String> = stdout(&out).lines().filter(|l| l.starts_with("normalization:")).map(String::from).collect();
    assert_eq!(lines.len(), 2, "{lines:?}");
    assert!(stdout(&out).contains("K = 6"));
}

#[test]
fn reduce_warns_about_small_k() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "ae.json", r#"{"cells": ["c1", "c2"], "sets": [["c1"]], "to_move": "avoider"}"#);
    let out_path = dir.path().join("g.json");
    let out = run(&["reduce", &file, "--k", "2", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("warning"));
    let out = run(&["reduce", &file, "--k", "many", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "complete", "--max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("complete: 16 cases, 16 passed, 0 failed"), "{}", stdout(&out));

    for args in [&["verify", "simulation", "--cells", "2", "--sets", "2", "--quiet"][..], &["verify", "proposition", "--cells", "2"]] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        assert!(stdout(&out).contains(" 0 failed"));
    }

    let out = run(&["verify", "claw", "--count", "20", "--seed", "5", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1);

    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn convert_round_trips() {
    let dir = TempDir::new().unwrap();
    let grid = write(&dir, "board.txt", "WBW\nBWB\nWBW\n");
    let out = run(&["convert", &grid, "--to", "grid"]);
    assert_eq!(stdout(&out).trim(), "WBW\nBWB\nWBW");

    let out = run(&["convert", &grid, "--to", "bipartite"]);
    assert_eq!(out.status.code(), Some(0));
    let p = parse_bipartite(&stdout(&out)).unwrap();
    assert_eq!((p.count(Color::Black), p.count(Color::White), p.edge_count()), (4, 5, 12));

    let bip = write(&dir, "p.json", &stdout(&out));
    let again = run(&["convert", &bip, "--from", "bipartite", "--to", "bipartite"]);
    assert_eq!(parse_bipartite(&stdout(&again)).unwrap(), p);

    let ae = write(&dir, "ae.json", r#"{"cells": ["c1"], "sets": [["c1"]], "to_move": "avoider"}"#);
    let out = run(&["convert", &ae, "--to", "ae"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["to_move"], "avoider");

    assert_eq!(run(&["convert", &ae, "--to", "grid"]).status.code(), Some(2));
}
