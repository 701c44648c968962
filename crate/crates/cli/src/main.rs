use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use paintbucket::doc::{ae_to_json, bipartite_to_json, graph_to_json};
use paintbucket::reduction::ReductionInstance;
use paintbucket::solver::SolveError;
use paintbucket::verify::{run_suite, Suite, SuiteParams};
use paintbucket::{
    build_reduction, contract, default_k, reduce_decision, AePlayer, Color, MemoMode, SolveOptions, Solver,
};
use paintbucket_cli::input::{self, Format, Input};

#[derive(Parser)]
#[command(name = "paintbucket", version, about = "Paintbucket and avoider-enforcer solver, reduction builder and verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a position. Exit code 0: Black/Avoider wins, 1: White/Enforcer
    /// wins, 2: error, 3: search budget exhausted.
    Solve {
        /// Input file, or `-` for standard input.
        file: String,
        /// grid, graph, bipartite or ae; detected from the content if omitted.
        #[arg(long)]
        format: Option<Format>,
        /// black, white, avoider or enforcer. Defaults to Black, or to the
        /// player stored in an avoider-enforcer file.
        #[arg(long)]
        to_move: Option<String>,
        #[arg(long, default_value = "labeled")]
        memo: MemoMode,
        /// Maximum node expansions.
        #[arg(long, default_value_t = paintbucket::solver::DEFAULT_BUDGET)]
        budget: u64,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Build the Paintbucket position simulating an avoider-enforcer game.
    Reduce {
        file: String,
        /// Cluster size, or `auto` to normalize the game and use |C| + 2.
        #[arg(long, default_value = "auto")]
        k: String,
        /// Output path for the bipartite document; the role map is written
        /// next to it with the extension `.roles.json`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a property suite and report every case.
    Verify {
        /// claw, neighbors, complete, shenanigans, simulation, proposition,
        /// normalization or representation.
        suite: Suite,
        /// Largest K_{m,n} side, base graph size or grid width.
        #[arg(long)]
        max: Option<usize>,
        #[arg(long)]
        cells: Option<usize>,
        #[arg(long)]
        sets: Option<usize>,
        /// Number of random instances.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print only failures and the summary.
        #[arg(long)]
        quiet: bool,
    },
    /// Convert between interchange formats.
    Convert {
        file: String,
        #[arg(long)]
        from: Option<Format>,
        #[arg(long)]
        to: Format,
    },
    /// Serve the HTTP game API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Solve { file, format, to_move, memo, budget, time_limit, threads } => {
            let opts = SolveOptions {
                memo,
                budget: Some(budget),
                time_limit: time_limit.map(Duration::from_secs_f64),
                threads: threads.max(1),
            };
            solve(input::load(&file, format)?, to_move.as_deref(), &opts)
        }
        Command::Reduce { file, k, out } => reduce(input::load(&file, Some(Format::Ae))?, &k, &out),
        Command::Verify { suite, max, cells, sets, count, seed, quiet } => {
            let report = run_suite(suite, &SuiteParams { max, cells, sets, count, seed });
            for case in &report.cases {
                if !quiet || !case.passed {
                    let tag = if case.passed { "ok  " } else { "FAIL" };
                    match case.detail.is_empty() {
                        true => println!("{tag} {}", case.name),
                        false => println!("{tag} {}: {}", case.name, case.detail),
                    }
                }
            }
            println!("{suite}: {} cases, {} passed, {} failed", report.cases.len(), report.passed(), report.failed());
            Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Convert { file, from, to } => {
            println!("{}", convert(input::load(&file, from)?, to)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Serve { port, host } => serve(&host, port),
    }
}

fn solve(input: Input, to_move: Option<&str>, opts: &SolveOptions) -> Result<ExitCode> {
    let position = match input {
        Input::Ae(ae) => {
            let ae = match to_move {
                Some(p) => ae.with_to_move(p.parse::<AePlayer>().map_err(anyhow::Error::msg)?),
                None => ae,
            };
            let out = ae.solve()?;
            println!("{} wins ({} to move)", out.winner, ae.to_move());
            let pv: Vec<String> = out.pv.iter().map(|(p, c)| format!("{p}:{c}")).collect();
            println!("pv: {}", pv.join(" "));
            return Ok(if out.winner == AePlayer::Avoider { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Input::Grid(g) => contract(&g.to_colored_graph())?,
        Input::Graph(g) => contract(&g)?,
        Input::Bipartite(p) => p,
    };
    let to_move = match to_move {
        Some(c) => c.parse::<Color>().map_err(anyhow::Error::msg)?,
        None => Color::Black,
    };
    println!(
        "position: {} black and {} white vertices, {} edges",
        position.count(Color::Black),
        position.count(Color::White),
        position.edge_count()
    );
    match Solver::new(opts.clone()).solve(&position, to_move) {
        Ok(r) => {
            println!("{} wins ({to_move} to move)", r.winner);
            let pv: Vec<String> = r.pv.iter().map(|m| m.to_string()).collect();
            println!("pv: {}", pv.join(" "));
            println!(
                "nodes expanded: {}, table hits: {}, time: {:.3}s",
                r.nodes_expanded,
                r.table_hits,
                r.elapsed.as_secs_f64()
            );
            Ok(if r.winner == Color::Black { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Err(e @ (SolveError::BudgetExhausted(_) | SolveError::TimeLimit(_))) => {
            eprintln!("search stopped: {e}");
            Ok(ExitCode::from(3))
        }
        Err(e) => Err(e.into()),
    }
}

fn roles_path(out: &Path) -> PathBuf {
    out.with_extension("roles.json")
}

fn reduce(input: Input, k: &str, out: &Path) -> Result<ExitCode> {
    let Input::Ae(ae) = input else { bail!("reduce expects an avoider-enforcer document") };
    let instance: ReductionInstance = if k == "auto" {
        let decision = reduce_decision(&ae)?;
        if decision.steps.is_empty() {
            println!("normalization: none");
        }
        for step in &decision.steps {
            println!("normalization: {step}");
        }
        println!("Black moving first wins iff the avoider wins the original position");
        decision.instance
    } else {
        let k: usize = k.parse().with_context(|| format!("--k expects `auto` or a positive integer, got `{k}`"))?;
        if k < default_k(&ae) {
            eprintln!(
                "warning: K = {k} is below |C| + 2 = {}; off-type moves are only guaranteed to lose for K >= |C| + 2",
                default_k(&ae)
            );
        }
        build_reduction(&ae, k)?
    };
    let g = &instance.graph;
    std::fs::write(out, bipartite_to_json(g) + "\n").with_context(|| format!("writing {}", out.display()))?;
    let roles = roles_path(out);
    let roles_json = serde_json::to_string_pretty(&instance.roles_document())? + "\n";
    std::fs::write(&roles, roles_json).with_context(|| format!("writing {}", roles.display()))?;
    println!(
        "K = {}: {} vertices ({} black, {} white), {} edges",
        instance.k,
        g.vertex_count(),
        g.count(Color::Black),
        g.count(Color::White),
        g.edge_count()
    );
    println!("wrote {} and {}", out.display(), roles.display());
    Ok(ExitCode::SUCCESS)
}

fn convert(input: Input, to: Format) -> Result<String> {
    Ok(match (input, to) {
        (Input::Grid(g), Format::Grid) => g.to_text().trim_end().to_string(),
        (Input::Grid(g), Format::Graph) => graph_to_json(&g.to_colored_graph()),
        (Input::Grid(g), Format::Bipartite) => bipartite_to_json(&contract(&g.to_colored_graph())?),
        (Input::Graph(g), Format::Graph) => graph_to_json(&g),
        (Input::Graph(g), Format::Bipartite) => bipartite_to_json(&contract(&g)?),
        (Input::Bipartite(p), Format::Bipartite) => bipartite_to_json(&p),
        (Input::Bipartite(p), Format::Graph) => graph_to_json(&p.to_colored_graph()),
        (Input::Ae(a), Format::Ae) => ae_to_json(&a),
        (input, to) => bail!("cannot convert {} to {to}", input.format()),
    })
}

fn serve(host: &str, port: u16) -> Result<ExitCode> {
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind((host, port)).await.with_context(|| format!("binding {host}:{port}"))?;
        println!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, paintbucket_cli::server::router()).await?;
        Ok::<_, anyhow::Error>(())
    })?;
    Ok(ExitCode::SUCCESS)
}
