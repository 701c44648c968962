//! Loading positions from files in any of the interchange formats.

use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use paintbucket::doc::{parse_ae, parse_bipartite, parse_graph};
use paintbucket::{AePosition, BipartitePosition, ColoredGraph, GridPosition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Grid,
    Graph,
    Bipartite,
    Ae,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "grid" => Ok(Format::Grid),
            "graph" => Ok(Format::Graph),
            "bipartite" => Ok(Format::Bipartite),
            "ae" => Ok(Format::Ae),
            other => Err(format!("unknown format `{other}` (expected grid, graph, bipartite or ae)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Grid => "grid",
            Format::Graph => "graph",
            Format::Bipartite => "bipartite",
            Format::Ae => "ae",
        })
    }
}

#[derive(Clone, Debug)]
pub enum Input {
    Grid(GridPosition),
    Graph(ColoredGraph),
    Bipartite(BipartitePosition),
    Ae(AePosition),
}

impl Input {
    pub fn format(&self) -> Format {
        match self {
            Input::Grid(_) => Format::Grid,
            Input::Graph(_) => Format::Graph,
            Input::Bipartite(_) => Format::Bipartite,
            Input::Ae(_) => Format::Ae,
        }
    }
}

/// Guesses the format: JSON with a `cells` key is an avoider-enforcer
/// position, other JSON is a graph document, anything else a grid.
pub fn detect(text: &str) -> Format {
    match serde_json::from_str::<serde_json::Value>(text) {
        Ok(serde_json::Value::Object(map)) if map.contains_key("cells") => Format::Ae,
        Ok(_) => Format::Graph,
        Err(_) if text.trim_start().starts_with('{') => Format::Graph,
        Err(_) => Format::Grid,
    }
}

pub fn parse(text: &str, format: Option<Format>) -> Result<Input> {
    let format = format.unwrap_or_else(|| detect(text));
    Ok(match format {
        Format::Grid => Input::Grid(GridPosition::parse(text).context("invalid grid")?),
        Format::Graph => Input::Graph(parse_graph(text).context("invalid graph document")?),
        Format::Bipartite => Input::Bipartite(parse_bipartite(text).context("invalid bipartite document")?),
        Format::Ae => Input::Ae(parse_ae(text).context("invalid avoider-enforcer document")?),
    })
}

pub fn load(path: &str, format: Option<Format>) -> Result<Input> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin()).context("reading standard input")?
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    if text.trim().is_empty() {
        bail!("{path} is empty");
    }
    parse(&text, format).with_context(|| format!("loading {path}"))
}
