//! JSON interchange documents.
//!
//! Graph and bipartite positions share one shape:
//!
//! ```json
//! { "vertices": [{ "id": 0, "color": "black" }], "edges": [[0, 1]] }
//! ```
//!
//! Avoider-enforcer positions use
//!
//! ```json
//! { "cells": ["c1", "c2"], "sets": [["c1", "c2"]], "to_move": "avoider" }
//! ```

use serde::{Deserialize, Serialize};

use crate::ae::{AePlayer, AePosition};
use crate::bipartite::BipartitePosition;
use crate::color::{Color, VertexId};
use crate::error::{AeError, GameError};
use crate::graph::ColoredGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: VertexId,
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<[VertexId; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AeDocument {
    pub cells: Vec<String>,
    pub sets: Vec<Vec<String>>,
    pub to_move: AePlayer,
}

pub fn parse_graph(text: &str) -> Result<ColoredGraph, GameError> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| GameError::Document(e.to_string()))?;
    ColoredGraph::from_document(&doc)
}

pub fn parse_bipartite(text: &str) -> Result<BipartitePosition, GameError> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| GameError::Document(e.to_string()))?;
    BipartitePosition::from_document(&doc)
}

pub fn parse_ae(text: &str) -> Result<AePosition, AeError> {
    let doc: AeDocument = serde_json::from_str(text).map_err(|e| AeError::Document(e.to_string()))?;
    AePosition::from_document(&doc)
}

pub fn graph_to_json(g: &ColoredGraph) -> String {
    serde_json::to_string_pretty(&g.to_document()).expect("graph documents serialize")
}

pub fn bipartite_to_json(p: &BipartitePosition) -> String {
    serde_json::to_string_pretty(&p.to_document()).expect("graph documents serialize")
}

pub fn ae_to_json(p: &AePosition) -> String {
    serde_json::to_string_pretty(&p.to_document()).expect("ae documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_names_are_normative() {
        let text = r#"{"vertices":[{"id":0,"color":"black"},{"id":1,"color":"white"}],"edges":[[0,1]]}"#;
        let p = parse_bipartite(text).unwrap();
        assert_eq!(p.vertex_count(), 2);
        let value: serde_json::Value = serde_json::from_str(&bipartite_to_json(&p)).unwrap();
        assert_eq!(value["vertices"][1]["color"], "white");
        assert_eq!(value["edges"][0][1], 1);

        let ae = parse_ae(r#"{"cells":["c1"],"sets":[["c1"]],"to_move":"enforcer"}"#).unwrap();
        assert_eq!(ae.to_move(), AePlayer::Enforcer);
        let value: serde_json::Value = serde_json::from_str(&ae_to_json(&ae)).unwrap();
        assert_eq!(value["to_move"], "enforcer");
        assert_eq!(value["sets"][0][0], "c1");
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(matches!(parse_graph("{"), Err(GameError::Document(_))));
        assert!(matches!(parse_graph(r#"{"vertices":[],"edges":[],"extra":1}"#), Err(GameError::Document(_))));
        // same-color edge violates the bipartite invariants but is a fine graph
        let mono = r#"{"vertices":[{"id":0,"color":"black"},{"id":1,"color":"black"}],"edges":[[0,1]]}"#;
        assert!(parse_graph(mono).is_ok());
        assert!(matches!(parse_bipartite(mono), Err(GameError::SameColorEdge(..))));
        assert!(matches!(parse_ae(r#"{"cells":["c1"],"sets":[["c2"]],"to_move":"avoider"}"#), Err(AeError::UnknownCell(_))));
        assert!(matches!(parse_ae(r#"{"cells":["x0"],"sets":[],"to_move":"avoider"}"#), Err(AeError::ReservedCell(_))));
    }
}
