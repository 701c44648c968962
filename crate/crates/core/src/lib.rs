//! Paintbucket on graphs and the avoider-enforcer game.
//!
//! The crate provides
//!
//! * exact game engines for Paintbucket on pixel grids ([`grid`]), on
//!   arbitrary two-colored simple graphs ([`graph`]) and on contracted
//!   bipartite graphs ([`bipartite`]),
//! * the avoider-enforcer game in its cell-removal formulation ([`ae`]),
//! * a perfect-play solver with labeled or isomorphism-reduced
//!   transposition tables ([`solver`]),
//! * the construction of the Paintbucket position `G_K(C, A)` that encodes an
//!   avoider-enforcer position ([`reduction`]), and
//! * mechanical checkers for the structural lemmas and the winner
//!   equivalence on small instances ([`verify`]).

pub mod ae;
pub mod bipartite;
pub mod color;
pub mod doc;
pub mod error;
pub mod graph;
pub mod grid;
pub mod reduction;
pub mod solver;
pub mod verify;

pub use ae::{AeOutcome, AePlayer, AePosition};
pub use bipartite::{contract, BipartitePosition, Move};
pub use color::{Color, VertexId};
pub use error::{AeError, GameError};
pub use graph::ColoredGraph;
pub use grid::GridPosition;
pub use reduction::{build_reduction, default_k, reduce_decision, ReductionInstance, Role};
pub use solver::{best_move, canonical_key, isomorphic, solve, CanonicalKey, MemoMode, SolveError, SolveOptions, SolveResult, Solver};
