use thiserror::Error;

use crate::color::{Color, VertexId};

/// Errors raised by the Paintbucket representations and move engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("grid has no rows")]
    EmptyGrid,
    #[error("row {row} has {found} pixels, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("invalid pixel {found:?} at row {row}, column {col}")]
    InvalidPixel { row: usize, col: usize, found: char },
    #[error("pixel ({row}, {col}) is outside the grid")]
    PixelOutOfRange { row: usize, col: usize },
    #[error("vertex {0} declared twice")]
    DuplicateVertex(VertexId),
    #[error("edge endpoint {0} is not a declared vertex")]
    UnknownVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge {0}-{1} joins two vertices of the same color")]
    SameColorEdge(VertexId, VertexId),
    #[error("position has no vertices")]
    EmptyPosition,
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex {0} does not exist")]
    UnknownTarget(VertexId),
    #[error("{player} cannot play vertex {target}: it is not an opponent vertex")]
    WrongColor { target: VertexId, player: Color },
    #[error("the game is over")]
    GameOver,
    #[error("position is not terminal")]
    NotTerminal,
    #[error("ply {ply}: {player} moved out of turn")]
    OutOfTurn { ply: usize, player: Color },
    #[error("ply {ply}: {source}")]
    IllegalPly {
        ply: usize,
        #[source]
        source: Box<GameError>,
    },
    #[error("malformed document: {0}")]
    Document(String),
}

/// Errors raised by the avoider-enforcer engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AeError {
    #[error("cell `{0}` declared twice")]
    DuplicateCell(String),
    #[error("cell name `{0}` is reserved for normalization cells")]
    ReservedCell(String),
    #[error("cell `{0}` is not part of the position")]
    UnknownCell(String),
    #[error("game is not over: {0} cells remain")]
    NotFinished(usize),
    #[error("normalization requires {0}")]
    Precondition(&'static str),
    #[error("positions with {0} cells exceed the solver limit of 64")]
    TooLarge(usize),
    #[error("malformed document: {0}")]
    Document(String),
}
