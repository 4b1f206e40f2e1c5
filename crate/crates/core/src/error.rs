use thiserror::Error;

use crate::graph::{EdgeId, ValidationReport};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {edge} has endpoint {vertex} outside 0..{n}")]
    VertexOutOfRange { edge: EdgeId, vertex: usize, n: usize },
    #[error("edge {edge} is a self-loop at vertex {vertex}")]
    SelfLoop { edge: EdgeId, vertex: usize },
    #[error("edge vector has {actual} entries, graph has {expected} edges")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("edge value {value} of edge {edge} lies outside [0, 1]")]
    ValueOutOfRange { edge: EdgeId, value: String },
    #[error("cut side must be a proper nonempty vertex subset")]
    ImproperCut,
    #[error("invalid instance: {0}")]
    InvalidInstance(ValidationReport),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("support graph is not connected from the root")]
    SupportDisconnected,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("tree edge {edge} is crossed by no back edge")]
    UncoverableTreeEdge { edge: EdgeId },
    #[error("zero denominator while scaling back edge {edge}")]
    ZeroDenominator { edge: EdgeId },
    #[error("search budget of {budget} nodes exceeded (lower bound {lower}, best known {best:?})")]
    BudgetExceeded { budget: u64, lower: usize, best: Option<usize> },
    #[error("{what} is {actual}, above the supported limit of {limit}")]
    SizeLimit { what: &'static str, limit: usize, actual: usize },
    #[error("parameter {name} must be positive")]
    NonPositiveParameter { name: &'static str },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
