use thiserror::Error;

use crate::hypergraph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("value {value} is not a residue modulo {modulus}")]
    ResidueOutOfRange { value: u64, modulus: u32 },
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("bicharacter needs at least one argument")]
    EmptyArguments,
    #[error("inputs and outputs overlap at vertex {0}")]
    OverlappingPartition(VertexId),
    #[error("vertex {0} is declared more than once")]
    DuplicateVertex(VertexId),
    #[error("edge {0:?} contains an undeclared vertex {1}")]
    UndeclaredEdgeVertex(Vec<u32>, VertexId),
    #[error("edge {0:?} repeats a vertex")]
    RepeatedEdgeVertex(Vec<u32>),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<u32>),
    #[error("edges must contain at least one vertex")]
    EmptyEdge,
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("error configuration contains non-output vertex {0}")]
    NotAnOutput(VertexId),
    #[error("configuration size {size} exceeds the {outputs} output vertices")]
    SizeTooLarge { size: usize, outputs: usize },
    #[error("repeated site {0}")]
    RepeatedSite(VertexId),
    #[error("dimension {dim} exceeds the dense-simulation cap of {cap}")]
    SizeCapExceeded { dim: u128, cap: u128 },
    #[error("operation requires qubits (d = 2), got d = {0}")]
    QubitOnly(u32),
    #[error("edge size must be positive, got {0}")]
    InvalidEdgeSize(i64),
    #[error("malformed graph file: {0}")]
    Parse(String),
}
