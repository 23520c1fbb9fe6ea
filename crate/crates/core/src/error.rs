use thiserror::Error;

use crate::lattice::{CellAnchor, GeneratorKind, Site};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("invalid boundary notation {0:?}")]
    BoundaryNotation(String),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid defect: {0}")]
    InvalidDefect(String),

    #[error(
        "generators anticommute: {first_kind:?} at {first_anchor:?} and {second_kind:?} at {second_anchor:?}"
    )]
    Anticommuting {
        first_kind: GeneratorKind,
        first_anchor: CellAnchor,
        second_kind: GeneratorKind,
        second_anchor: CellAnchor,
    },

    #[error("operator support clipped at sites {0:?}")]
    ClippedSupport(Vec<Site>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("face {0} does not carry mobile ABC charges")]
    CondensingFace(String),

    #[error("parameters out of domain: {0}")]
    OutOfDomain(String),

    #[error("config error: {0}")]
    Config(String),
}
