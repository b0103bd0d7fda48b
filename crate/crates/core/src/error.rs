use std::fmt;

use crate::lattice::IntVector;

/// Resource limit that stopped a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapKind {
    FiberPoints,
    BasisElements,
    TimeLimit,
    LiftLevel,
}

impl fmt::Display for CapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CapKind::FiberPoints => "max-fiber-points",
            CapKind::BasisElements => "max-basis-elements",
            CapKind::TimeLimit => "time-limit",
            CapKind::LiftLevel => "max-r",
        };
        f.write_str(s)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("vertex {0} is not in any facet")]
    VertexNotInComplex(usize),

    #[error("every facet contains vertex {0}; the deletion is empty")]
    EmptyDeletion(usize),

    #[error("vector is not in the kernel of the matrix")]
    NotInKernel,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("complex is not reducible")]
    NotReducible,

    #[error("{kind} cap exceeded{}", detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default())]
    CapExceeded {
        kind: CapKind,
        detail: Option<String>,
        /// Elements produced before the cap hit, when the computation has any.
        partial: Option<Vec<IntVector>>,
    },

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

impl Error {
    pub fn cap(kind: CapKind, detail: impl Into<String>) -> Error {
        Error::CapExceeded { kind, detail: Some(detail.into()), partial: None }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
