use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {at}: {msg}")]
    Parse { at: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("inexact division")]
    InexactDivision,
    #[error("zero argument: {0}")]
    ZeroArgument(String),
    #[error("arrangement is not simple: {0}")]
    NotSimple(String),
    #[error("arrangement is not smooth: {0}")]
    NotSmooth(String),
    #[error("edge lengths are not generic: subset {0} ties with its complement")]
    NonGeneric(String),
    #[error("polyhedron is empty")]
    Infeasible,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polyhedron is not full-dimensional")]
    NotFullDimensional,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::Invalid(_)
            | Error::ArityMismatch { .. }
            | Error::RingMismatch(_) => 1,
            Error::Inconsistent(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
