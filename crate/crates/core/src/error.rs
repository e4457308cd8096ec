use thiserror::Error;

/// Errors produced by the polynomial, partition and strata routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("root finder did not converge after {iterations} iterations")]
    RootFinderDiverged { iterations: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degree {degree} is too small (need at least {min})")]
    DegreeTooSmall { degree: usize, min: usize },

    #[error("partition weights differ: {left} vs {right}")]
    WeightMismatch { left: usize, right: usize },

    #[error("partition {target:?} cannot be obtained from {source_parts:?} by merging parts")]
    NotReachable {
        target: Vec<usize>,
        source_parts: Vec<usize>,
    },

    #[error("polynomial is not in the stratum D_(d,{k}) (largest multiplicity {max_multiplicity})")]
    NotInStratum { k: usize, max_multiplicity: usize },

    #[error("polynomial is not in the tangent space (divisibility residual {residual:e})")]
    NotInTangentSpace { residual: f64 },

    #[error("repeated root: root differences vanish")]
    RepeatedRoot,

    #[error("linear system is singular or constraints are dependent")]
    SingularSystem,

    #[error("cross-check failed: {0}")]
    CrossCheckMismatch(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
