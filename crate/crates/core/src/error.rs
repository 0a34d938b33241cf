use thiserror::Error;

/// Errors raised by the algebraic constructions and the file pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u32),
    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("dimension mismatch in {op}: {detail}")]
    DimensionMismatch { op: &'static str, detail: String },
    #[error("columns are linearly dependent")]
    DependentColumns,
    #[error("matrix is not invertible")]
    Singular,
    #[error("differentials compose to a nonzero map in degree {degree}")]
    NotAComplex { degree: usize },
    #[error("components do not commute with the differentials in degree {degree}")]
    NotAChainMap { degree: usize },
    #[error("homotopy identity fails in degree {degree}")]
    HomotopyViolated { degree: usize },
    #[error("map is not degreewise injective in degree {degree}")]
    NotMono { degree: usize },
    #[error("lifting problem has no solution in degree {degree}")]
    LiftFailed { degree: usize },
    #[error("grid must be strictly increasing, non-negative and finite")]
    BadGrid,
    #[error("grid is not a refinement of the object's grid")]
    NotARefinement,
    #[error("ladder square {index} does not commute")]
    NotNatural { index: usize },
    #[error("transition {index} is not degreewise injective: object is not cofibrant")]
    NotCofibrant { index: usize },
    #[error("invalid parameter order: {0}")]
    BadParams(String),
    #[error("object has chains above degree 1 (degree {degree})")]
    NotALadder { degree: usize },
    #[error("zigzag profile must contain at least one direction")]
    EmptyProfile,
    #[error("expected {expected} grid values, got {got}")]
    GridLength { expected: usize, got: usize },
    #[error("filtration: face {face} of simplex {simplex} enters later or is missing")]
    FaceOrder { simplex: String, face: String },
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_err(op: &'static str, detail: impl Into<String>) -> Error {
    Error::DimensionMismatch {
        op,
        detail: detail.into(),
    }
}
