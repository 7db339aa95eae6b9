use alloc::string::String;

use crate::poly::VarId;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left:?} against {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("rows have different lengths")]
    RaggedRows,
    #[error("matrix is not square")]
    NotSquare,
    #[error("maps do not compose to zero")]
    NotAComplex,
    #[error("columns do not span a direct summand")]
    NotSaturated,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("no value assigned to variable {0}")]
    MissingAssignment(VarId),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SymmError {
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("variable {0} is outside the symmetrization alphabets")]
    UnsupportedVariable(VarId),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LambdaError {
    #[error("malformed data: {0}")]
    Shape(String),
    #[error("beyond the truncation bound: {0}")]
    BeyondBound(String),
    #[error("series has a non-unit constant term")]
    NonUnitSeries,
    #[error("elements do not form a basis over the integers")]
    NotABasis,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("malformed data: {0}")]
    Shape(String),
    #[error("differentials compose to a nonzero map at degree {0}")]
    NotAComplex(usize),
    #[error("not functorial: {0}")]
    NotFunctorial(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
