use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("form is degenerate")]
    Degenerate,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not real")]
    NotReal,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("form does not have the required parity: {0}")]
    WrongParity(String),
    #[error("endomorphism is not nilpotent")]
    NotNilpotent,
    #[error("filtration is not monotone at index {0}")]
    NotMonotone(i32),
    #[error("subspaces are not independent or do not span: {0}")]
    NotAGrading(String),
    #[error("F^{index} and the conjugate of F^{{k-{index}+1}} are not opposed")]
    Opposedness { index: i32 },
    #[error("mixed Hodge structure check failed: {0}")]
    NotMixedHodge(String),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("nilpotent cone has no generators")]
    EmptyCone,
    #[error("sample {0} has a nonpositive coefficient")]
    NonPositiveSample(usize),
    #[error("coefficient {0} is not strictly positive")]
    NonPositiveCoefficient(usize),
    #[error("subspace is not abelian: basis elements {0} and {1} do not commute")]
    NotAbelian(usize, usize),
    #[error("infeasible dimension data: {0}")]
    Infeasible(String),
    #[error("invalid Hodge numbers: {0}")]
    InvalidHodgeNumbers(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
}
