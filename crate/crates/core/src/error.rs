use alloc::string::String;

use crate::ratfunc::RatFnError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    RatFn(#[from] RatFnError),
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate tower: a radicand became a square")]
    DegenerateTower,
    #[error("radicand is zero")]
    ZeroRadicand,
    #[error("tower depth limit {0} exceeded")]
    TowerDepthExceeded(usize),
    #[error("elements belong to different towers")]
    TowerMismatch,
    #[error("radicand vanishes at the specialization point")]
    BranchCollapse,
    #[error("singular matrix")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("isotropic pivot at row {0}")]
    IsotropicPivot(usize),
    #[error("block-isotropic pivot at block {0}")]
    BlockIsotropicPivot(usize),
    #[error("matrix is not in the {0} group")]
    WrongGroup(&'static str),
    #[error("exact check failed: {0}")]
    CheckFailed(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable tag.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RatFn(RatFnError::Syntax { .. }) => "syntax",
            Error::RatFn(RatFnError::UnknownVariable(_)) => "unknown-variable",
            Error::RatFn(RatFnError::Pole) => "pole",
            Error::RatFn(_) => "ratfunc",
            Error::DivisionByZero => "division-by-zero",
            Error::DegenerateTower => "degenerate-tower",
            Error::ZeroRadicand => "zero-radicand",
            Error::TowerDepthExceeded(_) => "tower-depth-exceeded",
            Error::TowerMismatch => "tower-mismatch",
            Error::BranchCollapse => "branch-collapse",
            Error::Singular => "singular",
            Error::Dimension(_) => "dimension",
            Error::IsotropicPivot(_) => "isotropic-pivot",
            Error::BlockIsotropicPivot(_) => "block-isotropic-pivot",
            Error::WrongGroup(_) => "wrong-group",
            Error::CheckFailed(_) => "check-failed",
            Error::Invalid(_) => "invalid-input",
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
