use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("grid functions live on different grids")]
    GridMismatch,

    #[error("a grid function needs at least {needed} points, got {got}")]
    GridTooShort { needed: usize, got: usize },

    /// `1 < 1` and `1 > 1` for the adjoined dendriform unit.
    #[error("{0} of the adjoined unit with itself is not defined")]
    UndefinedUnitProduct(&'static str),

    #[error("the adjoined dendriform unit has no pointwise product")]
    UnitInPointwiseProduct,

    #[error("expected a series with vanishing grade 0")]
    NonzeroGradeZero,

    #[error("expected a series whose grade 0 is exactly the unit")]
    NotUnipotent,

    #[error("expected zero constant term in the free algebra")]
    NonzeroConstantTerm,

    #[error("expected constant term 1 in the free algebra")]
    ConstantTermNotOne,

    #[error("q must satisfy 0 < q <= 1, got {0}")]
    InvalidQ(String),

    #[error("operation requires 0 < q < 1 (twisted regime)")]
    RequiresTwisted,

    #[error("summation operator diverges on a nonzero constant term")]
    Divergent,

    #[error("coefficient matrices do not commute")]
    NonCommuting,

    #[error("invalid rational number {0:?}")]
    ParseRational(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
