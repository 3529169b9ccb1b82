use thiserror::Error;

/// Errors produced by the arithmetic, recurrence, series and oracle layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("pole: denominator vanishes at the evaluation point")]
    Pole,

    #[error("near pole: |den| = {magnitude:e} is below the precision threshold {threshold:e}")]
    NearPole { magnitude: f64, threshold: f64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("negative upper index {0} in integer binomial")]
    NegativeBinomial(i64),

    #[error("missing dependency: cell ({p}, {t}) is not filled")]
    MissingDependency { p: usize, t: usize },

    #[error("missing dependency: psi[{0}] is not filled")]
    MissingPsi(usize),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("partial sum is zero; reciprocal undefined")]
    ZeroSum,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("iteration did not converge: {0}")]
    ConvergenceFailure(String),

    #[error("enumeration budget exceeded after {0} nodes")]
    BudgetExceeded(u64),

    #[error("table too short: order {requested} requested, table holds {available}")]
    TableTooShort { requested: usize, available: usize },

    #[error("variant mismatch: expected {expected}, table is {found}")]
    VariantMismatch { expected: String, found: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
