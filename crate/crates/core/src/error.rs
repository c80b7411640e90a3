use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point {re}+{im}i is not inside the open unit disk")]
    OutsideDisk { re: f64, im: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error(
        "expected an analytic polynomial (no negative frequencies), lowest frequency is {n_min}"
    )]
    NotAnalytic { n_min: i64 },

    #[error("{what} must vanish at the origin")]
    NonzeroAtOrigin { what: &'static str },

    #[error("integrand is not real-valued on the disk (Hermitian defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("non-finite coefficient in {what}")]
    NonFinite { what: &'static str },

    #[error("operation undefined for the zero symbol")]
    ZeroSymbol,

    #[error("symbol is not normalized: measured sup of the Garsia quantity is {measured_sup}")]
    NotNormalized { measured_sup: f64 },

    #[error("front factor of a Blaschke product must be unimodular (|c| = {modulus})")]
    NotUnimodular { modulus: f64 },

    #[error(
        "model-space projection cross-check failed (defect {defect:e}); increase the truncation degree N (currently {n})"
    )]
    InsufficientResolution { defect: f64, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
