use alloc::string::String;

/// Errors raised by the finite-geometry routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),

    #[error("dimension {n} outside supported range {min}..={max}")]
    DimensionOutOfRange { n: usize, min: usize, max: usize },

    #[error("vector has zero norm, reflection undefined")]
    SingularVector,

    #[error("form degree {0} exceeds the hard cap of {cap}", cap = crate::forms::MAX_DEGREE)]
    DegreeCap(usize),

    #[error("gauge error: {0}")]
    Gauge(String),

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("internal consistency check `{what}` failed (residual {residual:e})")]
    InternalConsistency { what: String, residual: f64 },

    #[error("lattice cutoff too small: need K >= {required_k}, have {have_k}")]
    Truncation { required_k: u64, have_k: u64 },

    #[error("fit error: {0}")]
    Fit(String),

    #[error("missing data: {0}")]
    Missing(String),
}

impl Error {
    /// True for errors caused by inconsistent internal results rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InternalConsistency { .. })
    }
}

pub type Result<T> = core::result::Result<T, Error>;
