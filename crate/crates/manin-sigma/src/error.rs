//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by numerical evaluation and algebraic construction.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("index {index} out of range (limit {limit}) in {what}")]
    OutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("non-finite value encountered in {what}")]
    NonFinite { what: &'static str },

    #[error("matrix 1-norm {norm:.3e} exceeds the exponential overflow bound {bound:.1e}")]
    NormOverflow { norm: f64, bound: f64 },

    #[error("singular matrix (pivot {pivot:.3e} below threshold {threshold:.3e})")]
    Singular { pivot: f64, threshold: f64 },

    /// The block a(g) is singular at the requested point, so the bivector
    /// b(g)a(g)^-1 is undefined in this coordinate chart.
    #[error("coordinate chart breakdown: |det a(g)| = {det_a:.3e}")]
    ChartBreakdown { det_a: f64 },

    /// The assembled adjoint matrix is not block upper-triangular, which
    /// signals a point outside the subgroup or a bracket sign error.
    #[error("bottom-left adjoint block is nonzero (max |entry| = {max_entry:.3e})")]
    NotTriangular { max_entry: f64 },

    #[error("bivector antisymmetry violated (max |P + P^T| = {max:.3e})")]
    AntisymmetryViolation { max: f64 },

    #[error("unknown catalog entry `{name}`")]
    UnknownCatalogEntry { name: String },

    #[error("invalid parameter: {what}")]
    InvalidParameter { what: String },

    #[error("no reference bivector form is available for `{name}`")]
    NoReferenceForm { name: String },

    #[error("chart breakdown at grid site ({i1}, {i2}): {source}")]
    ChartBreakdownAtSite {
        i1: usize,
        i2: usize,
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised while reading triple and field files.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("dimension must be in 1..={max}, got {dim}")]
    BadDimension { dim: usize, max: usize },

    #[error("entry {pos} of `{block}`: indices must satisfy 1 <= i < j <= {dim} and 1 <= k <= {dim}, got ({i}, {j}, {k})")]
    BadIndices {
        block: &'static str,
        pos: usize,
        i: i64,
        j: i64,
        k: i64,
        dim: usize,
    },

    #[error("duplicate entry ({i}, {j}, {k}) in `{block}` (entry {pos})")]
    DuplicateEntry {
        block: &'static str,
        pos: usize,
        i: usize,
        j: usize,
        k: usize,
    },

    #[error("entry {pos} of `{block}`: value is not finite")]
    NonFiniteValue { block: &'static str, pos: usize },

    #[error("field array `{what}` has wrong shape: expected {expected}, got {got}")]
    BadShape {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("grid is invalid: {what}")]
    BadGrid { what: String },

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}
