use thiserror::Error;

/// Errors produced by the toolkit.
///
/// Domain violations carry a message naming the violated precondition so the
/// CLI can surface it verbatim.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid nonlinearity: {0}")]
    InvalidNonlinearity(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("degenerate audit grid: {0}")]
    DegenerateGrid(String),

    #[error("not a critical point: |V_J'({r})| = {residual:e}")]
    NotARoot { r: f64, residual: f64 },

    #[error("level set {0}")]
    LevelSet(String),

    #[error("undersampled grid: {points} points cannot represent {modes} modes")]
    Undersampled { points: usize, modes: usize },

    #[error("boundary mismatch: {0}")]
    Boundary(String),

    #[error("no Nehari representative on this ray: {0}")]
    NoNehariRepresentative(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("hypothesis audit failed: {0}")]
    Audit(String),

    #[error("no closed-form minimizer for {0}")]
    NoClosedForm(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
