//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),
    #[error("invalid norm specification: {0}")]
    InvalidNorm(String),
    #[error("point is not on the unit circle (norm deviates by {0:.3e})")]
    NotOnUnitCircle(f64),
    #[error("point is not a circumcenter (equidistance residual {residual:.3e} exceeds {allowed:.3e})")]
    NotACircumcenter { residual: f64, allowed: f64 },
    #[error("solver budget exhausted with no accepted circumcenter")]
    NoWitness,
    #[error("point is not on the circumscribed circle (deviation {0:.3e})")]
    NotOnCircumcircle(f64),
    #[error("boundary sweep exhausted without finding a chordal partner")]
    SearchExhausted,
    #[error("scene generation failed after {0} rejected draws")]
    GenerationFailed(u32),
    #[error("unknown theorem id: {0}")]
    UnknownTheoremId(String),
}

pub type Result<T> = std::result::Result<T, Error>;
