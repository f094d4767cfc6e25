use crate::C64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("admissibility condition fails: {0}")]
    Admissibility(String),

    #[error("evaluation at z = {z} is within the guard distance of the pole t = {pole}")]
    EvaluationAtPole { z: C64, pole: f64 },

    #[error("no invertible shift found among {candidates} candidates")]
    NoInvertibleShift { candidates: usize },

    #[error("eigensolver failed: {0}")]
    EigensolveFailure(String),

    #[error("degree {degree} exceeds the rational normal form limit {limit}")]
    DegreeOverflow { degree: usize, limit: usize },

    #[error("eigenvalue {lambda} has multiplicity {multiplicity}; use a root chain")]
    ChainRequired { lambda: C64, multiplicity: usize },

    #[error("requested chain length {requested} exceeds the zero order {available} at {lambda}")]
    OrderTooHigh {
        lambda: C64,
        requested: usize,
        available: usize,
    },

    #[error("gauge matrix is singular (smallest singular value {0:e})")]
    SingularGauge(f64),

    #[error("interpolation system is not minimal: {0}")]
    NotMinimal(String),

    #[error("integrand diverges near the real zero {zero} of phi")]
    DivergentNearRealZero { zero: C64 },

    #[error("eigensystem is not biorthogonal: {0}")]
    NotBiorthogonal(String),

    #[error("contour passes too close to a zero or pole: {0}")]
    ContourTooClose(String),

    #[error("zeta = {zeta} coincides with Theta at infinity; point mass p = {p}")]
    DegenerateZeta { zeta: C64, p: f64 },

    #[error("Clark measure carries a point mass at infinity (p = {p})")]
    MassPresent { p: f64 },

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("z = {z} is closer than the allowed distance to the pole t = {pole}")]
    NearPole { z: C64, pole: f64 },

    #[error("input sequence exhausted: {0}")]
    ExhaustedInput(String),

    #[error("bisection failed: {0}")]
    BisectionFailure(String),

    #[error("decay violated at index {index}: {detail}")]
    DecayViolation { index: usize, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors caused by the caller's input rather than by numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidData(_)
                | Error::Admissibility(_)
                | Error::BadParameters(_)
                | Error::Json(_)
                | Error::SingularGauge(_)
                | Error::ExhaustedInput(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
