use thiserror::Error;

use crate::geodesics::GeodesicCase;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngelError {
    #[error("horizontal vectors are based at different points")]
    BaseMismatch,

    #[error("elliptic modulus out of range: k^2 = {0} (need 0 <= k^2 <= 1)")]
    ModulusDomain(f64),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("pole of {function} at u = {location}")]
    Pole { function: &'static str, location: f64 },

    #[error("covector violates nontriviality: {0}")]
    Nontrivial(String),

    #[error("covector belongs to case {detected}, not {expected}")]
    WrongCase {
        expected: GeodesicCase,
        detected: GeodesicCase,
    },

    #[error("integration diverged after s = {last_good_s}")]
    Divergence { last_good_s: f64 },

    #[error("invalid step or horizon: {0}")]
    InvalidStep(String),

    #[error("curve is not causal: space-like sample at index {index} (g = {value})")]
    NotCausal { index: usize, value: f64 },

    #[error("degenerate curve family: {0}")]
    Degenerate(String),

    #[error("ratio undefined: x1^2 == x2^2")]
    RatioUndefined,

    #[error("s = {s} outside the pole-free interval ({lo}, {hi})")]
    OutsideDomain { s: f64, lo: f64, hi: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, EngelError>;
