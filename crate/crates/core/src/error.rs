use thiserror::Error;

use crate::kernels::TransformKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("result overflows binary64 range ({what})")]
    Overflow { what: &'static str },

    #[error("order tau = {tau} exceeds the supported maximum {max}")]
    OrderTooLarge { tau: f64, max: f64 },

    #[error("argument {name} = {value} is outside the admissible range ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("estimated relative accuracy {estimate:.3e} is worse than the limit {limit:.1e}")]
    AccuracyLoss { estimate: f64, limit: f64 },

    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(&'static str),

    #[error("integrand is not finite at x = {at}")]
    NonFiniteIntegrand { at: f64 },

    #[error("series term {index} is not finite")]
    NonFiniteTerm { index: i64 },

    #[error("contour integrand does not decay: shell contribution {shell:.3e} at |t| = {t}")]
    NonDecay { t: f64, shell: f64 },

    #[error("index n = {n} is not admissible for kind {kind}")]
    IndexOutOfRange { kind: TransformKind, n: i64 },

    #[error("invalid coefficient sequence: {0}")]
    InvalidSequence(String),

    #[error("declared decay {declared} is too weak for kind {kind}; need at least {needed}")]
    InsufficientDecay {
        kind: TransformKind,
        declared: String,
        needed: f64,
    },

    #[error(
        "precision loss at n = {n}: amplification {amplification:.3e} turns quadrature error \
         {quad_error:.3e} into {amplified:.3e}, above the requested {requested:.3e}"
    )]
    PrecisionLoss {
        n: i64,
        amplification: f64,
        quad_error: f64,
        amplified: f64,
        requested: f64,
    },

    #[error("parse error: {0}")]
    Parse(String),
}
