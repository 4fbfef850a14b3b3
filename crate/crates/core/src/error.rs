use core::fmt;

use crate::sector::DerivativeMethod;

/// Errors produced by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of the routine.
    Domain(&'static str),
    /// Argument inside the domain but outside the range where the
    /// implementation meets its accuracy contract.
    Range(&'static str),
    /// Evaluation at a pole (e.g. the Hurwitz zeta at s = 1).
    Pole,
    /// Result would overflow binary64.
    Overflow,
    /// Adaptive quadrature or an iteration did not reach the requested accuracy.
    Convergence { achieved: f64, requested: f64 },
    /// The requested derivative formula does not apply to this angle.
    MethodMismatch { method: DerivativeMethod, reason: &'static str },
    /// The angle is within the buffer zone of a rational angle where the closed
    /// generic formula loses digits; `recommended` is smooth there.
    NearRational { alpha: f64, j: u32, recommended: DerivativeMethod },
    /// A Polyakov domain description violates its invariants.
    InvalidSpec(&'static str),
    /// Least-squares system is numerically singular.
    IllConditioned,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Domain(what) => write!(f, "domain error: {what}"),
            Self::Range(what) => write!(f, "outside supported range: {what}"),
            Self::Pole => write!(f, "evaluation at a pole"),
            Self::Overflow => write!(f, "result overflows binary64"),
            Self::Convergence { achieved, requested } => write!(
                f,
                "no convergence: achieved error {achieved:e}, requested {requested:e}"
            ),
            Self::MethodMismatch { method, reason } => {
                write!(f, "method {method:?} not applicable: {reason}")
            }
            Self::NearRational { alpha, j, recommended } => write!(
                f,
                "alpha = {alpha} is too close to pi/{j} for the closed generic formula; use {recommended:?}"
            ),
            Self::InvalidSpec(what) => write!(f, "invalid domain spec: {what}"),
            Self::IllConditioned => write!(f, "ill-conditioned least-squares fit"),
        }
    }
}

impl core::error::Error for Error {}
