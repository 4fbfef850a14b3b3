//! Zeta-regularized determinants of the Dirichlet Laplacian on unit circular
//! sectors and finite flat cones.
//!
//! Every "determinant" in this crate is reported as `-log det = ζ'(0)`.
//!
//! The crate is `no_std` (it needs `alloc`) and pulls its elementary functions
//! from [`libm`]. IO, file formats and the command-line front end live in the
//! companion `sectordet-cli` crate.
//!
//! ```
//! use sectordet::{OpeningAngle, QuadratureConfig, sector};
//!
//! let half_pi = OpeningAngle::new(core::f64::consts::FRAC_PI_2).unwrap();
//! let cfg = QuadratureConfig::default();
//! let det = sector::det_log_sector(&half_pi, &cfg).unwrap();
//! assert!((det.value - 0.622_702_170_264_472_3).abs() < 1e-10);
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cone;
mod error;
pub mod heat_trace;
pub mod polyakov;
pub mod sector;
pub mod special_functions;
pub mod spectral_oracle;

pub use error::Error;
pub use sector::{AngleClass, DerivativeMethod, OpeningAngle};
pub use special_functions::{Quadrature, QuadratureConfig};

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// A computed value together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Estimate {
    pub value: f64,
    pub abs_err: f64,
}

impl Estimate {
    pub(crate) fn new(value: f64, abs_err: f64) -> Self {
        Self { value, abs_err }
    }

    /// A value known to rounding accuracy.
    pub(crate) fn exact(value: f64) -> Self {
        Self::new(value, 8.0 * f64::EPSILON * libm::fabs(value))
    }
}
