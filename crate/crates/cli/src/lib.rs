//! Command-line front end for `sectordet`: single evaluations, sweeps to CSV,
//! Polyakov spec files, spectrum export and the self-verification suites.

pub mod error;
pub mod eval;
pub mod spec_file;
pub mod spectrum;
pub mod sweep;
pub mod verify;

pub use error::CliError;

/// Formats with 17 significant digits, enough to round-trip any f64.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}
