//! Parameter sweeps written to CSV in grid order.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use rayon::prelude::*;
use sectordet::QuadratureConfig;

use crate::eval::{ddalpha, det, Evaluation, GeometryArg, MethodArg};
use crate::{fmt17, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    #[value(name = "det")]
    DetLog,
    #[value(name = "ddalpha")]
    DDalpha,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRequest {
    pub geometry: GeometryArg,
    pub quantity: Quantity,
    pub alpha_from: f64,
    pub alpha_to: f64,
    pub steps: usize,
    pub method: MethodArg,
    pub output_path: PathBuf,
}

impl SweepRequest {
    pub fn validate(&self) -> Result<(), CliError> {
        let two_pi = 2.0 * std::f64::consts::PI;
        if !(0.0 < self.alpha_from && self.alpha_from < self.alpha_to && self.alpha_to < two_pi) {
            return Err(CliError::Usage("sweep needs 0 < from < to < 2*pi".into()));
        }
        if self.steps < 2 {
            return Err(CliError::Usage("sweep needs at least 2 steps".into()));
        }
        Ok(())
    }

    /// Evenly spaced grid including both end points.
    pub fn grid(&self) -> Vec<f64> {
        let h = (self.alpha_to - self.alpha_from) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.alpha_to } else { self.alpha_from + h * i as f64 })
            .collect()
    }
}

/// Evaluates the grid in parallel; rows come back in grid order.
pub fn evaluate(req: &SweepRequest, cfg: &QuadratureConfig) -> Result<Vec<Evaluation>, CliError> {
    req.validate()?;
    req.grid()
        .par_iter()
        .map(|&alpha| match req.quantity {
            Quantity::DetLog => det(req.geometry, alpha, cfg),
            Quantity::DDalpha => ddalpha(req.geometry, alpha, req.method, cfg),
        })
        .collect()
}

/// Header `alpha,value,method,abs_err_estimate`.
pub fn write_csv(rows: &[Evaluation], path: &Path) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["alpha", "value", "method", "abs_err_estimate"])?;
    for r in rows {
        w.write_record([fmt17(r.alpha), fmt17(r.value), r.method.clone(), fmt17(r.abs_err)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn run(req: &SweepRequest, cfg: &QuadratureConfig) -> Result<usize, CliError> {
    let rows = evaluate(req, cfg)?;
    write_csv(&rows, &req.output_path)?;
    Ok(rows.len())
}
