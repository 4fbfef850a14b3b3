//! Single-point evaluation with method dispatch.

use clap::ValueEnum;
use sectordet::cone::{auto_method_cone, ddalpha_cone, det_log_cone};
use sectordet::sector::{auto_method, ddalpha_sector, det_log_sector};
use sectordet::{DerivativeMethod, OpeningAngle, QuadratureConfig};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryArg {
    Sector,
    Cone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Integral,
    Closed,
    Rational,
    AldRow,
    Digamma,
}

impl MethodArg {
    fn explicit(self) -> Option<DerivativeMethod> {
        match self {
            MethodArg::Auto => None,
            MethodArg::Integral => Some(DerivativeMethod::IntegralForm),
            MethodArg::Closed => Some(DerivativeMethod::ClosedGeneric),
            MethodArg::Rational => Some(DerivativeMethod::ClosedRational),
            MethodArg::AldRow => Some(DerivativeMethod::AldRowRaw),
            MethodArg::Digamma => Some(DerivativeMethod::DigammaRational),
        }
    }
}

/// A value with the formula that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub alpha: f64,
    pub value: f64,
    pub abs_err: f64,
    /// `explicit` for determinants, the derivative method otherwise, with an
    /// `auto:` prefix when it was chosen automatically.
    pub method: String,
}

pub fn angle(alpha: f64) -> Result<OpeningAngle, CliError> {
    OpeningAngle::new(alpha).map_err(|_| CliError::Usage(format!("alpha = {alpha} is outside (0, 2*pi)")))
}

pub fn det(geometry: GeometryArg, alpha: f64, cfg: &QuadratureConfig) -> Result<Evaluation, CliError> {
    let a = angle(alpha)?;
    let e = match geometry {
        GeometryArg::Sector => det_log_sector(&a, cfg)?,
        GeometryArg::Cone => det_log_cone(&a, cfg)?,
    };
    Ok(Evaluation { alpha, value: e.value, abs_err: e.abs_err, method: "explicit".into() })
}

pub fn ddalpha(geometry: GeometryArg, alpha: f64, method: MethodArg, cfg: &QuadratureConfig) -> Result<Evaluation, CliError> {
    let a = angle(alpha)?;
    let (chosen, label) = match method.explicit() {
        Some(m) => (m, format!("{m:?}")),
        None => {
            let m = match geometry {
                GeometryArg::Sector => auto_method(&a),
                GeometryArg::Cone => auto_method_cone(&a),
            };
            (m, format!("auto:{m:?}"))
        }
    };
    let e = match geometry {
        GeometryArg::Sector => ddalpha_sector(&a, chosen, cfg)?,
        GeometryArg::Cone => ddalpha_cone(&a, chosen, cfg)?,
    };
    Ok(Evaluation { alpha, value: e.value, abs_err: e.abs_err, method: label })
}
