//! Short-time heat-trace coefficients
//! Tr e^{−tΔ} ~ a₀ t^{−1} + a₁ t^{−1/2} + a₂,log log t + a₂,const for sectors and cones.

use core::f64::consts::PI;

use libm::sqrt;

use crate::{Error, OpeningAngle, Result};

/// Coefficients of the small-t heat-trace expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HeatExpansion {
    pub a0: f64,
    pub a1: f64,
    pub a2_log: f64,
    pub a2_const: f64,
}

fn check_corner(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma < 2.0 * PI {
        Ok(())
    } else {
        Err(Error::Domain("corner angle must lie in (0, 2*pi)"))
    }
}

/// Constant-term contribution (π² − γ²)/(24πγ) of a Dirichlet boundary corner of angle γ.
pub fn corner_coefficient_boundary(gamma: f64) -> Result<f64> {
    check_corner(gamma)?;
    Ok((PI * PI - gamma * gamma) / (24.0 * PI * gamma))
}

/// Constant-term contribution ((2π)² − γ²)/(24πγ) of an interior cone point of angle γ.
pub fn corner_coefficient_cone_point(gamma: f64) -> Result<f64> {
    check_corner(gamma)?;
    Ok((4.0 * PI * PI - gamma * gamma) / (24.0 * PI * gamma))
}

/// Unit-radius sector: area α/2, perimeter 2 + α, two right-angle corners at
/// the arc ends, the vertex of angle α and arc curvature 1.
pub fn heat_expansion_sector(angle: &OpeningAngle) -> HeatExpansion {
    let alpha = angle.alpha();
    let right = (PI * PI - 0.25 * PI * PI) / (24.0 * PI * 0.5 * PI);
    HeatExpansion {
        a0: alpha / (8.0 * PI),
        a1: -(2.0 + alpha) / (8.0 * sqrt(PI)),
        a2_log: 0.0,
        a2_const: 2.0 * right + (PI * PI - alpha * alpha) / (24.0 * PI * alpha) + alpha / (12.0 * PI),
    }
}

/// Flat cone of slant height 1: area α/2, boundary circle of length α and
/// curvature 1, one interior cone point of angle α.
pub fn heat_expansion_cone(angle: &OpeningAngle) -> HeatExpansion {
    let alpha = angle.alpha();
    HeatExpansion {
        a0: alpha / (8.0 * PI),
        a1: -alpha / (8.0 * sqrt(PI)),
        a2_log: 0.0,
        a2_const: (4.0 * PI * PI - alpha * alpha) / (24.0 * PI * alpha) + alpha / (12.0 * PI),
    }
}

/// ζ(0) = a₂,const − dim ker Δ. Requires a vanishing log t coefficient.
pub fn zeta_zero(expansion: &HeatExpansion, kernel_dim: u32) -> Result<f64> {
    if expansion.a2_log != 0.0 {
        return Err(Error::Domain("zeta(0) needs an expansion without a log t term"));
    }
    Ok(expansion.a2_const - f64::from(kernel_dim))
}
