//! Finite flat cone C_α of slant height 1 with Dirichlet condition on the
//! boundary circle.
//!
//! The cone's spectrum is the α/2 sector spectrum counted twice plus the
//! zero-angular-momentum series, which gives
//! −log det Δ_{C_α} = 2(−log det Δ_{S_{α/2}}) − ½ log 2π. The functions here
//! evaluate the cone formulas directly; the `*_via_sector` variants go through
//! that relation so the two can be checked against each other.

use core::f64::consts::{LN_2, PI};

use libm::{ceil, cos, fabs, floor, log, round, sin};

use crate::sector::{
    closed_rational, cosh_kernel_integral, ddalpha_sector, derivative_integrand, det_log_sector, digamma_rational,
    generic_weight, product_over_t, regularized_derivative, regularized_product, BarnesCoefficients, RATIONAL_BUFFER,
};
use crate::special_functions::{bessel_i_scaled, integrate_finite, integrate_semi_infinite, QuadratureConfig, EULER_GAMMA};
use crate::{DerivativeMethod, Error, Estimate, OpeningAngle, Result};

const TWO_PI: f64 = 2.0 * PI;

/// Laurent coefficients of 1/((e^{2πt/α} − 1)(eᵗ − 1)):
/// α/(2π), −(π + α/2)/(2π), (π² + 3πα/2 + α²/4)/(6πα).
pub fn cone_laurent_coefficients(angle: &OpeningAngle) -> BarnesCoefficients {
    let a = angle.alpha();
    BarnesCoefficients {
        b_minus2: a / TWO_PI,
        b_minus1: -(PI + 0.5 * a) / TWO_PI,
        b_0: (PI * PI + 1.5 * PI * a + 0.25 * a * a) / (6.0 * PI * a),
    }
}

/// −log det Δ_{C_α} = −½ log 2π + ½(γ_e + 2) + 5α/(24π) + (1/6)(γ_e − log 2)(2π/α + α/(2π))
/// + 2∫₁^∞ f/t + 2∫₀¹ (f − Laurent)/t, with f(t) = 1/((e^{2πt/α} − 1)(eᵗ − 1)).
pub fn det_log_cone(angle: &OpeningAngle, cfg: &QuadratureConfig) -> Result<Estimate> {
    let alpha = angle.alpha();
    let a = TWO_PI / alpha;
    let tail = integrate_semi_infinite(|t| product_over_t(a, t), 1.0, 1.0 + a, cfg)?;
    let head = integrate_finite(|t| regularized_product(a, t), 0.0, 1.0, cfg)?;
    let elementary = -0.5 * log(TWO_PI)
        + 0.5 * (EULER_GAMMA + 2.0)
        + 5.0 * alpha / (24.0 * PI)
        + (EULER_GAMMA - LN_2) / 6.0 * (a + alpha / TWO_PI);
    let value = elementary + 2.0 * (tail.value + head.value);
    Ok(Estimate::new(value, 2.0 * (tail.abs_err + head.abs_err) + 8.0 * f64::EPSILON * fabs(elementary)))
}

/// 2(−log det Δ_{S_{α/2}}) − ½ log 2π.
pub fn det_log_cone_via_sector(angle: &OpeningAngle, cfg: &QuadratureConfig) -> Result<Estimate> {
    let s = det_log_sector(&angle.halved(), cfg)?;
    Ok(Estimate::new(2.0 * s.value - 0.5 * log(TWO_PI), 2.0 * s.abs_err))
}

fn integral_form(alpha: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    let a = TWO_PI / alpha;
    let tail = integrate_semi_infinite(|t| derivative_integrand(TWO_PI, alpha, t), 1.0, 1.0 + a, cfg)?;
    let head = integrate_finite(|t| regularized_derivative(TWO_PI, alpha, t), 0.0, 1.0, cfg)?;
    let elementary = 5.0 / (24.0 * PI) + (EULER_GAMMA - LN_2) / 6.0 * (-TWO_PI / (alpha * alpha) + 1.0 / TWO_PI);
    Ok(Estimate::new(elementary + 2.0 * (tail.value + head.value), 2.0 * (tail.abs_err + head.abs_err)))
}

/// 1/(3π) + π/(3α²) − Σ_{k=1}^{⌈π/α−1⌉} (γ_e + log|sin(kα/2)|)/(2π sin²(kα/2))
/// + (1/α) sin(2π²/α) ∫_ℝ (−log 2 + 2γ_e + log(1+cosh s)) / (4π(1+cosh s)(cosh(2πs/α) − cos(2π²/α))) ds,
/// evaluated without domain or proximity checks.
pub fn closed_generic_cone_unchecked(alpha: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    let kmax = ceil(PI / alpha - 1.0) as i64;
    let mut sum = 0.0;
    for k in 1..=kmax {
        let s = sin(0.5 * k as f64 * alpha);
        sum += (EULER_GAMMA + log(fabs(s))) / (2.0 * PI * s * s);
    }
    let c = 2.0 * PI * PI / alpha;
    let kernel = cosh_kernel_integral(TWO_PI / alpha, c, generic_weight, cfg)?;
    let pref = sin(c) / (4.0 * PI * alpha);
    let value = 1.0 / (3.0 * PI) + PI / (3.0 * alpha * alpha) - sum + pref * kernel.value;
    Ok(Estimate::new(value, fabs(pref) * kernel.abs_err + 16.0 * f64::EPSILON * (fabs(sum) + 1.0)))
}

/// Index set of the raw cone formula: integers k in [⌈−π/α⌉, k_max] with
/// k α/(2π) ∉ ℤ, where k_max = ⌊π/α⌋, or π/α − 1 when π/α is an integer.
pub fn cone_w_set(angle: &OpeningAngle) -> alloc::vec::Vec<i64> {
    let alpha = angle.alpha();
    let h = PI / alpha;
    let near_int = |x: f64| fabs(x - round(x)) < 1e-9 * x.abs().max(1.0);
    let kmin = ceil(-h) as i64;
    let kmax = if near_int(h) { round(h) as i64 - 1 } else { floor(h) as i64 };
    (kmin..=kmax).filter(|&k| !near_int(k as f64 * alpha / TWO_PI)).collect()
}

fn ald_row_raw(angle: &OpeningAngle, cfg: &QuadratureConfig) -> Result<Estimate> {
    let alpha = angle.alpha();
    let mut sum = 0.0;
    for k in cone_w_set(angle) {
        let omc = 1.0 - cos(k as f64 * alpha);
        sum += (-2.0 * EULER_GAMMA + LN_2 - log(omc)) / (4.0 * PI * omc);
    }
    let c = 2.0 * PI * PI / alpha;
    let kernel = cosh_kernel_integral(TWO_PI / alpha, c, generic_weight, cfg)?;
    let pref = sin(c) / (4.0 * PI * alpha);
    // The leading 1/(4π) is the boundary normal-derivative term of the conformal factor.
    let value = 1.0 / (4.0 * PI) + 1.0 / (12.0 * PI) + PI / (3.0 * alpha * alpha) + sum + pref * kernel.value;
    Ok(Estimate::new(value, fabs(pref) * kernel.abs_err + 16.0 * f64::EPSILON * (fabs(sum) + 1.0)))
}

/// Closed form at α = 2π/j:
/// 1/(3π) + π/(3α²) − (γ_e/12π)(4π²/α² − 1) − (1/2π) Σ_{k=1}^{⌈π/α−1⌉} log|sin(kα/2)| / sin²(kα/2).
pub fn closed_rational_cone(j: u32) -> f64 {
    let alpha = TWO_PI / f64::from(j);
    let kmax = ceil(PI / alpha - 1.0) as i64;
    let mut sum = 0.0;
    for k in 1..=kmax {
        let s = sin(0.5 * k as f64 * alpha);
        sum += log(fabs(s)) / (s * s);
    }
    1.0 / (3.0 * PI) + PI / (3.0 * alpha * alpha) - EULER_GAMMA / (12.0 * PI) * (4.0 * PI * PI / (alpha * alpha) - 1.0)
        - sum / (2.0 * PI)
}

fn nearest_two_pi_over_j(alpha: f64, tol: f64) -> Option<u32> {
    let j = round(TWO_PI / alpha);
    if j >= 2.0 && j < 1e9 && fabs(alpha - TWO_PI / j) < tol {
        Some(j as u32)
    } else {
        None
    }
}

/// The formula an automatic dispatcher should use for a cone of this angle.
pub fn auto_method_cone(angle: &OpeningAngle) -> DerivativeMethod {
    if angle.two_pi_over_j().is_some() {
        DerivativeMethod::ClosedRational
    } else if nearest_two_pi_over_j(angle.alpha(), RATIONAL_BUFFER).is_some() {
        DerivativeMethod::IntegralForm
    } else {
        DerivativeMethod::ClosedGeneric
    }
}

/// d/dα(−log det Δ_{C_α}) by the chosen formula. The rational methods require
/// α = 2π/j; the generic ones refuse 2π/j and its buffer zone.
pub fn ddalpha_cone(angle: &OpeningAngle, method: DerivativeMethod, cfg: &QuadratureConfig) -> Result<Estimate> {
    let alpha = angle.alpha();
    match method {
        DerivativeMethod::IntegralForm => integral_form(alpha, cfg),
        DerivativeMethod::ClosedGeneric | DerivativeMethod::AldRowRaw => {
            if angle.two_pi_over_j().is_some() {
                return Err(Error::MethodMismatch { method, reason: "alpha is 2*pi/j; use ClosedRational or DigammaRational" });
            }
            if let Some(j) = nearest_two_pi_over_j(alpha, RATIONAL_BUFFER) {
                return Err(Error::NearRational { alpha, j, recommended: DerivativeMethod::IntegralForm });
            }
            if method == DerivativeMethod::ClosedGeneric {
                closed_generic_cone_unchecked(alpha, cfg)
            } else {
                ald_row_raw(angle, cfg)
            }
        }
        DerivativeMethod::ClosedRational | DerivativeMethod::DigammaRational => {
            let j = angle
                .two_pi_over_j()
                .ok_or(Error::MethodMismatch { method, reason: "alpha is not 2*pi/j for an integer j >= 2" })?;
            if method == DerivativeMethod::ClosedRational {
                Ok(Estimate::exact(closed_rational_cone(j)))
            } else {
                Ok(Estimate::exact(digamma_rational(j)?))
            }
        }
    }
}

/// d/dγ(−log det Δ_{S_γ}) at γ = α/2, the same quantity through the sector.
pub fn ddalpha_cone_via_sector(angle: &OpeningAngle, method: DerivativeMethod, cfg: &QuadratureConfig) -> Result<Estimate> {
    ddalpha_sector(&angle.halved(), method, cfg)
}

/// Closed-form rational value through the sector formula at π/j.
pub fn closed_rational_cone_via_sector(j: u32) -> f64 {
    closed_rational(j)
}

// ---------------------------------------------------------------------------
// Zero-angular-momentum series
// ---------------------------------------------------------------------------

/// Pieces of the reconstruction of ξ₀'(0), where ξ₀(s) = Σ_n j_{0,n}^{−2s}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Xi0Components {
    /// log I₀(1) evaluated directly.
    pub log_i0_direct: f64,
    /// ∫₀¹ I₁(z)/I₀(z) dz.
    pub log_i0_integral: f64,
    /// ∫₁^∞ (I₁(z)/I₀(z) − 1 + 1/(2z)) dz.
    pub remainder_integral: f64,
    /// Contribution of the elementary terms, −1.
    pub elementary: f64,
    /// Sum of the integral pieces and the elementary term.
    pub value: f64,
    pub abs_err: f64,
}

/// log I₀(z) − z + ½ log(2πz), which is O(1/z) as z → ∞.
pub fn xi0_remainder(z: f64) -> Result<f64> {
    Ok(log(bessel_i_scaled(0, z)?) + 0.5 * log(TWO_PI * z))
}

const RATIO_SWITCH: f64 = 40.0;
const RATIO_TERMS: usize = 16;

/// Coefficients r_k of I₁(z)/I₀(z) ~ Σ r_k z^{−k}, from dividing the Hankel
/// expansions of I₁ and I₀.
fn bessel_ratio_coefficients() -> [f64; RATIO_TERMS] {
    let mut c0 = [0.0; RATIO_TERMS];
    let mut c1 = [0.0; RATIO_TERMS];
    c0[0] = 1.0;
    c1[0] = 1.0;
    for k in 1..RATIO_TERMS {
        let odd = (2 * k - 1) as f64;
        c0[k] = c0[k - 1] * odd * odd / (8.0 * k as f64);
        c1[k] = c1[k - 1] * (odd * odd - 4.0) / (8.0 * k as f64);
    }
    let mut r = [0.0; RATIO_TERMS];
    for k in 0..RATIO_TERMS {
        let mut v = c1[k];
        for i in 1..=k {
            v -= c0[i] * r[k - i];
        }
        r[k] = v;
    }
    r
}

fn bessel_ratio(z: f64) -> Result<f64> {
    Ok(bessel_i_scaled(1, z)? / bessel_i_scaled(0, z)?)
}

/// Reassembles ξ₀'(0) = −½ log 2π from Bessel-function integrals split at z = 1.
pub fn xi0_prime_zero(cfg: &QuadratureConfig) -> Result<Xi0Components> {
    let log_i0_direct = log(bessel_i_scaled(0, 1.0)?) + 1.0;
    let ratio = |z: f64| bessel_ratio(z).unwrap_or(f64::NAN);
    let a = integrate_finite(ratio, 0.0, 1.0, cfg)?;
    let b_mid = integrate_finite(|z| ratio(z) - 1.0 + 0.5 / z, 1.0, RATIO_SWITCH, cfg)?;
    // ∫_Z^∞ Σ_{k≥2} r_k z^{−k} dz = Σ_{k≥2} r_k Z^{1−k}/(k−1).
    let r = bessel_ratio_coefficients();
    let mut b_tail = 0.0;
    let mut zp = 1.0 / RATIO_SWITCH;
    for (k, rk) in r.iter().enumerate().skip(2) {
        b_tail += rk * zp / (k as f64 - 1.0);
        zp /= RATIO_SWITCH;
    }
    let tail_err = fabs(r[RATIO_TERMS - 1] * zp * RATIO_SWITCH);
    let elementary = -1.0;
    let remainder_integral = b_mid.value + b_tail;
    Ok(Xi0Components {
        log_i0_direct,
        log_i0_integral: a.value,
        remainder_integral,
        elementary,
        value: a.value + remainder_integral + elementary,
        abs_err: a.abs_err + b_mid.abs_err + tail_err,
    })
}
