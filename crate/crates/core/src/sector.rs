//! Dirichlet Laplacian on the unit circular sector S_α.
//!
//! `det_log_sector` returns ζ'_{S_α}(0) = −log det Δ_{S_α}. The α-derivative is
//! available through five formulas selected by [`DerivativeMethod`]; they are
//! mathematically equal on their common domain and the test-suite holds them
//! to each other.
//!
//! Writing a = π/α and f(t) = 1/((e^{at} − 1)(e^t − 1)), the Barnes-type zeta
//! ζ_{N+1}(z) = Σ_{n,ℓ≥1} (aℓ + n)^{−z} = Γ(z)^{−1} ∫₀^∞ t^{z−1} f(t) dt drives
//! the determinant through its derivative at z = 0.

use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

use libm::{ceil, cos, fabs, floor, log, log1p, exp, pow, round, sin};

use crate::special_functions::{
    bose, bose_remainder, bose_remainder2, bose_sq, bose_sq_remainder, digamma, gamma, hurwitz_zeta,
    integrate_finite, integrate_semi_infinite, Quadrature, QuadratureConfig, EULER_GAMMA,
};
use crate::{Error, Estimate, Result};

/// Default tolerance on |α − π/j| for rational classification.
pub const CLASSIFICATION_TOLERANCE: f64 = 1e-8;

/// Inside this distance of π/j (but outside the classification tolerance) the
/// closed generic formulas are refused.
pub const RATIONAL_BUFFER: f64 = 1e-4;

const TWO_PI: f64 = 2.0 * PI;

/// Rational-angle classification of an opening angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum AngleClass {
    Generic,
    PiOverJ(u32),
    TwoPiOverJ(u32),
}

/// A validated opening angle in (0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpeningAngle {
    alpha: f64,
    classification: AngleClass,
    tolerance: f64,
}

fn nearest_fraction(alpha: f64, numerator: f64, tol: f64) -> Option<u32> {
    let ratio = numerator / alpha;
    if ratio > 1e9 {
        return None;
    }
    let j = round(ratio);
    if j >= 2.0 && fabs(alpha - numerator / j) < tol {
        Some(j as u32)
    } else {
        None
    }
}

impl OpeningAngle {
    pub fn new(alpha: f64) -> Result<Self> {
        Self::with_tolerance(alpha, CLASSIFICATION_TOLERANCE)
    }

    pub fn with_tolerance(alpha: f64, tolerance: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < TWO_PI) {
            return Err(Error::Domain("opening angle must lie in (0, 2*pi)"));
        }
        if !(tolerance >= 0.0) {
            return Err(Error::Domain("classification tolerance must be non-negative"));
        }
        let classification = if let Some(j) = nearest_fraction(alpha, PI, tolerance) {
            AngleClass::PiOverJ(j)
        } else if let Some(j) = nearest_fraction(alpha, TWO_PI, tolerance) {
            AngleClass::TwoPiOverJ(j)
        } else {
            AngleClass::Generic
        };
        Ok(Self { alpha, classification, tolerance })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn classification(&self) -> AngleClass {
        self.classification
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Some(j) if α = π/j (j ≥ 2) within the classification tolerance.
    pub fn pi_over_j(&self) -> Option<u32> {
        nearest_fraction(self.alpha, PI, self.tolerance)
    }

    /// Some(j) if α = 2π/j (j ≥ 2) within the classification tolerance.
    pub fn two_pi_over_j(&self) -> Option<u32> {
        nearest_fraction(self.alpha, TWO_PI, self.tolerance)
    }

    /// The angle α/2 with the same tolerance.
    pub fn halved(&self) -> Self {
        Self::with_tolerance(0.5 * self.alpha, self.tolerance).expect("half of a valid angle is valid")
    }
}

/// Laurent coefficients of f(t) = b₋₂/t² + b₋₁/t + b₀ + O(t).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BarnesCoefficients {
    pub b_minus2: f64,
    pub b_minus1: f64,
    pub b_0: f64,
}

pub fn barnes_coefficients(angle: &OpeningAngle) -> BarnesCoefficients {
    let a = angle.alpha;
    BarnesCoefficients {
        b_minus2: a / PI,
        b_minus1: -(PI + a) / (2.0 * PI),
        b_0: (PI * PI + 3.0 * PI * a + a * a) / (12.0 * PI * a),
    }
}

/// Selects one of the equivalent formulas for d/dα(−log det Δ_{S_α}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum DerivativeMethod {
    /// Differentiated integral representation; smooth on (0, 2π).
    IntegralForm,
    /// Finite log-sine sum plus a cosh-kernel integral; α ∈ (0, π) away from π/j.
    ClosedGeneric,
    /// Pure log-sine sum at α = π/j.
    ClosedRational,
    /// Symmetric W_α sum before simplification; α ∈ (0, π) away from π/j.
    AldRowRaw,
    /// Digamma values ψ(p/j) at α = π/j.
    DigammaRational,
}

// ---------------------------------------------------------------------------
// Integrands shared with the cone module. `a` is the Barnes frequency
// (π/α for sectors, 2π/α for cones).
// ---------------------------------------------------------------------------

/// f(t)/t.
pub(crate) fn product_over_t(a: f64, t: f64) -> f64 {
    bose(a * t) * bose(t) / t
}

/// (1/t)(f(t) − b₋₂/t² − b₋₁/t − b₀), evaluated through the analytic remainders
/// of 1/(eˣ−1) so that no t^{−3} cancellation occurs.
pub(crate) fn regularized_product(a: f64, t: f64) -> f64 {
    if t == 0.0 {
        return -(1.0 + a) / 24.0;
    }
    let at = a * t;
    let (rt, rat) = (bose_remainder(t), bose_remainder(at));
    let inner = bose_remainder2(t) / at + bose_remainder2(at) / t - 0.5 * rt - 0.5 * rat + rat * rt;
    inner / t
}

/// ∂/∂α of f(t)/t when a = β/α.
pub(crate) fn derivative_integrand(beta: f64, alpha: f64, t: f64) -> f64 {
    beta / (alpha * alpha) * bose_sq(beta * t / alpha) * bose(t)
}

/// `derivative_integrand` minus its t^{−3}, t^{−2}, t^{−1} terms.
pub(crate) fn regularized_derivative(beta: f64, alpha: f64, t: f64) -> f64 {
    let p = beta / (alpha * alpha);
    if t == 0.0 {
        return p / 24.0;
    }
    let at = beta * t / alpha;
    bose_remainder2(t) / (beta * t * t) + p * ((1.0 / 24.0 - bose_remainder(t) / 12.0) + bose_sq_remainder(at) * bose(t))
}

/// log(1 + cosh s), overflow-free.
pub(crate) fn log_one_plus_cosh(s: f64) -> f64 {
    let y = fabs(0.5 * s);
    // 1 + cosh s = 2 cosh²(s/2)
    LN_2 + 2.0 * (y + log1p(exp(-2.0 * y)) - LN_2)
}

/// ∫_ℝ weight(s) / ((1 + cosh s)(cosh(b s) − cos c)) ds for an even weight.
///
/// The integrand has a Lorentzian peak of width ≈ 2|sin(c/2)|/b at s = 0 when
/// c is close to a multiple of 2π, so [0, ∞) is cut geometrically from that
/// width outwards before adaptive integration.
pub(crate) fn cosh_kernel_integral<W: Fn(f64) -> f64>(b: f64, c: f64, weight: W, cfg: &QuadratureConfig) -> Result<Quadrature> {
    let half = cosh_kernel_half_line(b, c, &weight, cfg)?;
    Ok(Quadrature { value: 2.0 * half.value, abs_err: 2.0 * half.abs_err, subdivisions: half.subdivisions })
}

pub(crate) fn cosh_kernel_integrand<W: Fn(f64) -> f64>(b: f64, c: f64, weight: &W, s: f64) -> f64 {
    let ch = libm::cosh(0.5 * s);
    let sh = libm::sinh(0.5 * b * s);
    let sc = sin(0.5 * c);
    weight(s) / (2.0 * ch * ch * 2.0 * (sh * sh + sc * sc))
}

pub(crate) fn cosh_kernel_half_line<W: Fn(f64) -> f64>(b: f64, c: f64, weight: &W, cfg: &QuadratureConfig) -> Result<Quadrature> {
    let f = |s: f64| cosh_kernel_integrand(b, c, weight, s);
    let width = (2.0 * fabs(sin(0.5 * c)) / b).clamp(1e-12, 1.0);
    let mut total = Quadrature { value: 0.0, abs_err: 0.0, subdivisions: 0 };
    let mut lo = 0.0;
    let mut hi = width;
    while hi < 1.0 {
        let q = integrate_finite(f, lo, hi, cfg)?;
        total.value += q.value;
        total.abs_err += q.abs_err;
        total.subdivisions += q.subdivisions;
        lo = hi;
        hi *= 8.0;
    }
    let head = integrate_finite(f, lo, 1.0, cfg)?;
    let tail = integrate_semi_infinite(f, 1.0, 1.0 + b, cfg)?;
    total.value += head.value + tail.value;
    total.abs_err += head.abs_err + tail.abs_err;
    total.subdivisions += head.subdivisions + tail.subdivisions;
    Ok(total)
}

/// −log 2 + 2γ_e + log(1 + cosh s).
pub(crate) fn generic_weight(s: f64) -> f64 {
    -LN_2 + 2.0 * EULER_GAMMA + log_one_plus_cosh(s)
}

// ---------------------------------------------------------------------------
// Barnes zeta
// ---------------------------------------------------------------------------

/// Double series Σ_{n,ℓ≥1} (aℓ + n)^{−z} with its truncation accounting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarnesSeries {
    /// `partial_sum + tail_estimate`.
    pub value: f64,
    /// Σ_{ℓ=1}^{terms} Σ_{n≥1}; each inner sum is the Hurwitz zeta ζ_H(z; aℓ + 1).
    pub partial_sum: f64,
    /// Σ_{ℓ>terms} from the three leading terms of the large-q expansion of ζ_H.
    pub tail_estimate: f64,
    /// Size of the first omitted term of that expansion, a bound on |value − exact|.
    pub tail_bound: f64,
}

pub fn barnes_zeta_series(z: f64, angle: &OpeningAngle, terms: usize) -> Result<BarnesSeries> {
    if !(z > 2.0) {
        return Err(Error::Domain("barnes_zeta_series requires z > 2"));
    }
    if terms == 0 {
        return Err(Error::Domain("barnes_zeta_series needs at least one term"));
    }
    let a = PI / angle.alpha;
    let mut partial = 0.0;
    for l in (1..=terms).rev() {
        partial += hurwitz_zeta(z, a * l as f64 + 1.0)?;
    }
    // Σ_{ℓ>L} (aℓ + 1)^{−p} = a^{−p} ζ_H(p; L + 1 + 1/a).
    let q = terms as f64 + 1.0 + 1.0 / a;
    let shifted = |p: f64| -> Result<f64> { Ok(pow(a, -p) * hurwitz_zeta(p, q)?) };
    let tail = shifted(z - 1.0)? / (z - 1.0) + 0.5 * shifted(z)? + z / 12.0 * shifted(z + 1.0)?;
    let bound = z * (z + 1.0) * (z + 2.0) / 720.0 * shifted(z + 3.0)?;
    Ok(BarnesSeries { value: partial + tail, partial_sum: partial, tail_estimate: tail, tail_bound: bound })
}

/// Γ(z)^{−1} ∫₀^∞ t^{z−1} f(t) dt for z > 2.
pub fn barnes_zeta_integral(z: f64, angle: &OpeningAngle, cfg: &QuadratureConfig) -> Result<Estimate> {
    if !(z > 2.0) {
        return Err(Error::Domain("barnes_zeta_integral requires z > 2"));
    }
    let a = PI / angle.alpha;
    let f = |t: f64| pow(t, z - 1.0) * bose(a * t) * bose(t);
    let head = integrate_finite(f, 0.0, 1.0, cfg)?;
    let tail = integrate_semi_infinite(f, 1.0, 0.5 * (1.0 + a), cfg)?;
    let g = gamma(z);
    Ok(Estimate::new((head.value + tail.value) / g, (head.abs_err + tail.abs_err) / g))
}

/// ζ'_{N+1}(0), splitting the Mellin integral at t = 1.
pub fn barnes_zeta_prime_zero(angle: &OpeningAngle, cfg: &QuadratureConfig) -> Result<Estimate> {
    barnes_zeta_prime_zero_split(angle, 1.0, cfg)
}

/// ζ'_{N+1}(0) with the Mellin integral split at t = `split`:
/// ∫_split^∞ f/t + ∫₀^split (f − Laurent)/t − b₋₂/(2 split²) − b₋₁/split + b₀(γ_e + log split).
pub fn barnes_zeta_prime_zero_split(angle: &OpeningAngle, split: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    if !(split > 0.0) {
        return Err(Error::Domain("split point must be positive"));
    }
    let a = PI / angle.alpha;
    let b = barnes_coefficients(angle);
    let tail = integrate_semi_infinite(|t| product_over_t(a, t), split, 1.0 + a, cfg)?;
    let head = integrate_finite(|t| regularized_product(a, t), 0.0, split, cfg)?;
    let elementary = -b.b_minus2 / (2.0 * split * split) - b.b_minus1 / split + b.b_0 * (EULER_GAMMA + log(split));
    let value = tail.value + head.value + elementary;
    Ok(Estimate::new(value, tail.abs_err + head.abs_err + 8.0 * f64::EPSILON * fabs(elementary)))
}

// ---------------------------------------------------------------------------
// Determinant
// ---------------------------------------------------------------------------

/// ζ_N(−1/2) = (π/α) ζ_R(−1) = −π/(12α) for the base zeta ζ_N(s) = Σ_ℓ (ℓπ/α)^{−2s}.
pub fn base_zeta_at_minus_half(angle: &OpeningAngle) -> f64 {
    -PI / (12.0 * angle.alpha)
}

/// Res_{s=1/2} ζ_N(s) = α/(2π).
pub fn base_zeta_residue_at_half(angle: &OpeningAngle) -> f64 {
    angle.alpha / (2.0 * PI)
}

/// D₁(t) = t/8 − 5t³/24, the first Debye polynomial combination entering the determinant.
pub fn d1_polynomial(t: f64) -> f64 {
    t / 8.0 - 5.0 * t * t * t / 24.0
}

/// ∫₀¹ (D₁(t) − t D₁(1)) / (t (1 − t²)) dt, evaluated numerically (exact value 5/24).
pub fn d1_integral(cfg: &QuadratureConfig) -> Result<Quadrature> {
    let d1_one = d1_polynomial(1.0);
    integrate_finite(|t| (d1_polynomial(t) - t * d1_one) / (t * (1.0 - t * t)), 0.0, 1.0, cfg)
}

/// −log det Δ_{S_α} = ζ'_{N+1}(0) + log 2 (ζ_N(−1/2) + 2 Res ζ_N(1/2) D₁(1)) + 2 Res ζ_N(1/2) · 5/24.
pub fn det_log_sector(angle: &OpeningAngle, cfg: &QuadratureConfig) -> Result<Estimate> {
    let barnes = barnes_zeta_prime_zero(angle, cfg)?;
    let res = base_zeta_residue_at_half(angle);
    let debye = LN_2 * (base_zeta_at_minus_half(angle) + 2.0 * res * d1_polynomial(1.0)) + 2.0 * res * (5.0 / 24.0);
    Ok(Estimate::new(barnes.value + debye, barnes.abs_err + 8.0 * f64::EPSILON))
}

// ---------------------------------------------------------------------------
// Index sets
// ---------------------------------------------------------------------------

fn is_integer(x: f64) -> bool {
    fabs(x - round(x)) < 1e-9 * x.abs().max(1.0)
}

/// W_α = {⌈−π/(2α)⌉, …, ⌈π/(2α) − 1⌉} \ {0} for α ∈ (0, π).
pub fn w_alpha_set(angle: &OpeningAngle) -> Result<Vec<i64>> {
    let alpha = angle.alpha;
    if alpha >= PI {
        return Err(Error::Domain("W_alpha is defined for alpha in (0, pi)"));
    }
    let h = PI / (2.0 * alpha);
    let (kmin, kmax) = (ceil(-h) as i64, ceil(h - 1.0) as i64);
    Ok((kmin..=kmax).filter(|&k| k != 0).collect())
}

/// W_α from its defining description: integers in [⌈−π/(2α)⌉, k_max] that are
/// not of the form ℓπ/α, with k_max = ⌊π/(2α)⌋, or π/(2α) − 1 when π/(2α) is an integer.
pub fn w_alpha_set_from_definition(angle: &OpeningAngle) -> Result<Vec<i64>> {
    let alpha = angle.alpha;
    if alpha >= PI {
        return Err(Error::Domain("W_alpha is defined for alpha in (0, pi)"));
    }
    let h = PI / (2.0 * alpha);
    let kmin = ceil(-h) as i64;
    let kmax = if is_integer(h) { round(h) as i64 - 1 } else { floor(h) as i64 };
    Ok((kmin..=kmax).filter(|&k| !is_integer(k as f64 * alpha / PI)).collect())
}

// ---------------------------------------------------------------------------
// Derivative formulas
// ---------------------------------------------------------------------------

/// One summand (−2γ_e + log 2 − log(1 − cos 2kα)) / (4π(1 − cos 2kα)).
pub fn ald_row_summand(k: i64, alpha: f64) -> f64 {
    let one_minus_cos = 1.0 - cos(2.0 * k as f64 * alpha);
    (-2.0 * EULER_GAMMA + LN_2 - log(one_minus_cos)) / (4.0 * PI * one_minus_cos)
}

/// The same summand rewritten with 1 − cos 2kα = 2 sin² kα.
pub fn ald_row_summand_simplified(k: i64, alpha: f64) -> f64 {
    let s = sin(k as f64 * alpha);
    -(EULER_GAMMA + log(fabs(s))) / (4.0 * PI * s * s)
}

fn integral_form(alpha: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    let tail = integrate_semi_infinite(|t| derivative_integrand(PI, alpha, t), 1.0, 1.0 + PI / alpha, cfg)?;
    let head = integrate_finite(|t| regularized_derivative(PI, alpha, t), 0.0, 1.0, cfg)?;
    let elementary = 5.0 / (24.0 * PI) + (EULER_GAMMA - LN_2) / 12.0 * (1.0 / PI - PI / (alpha * alpha));
    Ok(Estimate::new(elementary + tail.value + head.value, tail.abs_err + head.abs_err))
}

/// The closed generic formula evaluated without any domain or proximity
/// checks: 1/(3π) + π/(12α²) − Σ_{k=1}^{⌈π/(2α)−1⌉} (γ_e + log|sin kα|)/(2π sin² kα)
/// + (1/α) sin(π²/α) ∫_ℝ (−log 2 + 2γ_e + log(1+cosh s)) / (8π(1+cosh s)(cosh(πs/α) − cos(π²/α))) ds.
///
/// Intended for studying the removable singularities at α = π/j; use
/// [`ddalpha_sector`] for guarded evaluation.
pub fn closed_generic_unchecked(alpha: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    let kmax = ceil(PI / (2.0 * alpha) - 1.0) as i64;
    let mut sum = 0.0;
    for k in 1..=kmax {
        let s = sin(k as f64 * alpha);
        sum += (EULER_GAMMA + log(fabs(s))) / (2.0 * PI * s * s);
    }
    let c = PI * PI / alpha;
    let kernel = cosh_kernel_integral(PI / alpha, c, generic_weight, cfg)?;
    let pref = sin(c) / (alpha * 8.0 * PI);
    let value = 1.0 / (3.0 * PI) + PI / (12.0 * alpha * alpha) - sum + pref * kernel.value;
    Ok(Estimate::new(value, fabs(pref) * kernel.abs_err + 16.0 * f64::EPSILON * (fabs(sum) + 1.0)))
}

fn ald_row_raw(alpha: f64, angle: &OpeningAngle, cfg: &QuadratureConfig) -> Result<Estimate> {
    let mut sum = 0.0;
    for k in w_alpha_set_from_definition(angle)? {
        sum += ald_row_summand(k, alpha);
    }
    let c = PI * PI / alpha;
    let kernel = cosh_kernel_integral(PI / alpha, c, generic_weight, cfg)?;
    let pref = 2.0 / alpha * sin(c) / (16.0 * PI);
    let value = 1.0 / (3.0 * PI) + PI / (12.0 * alpha * alpha) + sum + pref * kernel.value;
    Ok(Estimate::new(value, fabs(pref) * kernel.abs_err + 16.0 * f64::EPSILON * (fabs(sum) + 1.0)))
}

/// Closed form at α = π/j:
/// 1/(3π) + π/(12α²) − (γ_e/12π)(π²/α² − 1) − Σ_{k=1}^{⌈j/2−1⌉} log|sin kα| / (2π sin² kα).
pub fn closed_rational(j: u32) -> f64 {
    let alpha = PI / f64::from(j);
    let jf = f64::from(j);
    let kmax = ceil(0.5 * jf - 1.0) as i64;
    let mut sum = 0.0;
    for k in 1..=kmax {
        let s = sin(k as f64 * alpha);
        sum += log(fabs(s)) / (2.0 * PI * s * s);
    }
    1.0 / (3.0 * PI) + PI / (12.0 * alpha * alpha) - EULER_GAMMA / (12.0 * PI) * (jf * jf - 1.0) - sum
}

/// Digamma form at α = π/j:
/// 1/(3π) + j²/(12π) + (j²−1)/(12π) log(2j) + (1/(2πj)) Σ_{p=1}^{j−1} p(j−p) ψ(p/j).
pub fn digamma_rational(j: u32) -> Result<f64> {
    if j < 2 {
        return Err(Error::Domain("digamma_rational requires j >= 2"));
    }
    let jf = f64::from(j);
    let mut sum = 0.0;
    for p in 1..j {
        let pf = f64::from(p);
        sum += pf * (jf - pf) * digamma(pf / jf)?;
    }
    Ok(1.0 / (3.0 * PI) + jf * jf / (12.0 * PI) + (jf * jf - 1.0) / (12.0 * PI) * log(2.0 * jf) + sum / (2.0 * PI * jf))
}

/// Guard shared by the two formulas that contain the sin(π²/α)·integral product.
fn require_generic(angle: &OpeningAngle, method: DerivativeMethod) -> Result<()> {
    if angle.alpha >= PI {
        return Err(Error::MethodMismatch { method, reason: "closed forms are proven only for alpha in (0, pi)" });
    }
    if angle.pi_over_j().is_some() {
        return Err(Error::MethodMismatch { method, reason: "alpha is pi/j; use ClosedRational or DigammaRational" });
    }
    if let Some(j) = nearest_fraction(angle.alpha, PI, RATIONAL_BUFFER) {
        return Err(Error::NearRational { alpha: angle.alpha, j, recommended: DerivativeMethod::IntegralForm });
    }
    Ok(())
}

fn require_rational(angle: &OpeningAngle, method: DerivativeMethod) -> Result<u32> {
    angle.pi_over_j().ok_or(Error::MethodMismatch { method, reason: "alpha is not pi/j for an integer j >= 2" })
}

/// d/dα(−log det Δ_{S_α}) by the chosen formula.
pub fn ddalpha_sector(angle: &OpeningAngle, method: DerivativeMethod, cfg: &QuadratureConfig) -> Result<Estimate> {
    match method {
        DerivativeMethod::IntegralForm => integral_form(angle.alpha, cfg),
        DerivativeMethod::ClosedGeneric => {
            require_generic(angle, method)?;
            closed_generic_unchecked(angle.alpha, cfg)
        }
        DerivativeMethod::AldRowRaw => {
            require_generic(angle, method)?;
            ald_row_raw(angle.alpha, angle, cfg)
        }
        DerivativeMethod::ClosedRational => Ok(Estimate::exact(closed_rational(require_rational(angle, method)?))),
        DerivativeMethod::DigammaRational => Ok(Estimate::exact(digamma_rational(require_rational(angle, method)?)?)),
    }
}

/// The formula an automatic dispatcher should use at this angle:
/// ClosedRational at π/j, IntegralForm for α ≥ π or inside the rational
/// buffer zone, ClosedGeneric otherwise.
pub fn auto_method(angle: &OpeningAngle) -> DerivativeMethod {
    if angle.pi_over_j().is_some() {
        DerivativeMethod::ClosedRational
    } else if angle.alpha >= PI || nearest_fraction(angle.alpha, PI, RATIONAL_BUFFER).is_some() {
        DerivativeMethod::IntegralForm
    } else {
        DerivativeMethod::ClosedGeneric
    }
}

// ---------------------------------------------------------------------------
// Identities behind the simplification of the closed forms
// ---------------------------------------------------------------------------

fn require_lemma_domain(angle: &OpeningAngle) -> Result<()> {
    if angle.alpha >= PI || angle.pi_over_j().is_some() {
        return Err(Error::Domain("identity requires alpha in (0, pi), not pi/j"));
    }
    Ok(())
}

/// Both sides of the residue identity
/// (1/(4πα)) sin(π²/α) ∫_ℝ ds / ((1+cosh s)(cosh(πs/α) − cos(π²/α)))
///   = (1/12)(1/π − π/α²) + (1/(2π)) Σ_{n=⌈−π/(2α)⌉, n≠0}^{⌊π/(2α)⌋} 1/(1 − cos 2αn).
pub fn residue_lemma_sides(angle: &OpeningAngle, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    require_lemma_domain(angle)?;
    let alpha = angle.alpha;
    let c = PI * PI / alpha;
    let kernel = cosh_kernel_integral(PI / alpha, c, |_| 1.0, cfg)?;
    let lhs = sin(c) / (4.0 * PI * alpha) * kernel.value;
    let h = PI / (2.0 * alpha);
    let mut sum = 0.0;
    for n in (ceil(-h) as i64)..=(floor(h) as i64) {
        if n != 0 {
            sum += 1.0 / (1.0 - cos(2.0 * alpha * n as f64));
        }
    }
    let rhs = (1.0 / PI - PI / (alpha * alpha)) / 12.0 + sum / (2.0 * PI);
    Ok((lhs, rhs))
}

/// Both sides of the logarithmic identity
/// (1/(8πα)) sin(π²/α) ∫_ℝ log(1+cosh s) / ((1+cosh s)(cosh(πs/α) − cos(π²/α))) ds
///   = (1/(2π)) Σ_{n=1}^{⌊π/(2α)⌋} log(1 − cos 2nα)/(1 − cos 2nα)
///     + (π/α²)(∫₁^∞ g + ∫₀¹ (g − singular part))
///     − (1/(4πα))(α/2 + π²/(3α) + log 2 (α² − π²)/(6α)),
/// with g(t) = e^{πt/α} / ((e^t − 1)(1 − e^{πt/α})²).
pub fn log_lemma_sides(angle: &OpeningAngle, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    require_lemma_domain(angle)?;
    let alpha = angle.alpha;
    let a = PI / alpha;
    let c = PI * PI / alpha;
    let kernel = cosh_kernel_integral(a, c, log_one_plus_cosh, cfg)?;
    let lhs = sin(c) / (8.0 * PI * alpha) * kernel.value;

    let mut sum = 0.0;
    for n in 1..=(floor(PI / (2.0 * alpha)) as i64) {
        let omc = 1.0 - cos(2.0 * n as f64 * alpha);
        sum += log(omc) / omc;
    }
    let g = |t: f64| bose_sq(a * t) * bose(t);
    // g minus α²/(π²t³) − α²/(2π²t²) + (α²−π²)/(12π²t) equals (α²/π)·regularized_derivative.
    let g_reg = |t: f64| alpha * alpha / PI * regularized_derivative(PI, alpha, t);
    let tail = integrate_semi_infinite(g, 1.0, 1.0 + a, cfg)?;
    let head = integrate_finite(g_reg, 0.0, 1.0, cfg)?;
    let elementary = (alpha / 2.0 + PI * PI / (3.0 * alpha) + LN_2 * (alpha * alpha - PI * PI) / (6.0 * alpha)) / (4.0 * PI * alpha);
    let rhs = sum / (2.0 * PI) + PI / (alpha * alpha) * (tail.value + head.value) - elementary;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn angle(a: f64) -> OpeningAngle {
        OpeningAngle::new(a).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(angle(PI / 3.0).classification(), AngleClass::PiOverJ(3));
        assert_eq!(angle(PI).classification(), AngleClass::TwoPiOverJ(2));
        assert_eq!(angle(2.0 * PI / 3.0).classification(), AngleClass::TwoPiOverJ(3));
        assert_eq!(angle(1.0).classification(), AngleClass::Generic);
        assert_eq!(angle(PI / 2.0 + 1e-9).classification(), AngleClass::PiOverJ(2));
        assert_eq!(angle(PI / 2.0 + 1e-6).classification(), AngleClass::Generic);
        assert_eq!(angle(PI / 2.0).two_pi_over_j(), Some(4));
        assert!(OpeningAngle::new(0.0).is_err());
        assert!(OpeningAngle::new(TWO_PI).is_err());
        assert!(OpeningAngle::new(f64::NAN).is_err());
        assert_eq!(angle(3.0).halved().alpha(), 1.5);
    }

    #[test]
    fn barnes_coefficient_examples() {
        let b = barnes_coefficients(&angle(PI));
        assert!((b.b_minus2 - 1.0).abs() < 1e-15);
        assert!((b.b_minus1 + 1.0).abs() < 1e-15);
        assert!((b.b_0 - 5.0 / 12.0).abs() < 1e-15);
        let b = barnes_coefficients(&angle(PI / 2.0));
        assert!((b.b_minus2 - 0.5).abs() < 1e-15);
        assert!((b.b_minus1 + 0.75).abs() < 1e-15);
        assert!((b.b_0 - 11.0 / 24.0).abs() < 1e-15);
    }

    #[test]
    fn regularized_product_matches_direct_subtraction() {
        for &alpha in &[0.3, 1.0, 2.5, 5.9] {
            let a = PI / alpha;
            let b = barnes_coefficients(&angle(alpha));
            for &t in &[0.9, 0.5, 0.2] {
                let direct = (bose(a * t) * bose(t) - b.b_minus2 / (t * t) - b.b_minus1 / t - b.b_0) / t;
                assert!((regularized_product(a, t) - direct).abs() < 1e-11, "alpha {alpha} t {t}");
            }
            // Bounded with the right limit as t -> 0.
            let lim = regularized_product(a, 0.0);
            assert!((regularized_product(a, 1e-6) - lim).abs() < 1e-5 * (1.0 + a * a));
        }
    }

    #[test]
    fn regularized_derivative_matches_direct_subtraction() {
        for &alpha in &[0.3, 1.0, 2.5] {
            for &t in &[0.9, 0.5, 0.3] {
                let sing = (1.0 / (PI * t * t) - 1.0 / (2.0 * PI * t) + 1.0 / (12.0 * PI) - PI / (12.0 * alpha * alpha)) / t;
                let direct = derivative_integrand(PI, alpha, t) - sing;
                assert!((regularized_derivative(PI, alpha, t) - direct).abs() < 1e-11, "alpha {alpha} t {t}");
            }
            let lim = regularized_derivative(PI, alpha, 0.0);
            assert!((regularized_derivative(PI, alpha, 1e-6) - lim).abs() < 1e-4);
        }
    }

    #[test]
    fn debye_components() {
        let a = angle(0.8);
        assert!((base_zeta_at_minus_half(&a) + PI / (12.0 * 0.8)).abs() < 1e-15);
        assert!((d1_polynomial(1.0) + 1.0 / 12.0).abs() < 1e-16);
        let q = d1_integral(&cfg()).unwrap();
        assert!((q.value - 5.0 / 24.0).abs() < 1e-14);
    }

    #[test]
    fn det_matches_explicit_constant_form() {
        for &alpha in &[0.4, 1.0, PI / 2.0, 3.5, 6.0] {
            let ang = angle(alpha);
            let a = PI / alpha;
            let c = cfg();
            let tail = integrate_semi_infinite(|t| product_over_t(a, t), 1.0, 1.0 + a, &c).unwrap().value;
            let head = integrate_finite(|t| regularized_product(a, t), 0.0, 1.0, &c).unwrap().value;
            let explicit = 0.25 * (EULER_GAMMA + 2.0)
                + 5.0 * alpha / (24.0 * PI)
                + (EULER_GAMMA - LN_2) / 12.0 * (PI / alpha + alpha / PI)
                + tail
                + head;
            let det = det_log_sector(&ang, &c).unwrap().value;
            assert!((det - explicit).abs() < 1e-13, "alpha {alpha}");
        }
    }

    #[test]
    fn barnes_split_point_independence() {
        for &alpha in &[0.5, 1.0, 2.0, 4.0] {
            let ang = angle(alpha);
            let one = barnes_zeta_prime_zero(&ang, &cfg()).unwrap().value;
            let half = barnes_zeta_prime_zero_split(&ang, 0.5, &cfg()).unwrap().value;
            assert!((one - half).abs() < 1e-11, "alpha {alpha}");
        }
    }

    #[test]
    fn barnes_series_collapses_at_pi() {
        let s = barnes_zeta_series(4.0, &angle(PI), 2000).unwrap();
        let z3 = crate::special_functions::riemann_zeta(3.0).unwrap();
        let z4 = crate::special_functions::riemann_zeta(4.0).unwrap();
        assert!((s.value - (z3 - z4)).abs() < 1e-10);
        assert!(s.tail_bound < 1e-10);
        let s5 = barnes_zeta_series(5.0, &angle(PI), 2000).unwrap();
        assert!(s5.value < s.value);
        assert!(barnes_zeta_series(2.0, &angle(1.0), 10).is_err());
    }

    #[test]
    fn w_alpha_examples() {
        assert_eq!(w_alpha_set(&angle(PI / 3.0)).unwrap(), alloc::vec![-1, 1]);
        assert_eq!(w_alpha_set(&angle(PI / 4.0)).unwrap(), alloc::vec![-2, -1, 1]);
        assert_eq!(w_alpha_set(&angle(1.0)).unwrap(), alloc::vec![-1, 1]);
        assert!(w_alpha_set(&angle(PI)).is_err());
        assert!(w_alpha_set(&angle(2.0)).unwrap().is_empty());
    }

    #[test]
    fn simplified_summand_is_identical() {
        for k in [-3_i64, -1, 1, 2, 5] {
            for &alpha in &[0.2, 0.7, 1.1] {
                let raw = ald_row_summand(k, alpha);
                let simple = ald_row_summand_simplified(k, alpha);
                assert!((raw - simple).abs() < 1e-13 * raw.abs().max(1.0));
            }
        }
    }

    #[test]
    fn half_pi_anchor() {
        let anchor = 2.0 / (3.0 * PI) - EULER_GAMMA / (4.0 * PI);
        let a = angle(PI / 2.0);
        for m in [DerivativeMethod::ClosedRational, DerivativeMethod::DigammaRational, DerivativeMethod::IntegralForm] {
            let v = ddalpha_sector(&a, m, &cfg()).unwrap().value;
            assert!((v - anchor).abs() < 1e-12, "{m:?}");
        }
    }

    #[test]
    fn integral_and_closed_agree_at_one() {
        let a = angle(1.0);
        let i = ddalpha_sector(&a, DerivativeMethod::IntegralForm, &cfg()).unwrap().value;
        let g = ddalpha_sector(&a, DerivativeMethod::ClosedGeneric, &cfg()).unwrap().value;
        let r = ddalpha_sector(&a, DerivativeMethod::AldRowRaw, &cfg()).unwrap().value;
        // Reference from a 30-digit evaluation of the closed generic formula.
        assert!((i - 0.270_558_731_336_367_7).abs() < 1e-12);
        assert!((i - g).abs() < 1e-9);
        assert!((i - r).abs() < 1e-9);
    }

    #[test]
    fn dispatch_guards() {
        let c = cfg();
        assert!(matches!(
            ddalpha_sector(&angle(PI / 3.0), DerivativeMethod::ClosedGeneric, &c),
            Err(Error::MethodMismatch { .. })
        ));
        assert!(matches!(
            ddalpha_sector(&angle(PI / 3.0 + 1e-6), DerivativeMethod::ClosedGeneric, &c),
            Err(Error::NearRational { j: 3, recommended: DerivativeMethod::IntegralForm, .. })
        ));
        assert!(matches!(ddalpha_sector(&angle(1.0), DerivativeMethod::ClosedRational, &c), Err(Error::MethodMismatch { .. })));
        assert!(matches!(ddalpha_sector(&angle(4.0), DerivativeMethod::AldRowRaw, &c), Err(Error::MethodMismatch { .. })));
        assert!(ddalpha_sector(&angle(4.0), DerivativeMethod::IntegralForm, &c).is_ok());
        assert_eq!(auto_method(&angle(PI / 5.0)), DerivativeMethod::ClosedRational);
        assert_eq!(auto_method(&angle(PI / 5.0 + 1e-6)), DerivativeMethod::IntegralForm);
        assert_eq!(auto_method(&angle(1.0)), DerivativeMethod::ClosedGeneric);
        assert_eq!(auto_method(&angle(4.0)), DerivativeMethod::IntegralForm);
    }

    #[test]
    fn residue_lemma_at_one() {
        let (lhs, rhs) = residue_lemma_sides(&angle(1.0), &cfg()).unwrap();
        let expected = (1.0 / PI - PI) / 12.0 + 1.0 / (PI * (1.0 - 2.0_f64.cos()));
        assert!((rhs - expected).abs() < 1e-15);
        assert!((rhs + 0.0105).abs() < 1e-4);
        assert!((lhs - rhs).abs() < 1e-8);
    }

    #[test]
    fn kernel_half_line_doubling() {
        let alpha = 0.7;
        let (b, c) = (PI / alpha, PI * PI / alpha);
        let one = |_: f64| 1.0;
        let half = cosh_kernel_half_line(b, c, &one, &cfg()).unwrap().value;
        let reflected = |s: f64| cosh_kernel_integrand(b, c, &one, -s);
        let neg = integrate_semi_infinite(reflected, 0.0, 1.0 + b, &cfg()).unwrap().value;
        let full = neg + half;
        let doubled = cosh_kernel_integral(b, c, one, &cfg()).unwrap().value;
        assert!((full - doubled).abs() < 1e-12);
    }

    #[test]
    fn log_lemma_rhs_integrand_is_bounded() {
        for &alpha in &[0.7, 1.0, 1.3] {
            for i in 1..=1000 {
                let t = i as f64 * 1e-3;
                let v = alpha * alpha / PI * regularized_derivative(PI, alpha, t);
                assert!(v.is_finite() && v.abs() < 10.0);
            }
        }
    }
}
