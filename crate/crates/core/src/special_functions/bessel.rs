//! Bessel functions J_ν (real order), I₀, I₁ and the zeros j_{ν,n}.
//!
//! J_ν and J_ν' come from the Steed–Temme scheme: a continued fraction for
//! J_ν'/J_ν, downward recurrence to an order |μ| ≤ 1/2, then Temme's series
//! (x < 2) or Steed's complex continued fraction (x ≥ 2) to fix the
//! normalisation through the Wronskian.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{cosh, exp, fabs, log, sin, sinh, sqrt};
#[cfg(test)]
use libm::cos;

use crate::{Error, Result};

const MAX_ORDER: f64 = 300.0;

/// Chebyshev coefficients of 1/Γ(1±μ) combinations on |μ| ≤ 1/2.
const GAM1_C: [f64; 7] = [
    -1.142022680371168e0,
    6.5165112670737e-3,
    3.087090173086e-4,
    -3.4706269649e-6,
    6.9437664e-9,
    3.67795e-11,
    -1.356e-13,
];
const GAM2_C: [f64; 8] = [
    1.843740587300905e0,
    -7.68528408447867e-2,
    1.2719271366546e-3,
    -4.9717367042e-6,
    -3.31261198e-8,
    2.423096e-10,
    -1.702e-13,
    -1.49e-15,
];

fn chebev(c: &[f64], x: f64) -> f64 {
    let (mut d, mut dd) = (0.0, 0.0);
    let y2 = 2.0 * x;
    for &cj in c.iter().skip(1).rev() {
        let sv = d;
        d = y2 * d - dd + cj;
        dd = sv;
    }
    x * d - dd + 0.5 * c[0]
}

/// (gam1, gam2) with gam1 = (1/Γ(1−μ) − 1/Γ(1+μ))/(2μ), gam2 = (1/Γ(1−μ) + 1/Γ(1+μ))/2.
fn temme_gammas(mu: f64) -> (f64, f64) {
    let xx = 8.0 * mu * mu - 1.0;
    (chebev(&GAM1_C, xx), chebev(&GAM2_C, xx))
}

fn check_j_range(nu: f64, x: f64) -> Result<()> {
    if !(nu >= 0.0) || !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain("bessel_j requires nu >= 0 and x > 0"));
    }
    if nu > MAX_ORDER || x > 10.0 * (nu + 50.0) {
        return Err(Error::Range("bessel_j supports nu <= 300 and x <= 10 (nu + 50)"));
    }
    Ok(())
}

/// (J_ν(x), J_ν'(x)).
pub fn bessel_j_with_derivative(nu: f64, x: f64) -> Result<(f64, f64)> {
    check_j_range(nu, x)?;
    const EPS: f64 = f64::EPSILON;
    const FPMIN: f64 = f64::MIN_POSITIVE / f64::EPSILON;
    const MAXIT: usize = 100_000;
    const RESCALE: f64 = 1e250;

    let nl = if x < 2.0 { (nu + 0.5) as usize } else { (nu - x + 1.5).max(0.0) as usize };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // Continued fraction for J_ν'/J_ν (modified Lentz).
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if fabs(d) < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if fabs(c) < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if fabs(del - 1.0) <= EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence { achieved: f64::NAN, requested: EPS });
    }

    // Downward recurrence from ν to μ with arbitrary normalisation.
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let mut rjl1 = rjl;
    let mut rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if fabs(rjl) > RESCALE {
            rjl /= RESCALE;
            rjpl /= RESCALE;
            rjl1 /= RESCALE;
            rjp1 /= RESCALE;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let rjmu = if x < 2.0 {
        // Temme's series for Y_μ, Y_{μ+1}.
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if fabs(pimu) < EPS { 1.0 } else { pimu / sin(pimu) };
        let d = -log(x2);
        let e = xmu * d;
        let fact2 = if fabs(e) < EPS { 1.0 } else { sinh(e) / e };
        let (gam1, gam2) = temme_gammas(xmu);
        let gampl = gam2 - xmu * gam1;
        let gammi = gam2 + xmu * gam1;
        let mut ff = 2.0 / PI * fact * (gam1 * cosh(e) + gam2 * fact2 * d);
        let e = exp(e);
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if fabs(pimu2) < EPS { 1.0 } else { sin(pimu2) / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut converged = false;
        for i in 1..=MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if fabs(del) < (1.0 + fabs(sum)) * EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence { achieved: f64::NAN, requested: EPS });
        }
        let rymu = -sum;
        let ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        w / (rymup - f * rymu)
    } else {
        // Steed's continued fraction for p + iq = (J_μ' + iY_μ')/(J_μ + iY_μ).
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut converged = false;
        for i in 1..MAXIT {
            a += 2.0 * i as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if fabs(dr) + fabs(di) < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if fabs(cr) + fabs(ci) < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if fabs(dlr - 1.0) + fabs(dli) <= EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence { achieved: f64::NAN, requested: EPS });
        }
        let gam = (p - f) / q;
        let rjmu = sqrt(w / ((p - f) * gam + q));
        if rjl < 0.0 {
            -rjmu
        } else {
            rjmu
        }
    };
    let scale = rjmu / rjl;
    Ok((rjl1 * scale, rjp1 * scale))
}

/// Bessel function of the first kind J_ν(x) for real ν ≥ 0.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    bessel_j_with_derivative(nu, x).map(|(j, _)| j)
}

/// McMahon's large-zero expansion of j_{ν,n}.
fn mcmahon(nu: f64, n: usize) -> f64 {
    let beta = (n as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let e = 8.0 * beta;
    beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e)
}

/// Root of J_ν in [lo, hi] (sign change assumed) by Newton steps safeguarded with bisection.
fn refine_zero(nu: f64, lo: f64, hi: f64, guess: f64) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let flo = bessel_j(nu, lo)?;
    let mut x = if guess > lo && guess < hi { guess } else { 0.5 * (lo + hi) };
    for _ in 0..200 {
        let (j, jp) = bessel_j_with_derivative(nu, x)?;
        if j == 0.0 {
            return Ok(x);
        }
        if (j > 0.0) == (flo > 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - j / jp;
        let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if fabs(next - x) <= 4.0 * f64::EPSILON * x || hi - lo <= 4.0 * f64::EPSILON * x {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::Convergence { achieved: hi - lo, requested: 4.0 * f64::EPSILON * x })
}

/// The first `count` positive zeros of J_ν, in increasing order.
///
/// Each zero is bracketed before refinement. Consecutive spacings decrease to
/// π for ν > 1/2 and increase to π for ν < 1/2 (Sturm comparison), which
/// gives a bracket for every zero after the second; the first two are found by
/// scanning in steps of π/2, below the minimal spacing.
pub fn bessel_j_zeros(nu: f64, count: usize) -> Result<Vec<f64>> {
    if !(nu >= 0.0) || nu > MAX_ORDER {
        return Err(Error::Range("bessel_j_zero supports 0 <= nu <= 300"));
    }
    if count == 0 || count > 500 {
        return Err(Error::Range("bessel_j_zero supports 1 <= n <= 500"));
    }
    let mut zeros: Vec<f64> = Vec::with_capacity(count);
    let scan_step = 0.5 * PI;
    // J_ν > 0 on (0, ν]; start just above the origin for small orders.
    let mut x = nu.max(0.5);
    while zeros.len() < count {
        let n = zeros.len() + 1;
        let bracket = if zeros.len() >= 2 {
            let last = zeros[zeros.len() - 1];
            let gap = last - zeros[zeros.len() - 2];
            let (g1, g2) = if nu > 0.5 { (PI, gap) } else { (gap, PI) };
            let (lo, hi) = (last + 0.999 * g1.min(g2), last + 1.001 * g1.max(g2));
            let (flo, fhi) = (bessel_j(nu, lo)?, bessel_j(nu, hi)?);
            if (flo > 0.0) != (fhi > 0.0) {
                Some((lo, hi))
            } else {
                None
            }
        } else {
            None
        };
        let (lo, hi) = match bracket {
            Some(b) => b,
            None => {
                // Scan forward for a sign change.
                let mut lo = x;
                let mut flo = bessel_j(nu, lo)?;
                loop {
                    let hi = lo + scan_step;
                    let fhi = bessel_j(nu, hi)?;
                    if (flo > 0.0) != (fhi > 0.0) || fhi == 0.0 {
                        break (lo, hi);
                    }
                    lo = hi;
                    flo = fhi;
                }
            }
        };
        let z = refine_zero(nu, lo, hi, mcmahon(nu, n))?;
        x = z + 1e-9 * z.max(1.0);
        zeros.push(z);
    }
    Ok(zeros)
}

/// The n-th positive zero j_{ν,n} of J_ν (n ≥ 1).
pub fn bessel_j_zero(nu: f64, n: usize) -> Result<f64> {
    let zeros = bessel_j_zeros(nu, n)?;
    Ok(zeros[n - 1])
}

/// e^{−x} I_order(x) for order ∈ {0, 1}, x ≥ 0.
pub fn bessel_i_scaled(order: u32, x: f64) -> Result<f64> {
    if order > 1 {
        return Err(Error::Domain("bessel_i supports orders 0 and 1"));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain("bessel_i requires finite x >= 0"));
    }
    if x <= 25.0 {
        return Ok(bessel_i_series(order, x) * exp(-x));
    }
    // Hankel expansion: e^{-x} I_ν(x) ≈ (2πx)^{-1/2} Σ (−1)^k a_k(ν) / x^k.
    let mu = 4.0 * f64::from(order * order);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = -term * (mu - odd * odd) / (kf * 8.0 * x);
        if fabs(next) > fabs(term) {
            break;
        }
        term = next;
        sum += term;
        if fabs(term) < 1e-17 * fabs(sum) {
            break;
        }
    }
    Ok(sum / sqrt(2.0 * PI * x))
}

fn bessel_i_series(order: u32, x: f64) -> f64 {
    let y = 0.25 * x * x;
    let mut term = if order == 0 { 1.0 } else { 0.5 * x };
    let mut sum = term;
    let nu = f64::from(order);
    for k in 1..200 {
        let kf = k as f64;
        term *= y / (kf * (kf + nu));
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

/// Modified Bessel function I₀ or I₁ for 0 ≤ x ≤ 700.
pub fn bessel_i(order: u32, x: f64) -> Result<f64> {
    if x > 700.0 {
        return Err(Error::Overflow);
    }
    if x <= 25.0 && x >= 0.0 && order <= 1 {
        return Ok(bessel_i_series(order, x));
    }
    Ok(bessel_i_scaled(order, x)? * exp(x))
}

#[cfg(test)]
fn bessel_j_half(x: f64) -> f64 {
    sqrt(2.0 / (PI * x)) * sin(x)
}

#[cfg(test)]
fn bessel_j_neg_half(x: f64) -> f64 {
    sqrt(2.0 / (PI * x)) * cos(x)
}
