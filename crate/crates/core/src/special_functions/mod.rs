//! Special functions and adaptive quadrature used by every other module.
//!
//! | Function | Description |
//! |----------|-------------|
//! | [`euler_gamma`] | Euler–Mascheroni constant γ_e |
//! | [`digamma`] | ψ(x) = d/dx ln Γ(x) |
//! | [`gauss_digamma_rational`] | ψ(p/j) by Gauss' finite trigonometric sum |
//! | [`hurwitz_zeta`] | ζ_H(s; q) = Σ_{k≥0} (k+q)^{−s}, analytically continued |
//! | [`bessel_j`] | J_ν(x) for real ν ≥ 0 |
//! | [`bessel_j_zero`] | n-th positive zero of J_ν |
//! | [`bessel_i`] | I₀, I₁ |
//! | [`integrate_finite`], [`integrate_semi_infinite`] | adaptive Gauss–Kronrod |
//!
//! The `bose*` helpers split 1/(eˣ−1) into its Laurent part and an analytic
//! remainder so that regularized integrands can be evaluated without
//! cancellation near x = 0.

use libm::{cos, exp, expm1, fabs, log, pow, sin, tan};

use crate::{Error, Result};

mod bessel;
mod quadrature;

pub use bessel::{bessel_i, bessel_i_scaled, bessel_j, bessel_j_with_derivative, bessel_j_zero, bessel_j_zeros};
pub use quadrature::{integrate_finite, integrate_semi_infinite, Quadrature, QuadratureConfig};

use core::f64::consts::PI;

/// γ_e to binary64 precision.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// B_{2k}/(2k)! for k = 1..=20.
pub(crate) const BERNOULLI_OVER_FACTORIAL: [f64; 20] = [
    8.3333333333333333e-2,
    -1.3888888888888889e-3,
    3.3068783068783069e-5,
    -8.2671957671957672e-7,
    2.0876756987868099e-8,
    -5.2841901386874932e-10,
    1.3382536530684679e-11,
    -3.3896802963225829e-13,
    8.5860620562778446e-15,
    -2.1748686985580619e-16,
    5.5090028283602295e-18,
    -1.3954464685812523e-19,
    3.5347070396294675e-21,
    -8.9535174270375469e-23,
    2.2679524523376831e-24,
    -5.7447906688722024e-26,
    1.4551724756148649e-27,
    -3.6859949406653102e-29,
    9.3367342570950447e-31,
    -2.3650224157006299e-32,
];

/// Euler–Mascheroni constant.
pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

/// Digamma function ψ(x) for x > 0.
///
/// Lifts x above 8 with ψ(x) = ψ(x+1) − 1/x, then sums eight terms of the
/// asymptotic series.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain("digamma requires finite x > 0"));
    }
    // Bernoulli numbers B_2 .. B_16.
    const B: [f64; 8] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
    ];
    let mut x = x;
    let mut shift = 0.0;
    while x < 8.0 {
        shift += 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut pow2 = inv2;
    let mut series = 0.0;
    for (k, b) in B.iter().enumerate() {
        series += b / (2.0 * (k as f64 + 1.0)) * pow2;
        pow2 *= inv2;
    }
    Ok(log(x) - 0.5 / x - series - shift)
}

/// ψ(p/j) from Gauss' digamma theorem:
/// −γ_e − log(2j) − (π/2)cot(pπ/j) + 2 Σ_{k=1}^{⌊(j+1)/2⌋−1} cos(2kpπ/j) log sin(kπ/j).
pub fn gauss_digamma_rational(p: u32, j: u32) -> Result<f64> {
    if j < 2 || p == 0 || p >= j {
        return Err(Error::Domain("gauss_digamma_rational requires 1 <= p <= j-1, j >= 2"));
    }
    let (pf, jf) = (f64::from(p), f64::from(j));
    let mut sum = 0.0;
    for k in 1..(j + 1) / 2 {
        let kf = f64::from(k);
        sum += cos(2.0 * kf * pf * PI / jf) * log(sin(kf * PI / jf));
    }
    Ok(-EULER_GAMMA - log(2.0 * jf) - 0.5 * PI / tan(pf * PI / jf) + 2.0 * sum)
}

/// Hurwitz zeta ζ_H(s; q) for q > 0 and s ≠ 1, by Euler–Maclaurin summation.
///
/// Valid for every real s (including the analytically continued region s < 1).
pub fn hurwitz_zeta(s: f64, q: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::Pole);
    }
    if !(q > 0.0) || !q.is_finite() || !s.is_finite() {
        return Err(Error::Domain("hurwitz_zeta requires finite s and q > 0"));
    }
    let n = 12 + (fabs(s) as usize).min(60);
    let mut head = 0.0;
    for k in 0..n {
        head += pow(k as f64 + q, -s);
    }
    let a = n as f64 + q;
    let mut tail = pow(a, 1.0 - s) / (s - 1.0) + 0.5 * pow(a, -s);
    // Rising factorial s(s+1)...(s+2j-2) times a^{-s-2j+1}.
    let mut rising = s;
    let mut apow = pow(a, -s - 1.0);
    let inv_a2 = 1.0 / (a * a);
    for (j, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = c * rising * apow;
        tail += term;
        if fabs(term) <= f64::EPSILON * 1e-2 * fabs(head + tail) {
            break;
        }
        let jf = j as f64 + 1.0;
        rising *= (s + 2.0 * jf - 1.0) * (s + 2.0 * jf);
        apow *= inv_a2;
        if rising == 0.0 {
            break;
        }
    }
    Ok(head + tail)
}

/// Riemann zeta ζ(s) = ζ_H(s; 1).
pub fn riemann_zeta(s: f64) -> Result<f64> {
    hurwitz_zeta(s, 1.0)
}

/// Gamma function Γ(x).
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// 1/(eˣ − 1) for x > 0.
pub fn bose(x: f64) -> f64 {
    1.0 / expm1(x)
}

/// r(x) = 1/(eˣ−1) − 1/x + 1/2, analytic at 0 with r(x) = x/12 + O(x³).
pub fn bose_remainder(x: f64) -> f64 {
    if fabs(x) <= 2.0 {
        odd_bernoulli_series(x, 0)
    } else {
        bose(x) - 1.0 / x + 0.5
    }
}

/// s(x) = r(x) − x/12 = −x³/720 + O(x⁵).
pub fn bose_remainder2(x: f64) -> f64 {
    if fabs(x) <= 2.0 {
        odd_bernoulli_series(x, 1)
    } else {
        bose(x) - 1.0 / x + 0.5 - x / 12.0
    }
}

/// w(x) = eˣ/(eˣ−1)² = −d/dx 1/(eˣ−1), for x > 0.
pub fn bose_sq(x: f64) -> f64 {
    let em = exp(-x);
    let d = -expm1(-x);
    em / (d * d)
}

/// q(x) = w(x) − 1/x² + 1/12 = x²/240 + O(x⁴).
pub fn bose_sq_remainder(x: f64) -> f64 {
    if fabs(x) <= 2.0 {
        // w = 1/x² − Σ_k c_k (2k−1) x^{2k−2}; the k = 1 term is 1/12.
        let x2 = x * x;
        let mut p = x2;
        let mut sum = 0.0;
        for (k, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate().skip(1) {
            let kf = k as f64 + 1.0;
            sum -= c * (2.0 * kf - 1.0) * p;
            p *= x2;
        }
        sum
    } else {
        bose_sq(x) - 1.0 / (x * x) + 1.0 / 12.0
    }
}

/// Σ_{k>skip} c_k x^{2k−1}.
fn odd_bernoulli_series(x: f64, skip: usize) -> f64 {
    let x2 = x * x;
    let mut p = x;
    for _ in 0..skip {
        p *= x2;
    }
    let mut sum = 0.0;
    for c in BERNOULLI_OVER_FACTORIAL.iter().skip(skip) {
        sum += c * p;
        p *= x2;
    }
    sum
}

/// Pairwise summation; deterministic and accurate to O(ε log n).
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::LN_2;

    #[test]
    fn euler_gamma_matches_digamma_one() {
        assert_eq!(euler_gamma().to_bits(), euler_gamma().to_bits());
        assert!((digamma(1.0).unwrap() + euler_gamma()).abs() < 1e-15);
        // Harmonic numbers minus log n, with the 1/(2n) − 1/(12n²) correction.
        let n = 1000.0_f64;
        let h: f64 = (1..=1000).rev().map(|k| 1.0 / k as f64).sum();
        let accelerated = h - n.ln() - 0.5 / n + 1.0 / (12.0 * n * n) - 1.0 / (120.0 * n.powi(4));
        assert!((accelerated - EULER_GAMMA).abs() < 1e-14);
    }

    #[test]
    fn digamma_special_values() {
        let g = EULER_GAMMA;
        assert!((digamma(0.5).unwrap() - (-g - 2.0 * LN_2)).abs() < 1e-14);
        let quarter = -g - 3.0 * LN_2 - PI / 2.0;
        assert!(((digamma(0.25).unwrap() - quarter) / quarter).abs() < 1e-14);
        assert!(digamma(0.0).is_err());
        assert!(digamma(-1.5).is_err());
    }

    #[test]
    fn digamma_recurrence() {
        for i in 1..=500 {
            let x = 0.1 * i as f64;
            let lhs = digamma(x + 1.0).unwrap();
            let rhs = digamma(x).unwrap() + 1.0 / x;
            assert!((lhs - rhs).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn gauss_digamma_matches_digamma() {
        let g = EULER_GAMMA;
        assert!((gauss_digamma_rational(1, 2).unwrap() - (-g - 2.0 * LN_2)).abs() < 1e-14);
        let quarter = -g - 3.0 * LN_2 - PI / 2.0;
        assert!((gauss_digamma_rational(1, 4).unwrap() - quarter).abs() < 1e-14);
        for j in 2..=12u32 {
            for p in 1..j {
                let a = gauss_digamma_rational(p, j).unwrap();
                let b = digamma(f64::from(p) / f64::from(j)).unwrap();
                assert!((a - b).abs() < 1e-12, "p = {p}, j = {j}");
            }
        }
        assert!(gauss_digamma_rational(0, 3).is_err());
        assert!(gauss_digamma_rational(3, 3).is_err());
        assert!(gauss_digamma_rational(1, 1).is_err());
    }

    #[test]
    fn hurwitz_values() {
        assert!((hurwitz_zeta(-1.0, 1.0).unwrap() + 1.0 / 12.0).abs() < 1e-14);
        for &q in &[0.1, 0.25, 0.5, 0.8, 1.0] {
            let b2 = q * q - q + 1.0 / 6.0;
            assert!((hurwitz_zeta(-1.0, q).unwrap() + b2 / 2.0).abs() < 1e-13);
            assert!((hurwitz_zeta(0.0, q).unwrap() - (0.5 - q)).abs() < 1e-13);
        }
        // ζ(3, 1/2) = 7ζ(3).
        assert!((hurwitz_zeta(3.0, 0.5).unwrap() - 8.414_398_322_117_16).abs() < 1e-13);
        assert_eq!(hurwitz_zeta(1.0, 0.5), Err(Error::Pole));
    }

    #[test]
    fn riemann_values() {
        assert!((riemann_zeta(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-13);
        assert!((riemann_zeta(3.0).unwrap() - 1.202_056_903_159_594_2).abs() < 1e-13);
        assert!((riemann_zeta(-1.0).unwrap() + 1.0 / 12.0).abs() < 1e-13);
        assert!((riemann_zeta(4.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-13);
    }

    #[test]
    fn bose_split_is_consistent() {
        for i in 1..400 {
            let x = 0.01 * i as f64;
            let direct = 1.0 / x.exp_m1();
            let split = 1.0 / x - 0.5 + bose_remainder(x);
            assert!((direct - split).abs() < 1e-13 * direct.abs().max(1.0), "x = {x}");
            assert!((bose_remainder(x) - x / 12.0 - bose_remainder2(x)).abs() < 1e-15);
            let w = x.exp() / (x.exp_m1() * x.exp_m1());
            assert!((bose_sq(x) - w).abs() < 1e-12 * w);
            let q = w - 1.0 / (x * x) + 1.0 / 12.0;
            assert!((bose_sq_remainder(x) - q).abs() < 1e-11 * w.max(1.0), "x = {x}");
        }
        assert_eq!(bose_remainder(0.0), 0.0);
        assert!((bose_remainder2(1e-3) - (-1e-9 / 720.0 + 1e-15 / 30240.0)).abs() < 1e-25);
        assert!((bose_sq_remainder(1e-3) - (1e-6 / 240.0 - 1e-12 / 6048.0)).abs() < 1e-22);
        assert_eq!(bose(800.0), 0.0);
        assert_eq!(bose_sq(800.0), 0.0);
    }

    #[test]
    fn pairwise_matches_naive() {
        let xs: std::vec::Vec<f64> = (1..=1000).map(|k| 1.0 / k as f64).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-13);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }
}
