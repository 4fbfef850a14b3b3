//! Explicit Dirichlet spectra from Bessel zeros, used to check the analytic
//! results.
//!
//! For the sector of angle α the eigenvalues are j_{ν,n}² with ν = ℓπ/α,
//! ℓ ≥ 1. For the cone of angle α they are j_{ν,n}² with ν = 2πℓ/α, ℓ ≥ 0,
//! and every ℓ ≥ 1 level is doubled.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{exp, fabs, pow, sqrt};

use crate::heat_trace::HeatExpansion;
use crate::special_functions::{bessel_j_zero, bessel_j_zeros, pairwise_sum};
use crate::{Error, OpeningAngle, Result};

/// Largest table size accepted by [`build_spectrum`].
pub const MAX_TABLE_SIZE: usize = 250_000;
/// Largest Bessel order accepted by [`build_spectrum`].
pub const MAX_ORDER: f64 = 300.0;
/// Partial traces with a larger tail bound are flagged and refused by the fit.
pub const TRUNCATION_WARNING: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Geometry {
    Sector,
    Cone,
}

/// One eigenvalue level λ² = j_{ν,n}².
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectralEntry {
    pub nu: f64,
    pub l: usize,
    pub n: usize,
    pub lambda_sq: f64,
    pub multiplicity: u32,
}

/// Angular index ℓ with its Bessel order and multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularMode {
    pub l: usize,
    pub nu: f64,
    pub multiplicity: u32,
}

/// A truncated spectrum: all ℓ ≤ L and n ≤ N.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTruncation {
    pub geometry: Geometry,
    pub alpha: f64,
    pub l_max: usize,
    pub n_max: usize,
    /// Ordered by ℓ, then n.
    pub entries: Vec<SpectralEntry>,
    /// Every eigenvalue below this value is in the table.
    pub completeness_cutoff: f64,
}

/// A partial heat trace with the bound on the omitted eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatTraceSample {
    pub value: f64,
    pub truncation_bound: f64,
    /// Set when `truncation_bound` exceeds [`TRUNCATION_WARNING`].
    pub warning: bool,
}

fn mode_order(geometry: Geometry, alpha: f64, l: usize) -> f64 {
    match geometry {
        Geometry::Sector => l as f64 * PI / alpha,
        Geometry::Cone => l as f64 * 2.0 * PI / alpha,
    }
}

/// The angular modes kept by a truncation at ℓ ≤ `l_max`.
pub fn angular_modes(geometry: Geometry, angle: &OpeningAngle, l_max: usize) -> Vec<AngularMode> {
    let alpha = angle.alpha();
    let first = match geometry {
        Geometry::Sector => 1,
        Geometry::Cone => 0,
    };
    (first..=l_max)
        .map(|l| AngularMode {
            l,
            nu: mode_order(geometry, alpha, l),
            multiplicity: if geometry == Geometry::Cone && l > 0 { 2 } else { 1 },
        })
        .collect()
}

/// Checks the size limits of a truncation before any zeros are computed.
pub fn check_truncation(geometry: Geometry, angle: &OpeningAngle, l_max: usize, n_max: usize) -> Result<()> {
    if n_max == 0 || (geometry == Geometry::Sector && l_max == 0) {
        return Err(Error::Domain("truncation needs N >= 1 and, for sectors, L >= 1"));
    }
    if l_max.saturating_mul(n_max) > MAX_TABLE_SIZE {
        return Err(Error::Range("L*N exceeds 250000"));
    }
    if mode_order(geometry, angle.alpha(), l_max) > MAX_ORDER {
        return Err(Error::Range("largest Bessel order exceeds 300"));
    }
    Ok(())
}

/// λ² = j_{ν,n}² for n = 1..=n_max.
pub fn radial_eigenvalues(nu: f64, n_max: usize) -> Result<Vec<f64>> {
    Ok(bessel_j_zeros(nu, n_max)?.into_iter().map(|j| j * j).collect())
}

/// Builds the table from precomputed rows (one per entry of `angular_modes`,
/// in the same order). Lets callers compute the rows concurrently.
pub fn assemble_spectrum(
    geometry: Geometry,
    angle: &OpeningAngle,
    l_max: usize,
    n_max: usize,
    rows: Vec<Vec<f64>>,
) -> Result<SpectrumTruncation> {
    check_truncation(geometry, angle, l_max, n_max)?;
    let modes = angular_modes(geometry, angle, l_max);
    if rows.len() != modes.len() || rows.iter().any(|r| r.len() != n_max) {
        return Err(Error::Domain("row count does not match the truncation"));
    }
    let mut entries = Vec::with_capacity(modes.len() * n_max);
    let mut cutoff = f64::INFINITY;
    for (mode, row) in modes.iter().zip(rows) {
        let mut prev = 0.0;
        for (i, &lambda_sq) in row.iter().enumerate() {
            if !(lambda_sq > prev) {
                return Err(Error::Convergence { achieved: lambda_sq, requested: prev });
            }
            prev = lambda_sq;
            entries.push(SpectralEntry { nu: mode.nu, l: mode.l, n: i + 1, lambda_sq, multiplicity: mode.multiplicity });
        }
        cutoff = cutoff.min(prev);
    }
    // Modes beyond L start at j_{ν_{L+1},1} > ν_{L+1}.
    let next = mode_order(geometry, angle.alpha(), l_max + 1);
    let next_first = if next <= MAX_ORDER { bessel_j_zero(next, 1).unwrap_or(next) } else { next };
    cutoff = cutoff.min(next_first * next_first);
    Ok(SpectrumTruncation { geometry, alpha: angle.alpha(), l_max, n_max, entries, completeness_cutoff: cutoff })
}

/// All levels with ℓ ≤ `l_max` and n ≤ `n_max`, computed sequentially.
pub fn build_spectrum(geometry: Geometry, angle: &OpeningAngle, l_max: usize, n_max: usize) -> Result<SpectrumTruncation> {
    check_truncation(geometry, angle, l_max, n_max)?;
    let rows = angular_modes(geometry, angle, l_max)
        .iter()
        .map(|m| radial_eigenvalues(m.nu, n_max))
        .collect::<Result<Vec<_>>>()?;
    assemble_spectrum(geometry, angle, l_max, n_max, rows)
}

impl SpectrumTruncation {
    /// Eigenvalues with multiplicity, sorted ascending.
    pub fn sorted_eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = Vec::new();
        for e in &self.entries {
            for _ in 0..e.multiplicity {
                v.push(e.lambda_sq);
            }
        }
        v.sort_by(f64::total_cmp);
        v
    }

    /// Σ_{λ² ≤ cap} mult · λ^{−2s}, a partial sum of the spectral zeta function.
    pub fn zeta_partial_sum(&self, s: f64, cap: f64) -> f64 {
        let terms: Vec<f64> = self
            .entries
            .iter()
            .filter(|e| e.lambda_sq <= cap)
            .map(|e| f64::from(e.multiplicity) * pow(e.lambda_sq, -s))
            .collect();
        pairwise_sum(&terms)
    }

    /// Coefficients (C, D, E) of the counting bound N(x) ≤ C x + D √x + E.
    fn counting_bound(&self) -> (f64, f64, f64) {
        let c = self.alpha / (4.0 * PI);
        match self.geometry {
            // Dirichlet Li–Yau bound with area α/2.
            Geometry::Sector => (c, 0.0, 0.0),
            // Two copies of the α/2 sector plus the J₀ zeros, j_{0,n} > (n − 1/4)π.
            Geometry::Cone => (c, 1.0 / PI, 0.25),
        }
    }
}

/// Σ mult · e^{−λ² t} over the table, with a bound on the omitted eigenvalues.
pub fn partial_heat_trace(spectrum: &SpectrumTruncation, t: f64) -> Result<HeatTraceSample> {
    if !(t > 0.0) {
        return Err(Error::Domain("heat trace needs t > 0"));
    }
    let terms: Vec<f64> = spectrum.entries.iter().map(|e| f64::from(e.multiplicity) * exp(-e.lambda_sq * t)).collect();
    let value = pairwise_sum(&terms);
    // Σ_{λ² ≥ M} e^{−tλ²} ≤ t ∫_M^∞ e^{−tx} N(x) dx.
    let m = spectrum.completeness_cutoff;
    let (c, d, e) = spectrum.counting_bound();
    let decay = exp(-t * m);
    let bound = decay * (c * (m + 1.0 / t) + d * (sqrt(m) + 0.5 / (t * sqrt(m))) + e);
    Ok(HeatTraceSample { value, truncation_bound: bound, warning: bound > TRUNCATION_WARNING })
}

/// 30 geometrically spaced times on [0.02, 0.1].
pub fn default_fit_grid() -> Vec<f64> {
    let (lo, hi, n) = (0.02_f64, 0.1_f64, 30);
    (0..n).map(|i| lo * pow(hi / lo, i as f64 / (n - 1) as f64)).collect()
}

/// Least-squares fit of c₋₁/t + c₋½/√t + c₀ to sampled traces.
pub fn fit_from_samples(ts: &[f64], values: &[f64]) -> Result<HeatExpansion> {
    if ts.len() != values.len() || ts.len() < 3 {
        return Err(Error::Domain("fit needs at least three samples of matching length"));
    }
    if ts.iter().any(|&t| !(t > 0.0)) {
        return Err(Error::Domain("fit times must be positive"));
    }
    let m = ts.len();
    let mut cols: [Vec<f64>; 3] = [
        ts.iter().map(|&t| 1.0 / t).collect(),
        ts.iter().map(|&t| 1.0 / sqrt(t)).collect(),
        alloc::vec![1.0; m],
    ];
    let mut rhs = values.to_vec();
    // Modified Gram–Schmidt QR, applied to the right-hand side on the fly.
    let mut r = [[0.0_f64; 3]; 3];
    let mut qty = [0.0_f64; 3];
    for k in 0..3 {
        let norm = sqrt(cols[k].iter().map(|x| x * x).sum::<f64>());
        let scale = sqrt((0..=k).map(|i| r[i][k] * r[i][k]).sum::<f64>() + norm * norm);
        if !(norm > 1e-12 * scale) {
            return Err(Error::IllConditioned);
        }
        r[k][k] = norm;
        for x in cols[k].iter_mut() {
            *x /= norm;
        }
        let q = cols[k].clone();
        for j in k + 1..3 {
            let dot: f64 = q.iter().zip(&cols[j]).map(|(a, b)| a * b).sum();
            r[k][j] = dot;
            for (x, qi) in cols[j].iter_mut().zip(&q) {
                *x -= dot * qi;
            }
        }
        let dot: f64 = q.iter().zip(&rhs).map(|(a, b)| a * b).sum();
        qty[k] = dot;
        for (x, qi) in rhs.iter_mut().zip(&q) {
            *x -= dot * qi;
        }
    }
    let mut c = [0.0_f64; 3];
    for k in (0..3).rev() {
        let mut v = qty[k];
        for j in k + 1..3 {
            v -= r[k][j] * c[j];
        }
        c[k] = v / r[k][k];
    }
    Ok(HeatExpansion { a0: c[0], a1: c[1], a2_log: 0.0, a2_const: c[2] })
}

/// Fits the heat expansion to partial traces of `spectrum` on `t_grid`.
/// Refuses grids where any truncation bound reaches [`TRUNCATION_WARNING`].
pub fn fit_heat_coefficients(spectrum: &SpectrumTruncation, t_grid: &[f64]) -> Result<HeatExpansion> {
    let mut values = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let s = partial_heat_trace(spectrum, t)?;
        if s.warning {
            return Err(Error::Range("truncation bound too large on the fit window"));
        }
        values.push(s.value);
    }
    fit_from_samples(t_grid, &values)
}

/// Central difference (f(α+h) − f(α−h))/(2h).
pub fn finite_difference<F: Fn(f64) -> Result<f64>>(f: F, alpha: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::Domain("step must be positive"));
    }
    Ok((f(alpha + h)? - f(alpha - h)?) / (2.0 * h))
}

/// Richardson combination (4D(h/2) − D(h))/3 of central differences.
pub fn richardson<F: Fn(f64) -> Result<f64>>(f: F, alpha: f64, h: f64) -> Result<f64> {
    let coarse = finite_difference(&f, alpha, h)?;
    let fine = finite_difference(&f, alpha, 0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Largest |a − b| over two equally long sorted lists.
pub fn max_abs_difference(a: &[f64], b: &[f64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    Some(a.iter().zip(b).map(|(x, y)| fabs(x - y)).fold(0.0, f64::max))
}
