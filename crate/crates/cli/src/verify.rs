//! Self-verification suites behind `sectordet verify`.
//!
//! Each suite is a short deterministic version of the library's invariants;
//! the full criteria with their sample sizes live in the `acceptance` test.

use std::f64::consts::{FRAC_PI_2, PI};

use sectordet::cone::{ddalpha_cone, det_log_cone, det_log_cone_via_sector, xi0_prime_zero};
use sectordet::heat_trace::{corner_coefficient_boundary, corner_coefficient_cone_point, heat_expansion_sector, zeta_zero};
use sectordet::polyakov::{flat_sector_spec, integrated_polyakov, variational_polyakov};
use sectordet::sector::{
    barnes_zeta_integral, barnes_zeta_series, ddalpha_sector, det_log_sector, log_lemma_sides, residue_lemma_sides,
};
use sectordet::special_functions::EULER_GAMMA;
use sectordet::spectral_oracle::{radial_eigenvalues, richardson, Geometry};
use sectordet::{DerivativeMethod, OpeningAngle, QuadratureConfig};

use crate::spectrum::build_spectrum_parallel;
use crate::CliError;

pub const SUITES: [&str; 11] =
    ["formulas", "rational", "derivative", "cone", "xi0", "barnes", "lemmas", "heat", "polyakov", "golden", "spectral"];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn within(suite: &'static str, name: String, err: f64, tol: f64) -> Self {
        Check { suite, name, passed: err < tol, detail: format!("err {err:.3e} tol {tol:.0e}") }
    }

    pub fn line(&self) -> String {
        format!("{} {:<10} {:<44} {}", if self.passed { "PASS" } else { "FAIL" }, self.suite, self.name, self.detail)
    }
}

fn angle(a: f64) -> Result<OpeningAngle, CliError> {
    Ok(OpeningAngle::new(a)?)
}

fn formulas(cfg: &QuadratureConfig) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for alpha in [0.3, 0.8, 1.2, 1.9, 2.7] {
        let a = angle(alpha)?;
        let i = ddalpha_sector(&a, DerivativeMethod::IntegralForm, cfg)?.value;
        let g = ddalpha_sector(&a, DerivativeMethod::ClosedGeneric, cfg)?.value;
        let r = ddalpha_sector(&a, DerivativeMethod::AldRowRaw, cfg)?.value;
        out.push(Check::within("formulas", format!("integral vs closed, alpha={alpha}"), (i - g).abs(), 1e-9));
        out.push(Check::within("formulas", format!("integral vs ald-row, alpha={alpha}"), (i - r).abs(), 1e-9));
    }
    Ok(out)
}

fn rational(cfg: &QuadratureConfig) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for j in 2..=8u32 {
        let a = angle(PI / f64::from(j))?;
        let i = ddalpha_sector(&a, DerivativeMethod::IntegralForm, cfg)?.value;
        let c = ddalpha_sector(&a, DerivativeMethod::ClosedRational, cfg)?.value;
        let d = ddalpha_sector(&a, DerivativeMethod::DigammaRational, cfg)?.value;
        let spread = (i - c).abs().max((i - d).abs()).max((c - d).abs());
        out.push(Check::within("rational", format!("three forms, alpha=pi/{j}"), spread, 1e-9));
    }
    let anchor = 2.0 / (3.0 * PI) - EULER_GAMMA / (4.0 * PI);
    let v = ddalpha_sector(&angle(FRAC_PI_2)?, DerivativeMethod::ClosedRational, cfg)?.value;
    out.push(Check::within("rational", "anchor at pi/2".into(), (v - anchor).abs(), 1e-12));
    Ok(out)
}

fn derivative(cfg: &QuadratureConfig) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for alpha in [0.7, 2.0, 4.0] {
        let f = |x: f64| Ok(det_log_sector(&OpeningAngle::new(x)?, cfg)?.value);
        let fd: Result<f64, sectordet::Error> = richardson(f, alpha, 1e-4);
        let d = ddalpha_sector(&angle(alpha)?, DerivativeMethod::IntegralForm, cfg)?.value;
        out.push(Check::within("derivative", format!("sector, alpha={alpha}"), (fd? - d).abs(), 1e-6));
        let g = |x: f64| Ok(det_log_cone(&OpeningAngle::new(x)?, cfg)?.value);
        let fd: Result<f64, sectordet::Error> = richardson(g, alpha, 1e-4);
        let d = ddalpha_cone(&angle(alpha)?, DerivativeMethod::IntegralForm, cfg)?.value;
        out.push(Check::within("derivative", format!("cone, alpha={alpha}"), (fd? - d).abs(), 1e-6));
    }
    Ok(out)
}

fn cone(cfg: &QuadratureConfig) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for alpha in [0.5, 2.0, PI, 5.0] {
        let a = angle(alpha)?;
        let err = (det_log_cone(&a, cfg)?.value - det_log_cone_via_sector(&a, cfg)?.value).abs();
        out.push(Check::within("cone", format!("doubled sector, alpha={alpha}"), err, 1e-10));
    }
    Ok(out)
}

fn xi0(cfg: &QuadratureConfig) -> Result<Vec<Check>, CliError> {
    let x = xi0_prime_zero(cfg)?;
    Ok(vec![
        Check::within("xi0", "xi0'(0) = -log(2 pi)/2".into(), (x.value + 0.5 * (2.0 * PI).ln()).abs(), 1e-8),
        Check::within("xi0", "log I0(1) two ways".into(), (x.log_i0_direct - x.log_i0_integral).abs(), 1e-10),
    ])
}

fn barnes(cfg: &QuadratureConfig) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for alpha in [1.0, PI] {
        let a = angle(alpha)?;
        let s = barnes_zeta_series(3.0, &a, 2000)?;
        let i = barnes_zeta_integral(3.0, &a, cfg)?.value;
        out.push(Check::within("barnes", format!("series vs integral z=3, alpha={alpha:.4}"), (s.value - i).abs(), 1e-8));
    }
    Ok(out)
}

fn lemmas(cfg: &QuadratureConfig) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for alpha in [0.7, 1.0, 1.3] {
        let a = angle(alpha)?;
        let (l, r) = residue_lemma_sides(&a, cfg)?;
        out.push(Check::within("lemmas", format!("residue identity, alpha={alpha}"), (l - r).abs(), 1e-8));
        let (l, r) = log_lemma_sides(&a, cfg)?;
        out.push(Check::within("lemmas", format!("log identity, alpha={alpha}"), (l - r).abs(), 1e-8));
    }
    Ok(out)
}

fn heat() -> Result<Vec<Check>, CliError> {
    let h = heat_expansion_sector(&angle(FRAC_PI_2)?);
    let mut worst: f64 = 0.0;
    for i in 1..100 {
        let g = 2.0 * PI * f64::from(i) / 100.0;
        worst = worst.max((corner_coefficient_cone_point(g)? - 2.0 * corner_coefficient_boundary(g / 2.0)?).abs());
    }
    Ok(vec![
        Check::within("heat", "a2 at pi/2 = 11/48".into(), (zeta_zero(&h, 0)? - 11.0 / 48.0).abs(), 1e-15),
        Check::within("heat", "cone point = 2 x half boundary corner".into(), worst, 1e-15),
    ])
}

fn polyakov() -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for alpha in [PI / 3.0, FRAC_PI_2, 1.0, 2.0] {
        let z = zeta_zero(&heat_expansion_sector(&angle(alpha)?), 0)?;
        for c in [0.1, -0.05] {
            let spec = flat_sector_spec(alpha, c, c, 8)?;
            let err = (integrated_polyakov(&spec)? + 2.0 * c * z).abs().max((variational_polyakov(&spec)? - 2.0 * c * z).abs());
            out.push(Check::within("polyakov", format!("scaling, alpha={alpha:.4} c={c}"), err, 1e-12));
        }
    }
    Ok(out)
}

const GOLDEN_SECTOR: [(f64, f64); 6] = [
    (PI / 6.0, 0.269_814_095_920_015_73),
    (PI / 4.0, 0.435_501_962_061_315_92),
    (PI / 3.0, 0.518_726_353_352_655_8),
    (FRAC_PI_2, 0.622_702_170_264_472_34),
    (1.0, 0.506_386_243_695_616_19),
    (2.0, 0.689_200_278_837_382_22),
];

const GOLDEN_CONE: [(f64, f64); 3] =
    [(FRAC_PI_2, -0.047_934_609_082_040_905), (PI, 0.326_465_807_324_271_95), (1.5 * PI, 0.561_065_886_731_304_39)];

fn golden(cfg: &QuadratureConfig) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for (alpha, v) in GOLDEN_SECTOR {
        let err = (det_log_sector(&angle(alpha)?, cfg)?.value - v).abs();
        out.push(Check::within("golden", format!("sector alpha={alpha:.6}"), err, 1e-10));
    }
    for (alpha, v) in GOLDEN_CONE {
        let err = (det_log_cone(&angle(alpha)?, cfg)?.value - v).abs();
        out.push(Check::within("golden", format!("cone alpha={alpha:.6}"), err, 1e-10));
    }
    Ok(out)
}

fn spectral() -> Result<Vec<Check>, CliError> {
    let alpha = 3.0;
    let cone = build_spectrum_parallel(Geometry::Cone, &angle(alpha)?, 8, 10)?;
    let sector = build_spectrum_parallel(Geometry::Sector, &angle(alpha / 2.0)?, 8, 10)?;
    let mut expected = radial_eigenvalues(0.0, 10)?;
    for e in &sector.entries {
        expected.push(e.lambda_sq);
        expected.push(e.lambda_sq);
    }
    expected.sort_by(f64::total_cmp);
    let got = cone.sorted_eigenvalues();
    let err = got.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(vec![Check::within("spectral", "cone = 2 x half sector + radial".into(), err, 1e-12)])
}

/// Runs one named suite, or every suite for `all`.
pub fn run(suite: &str, cfg: &QuadratureConfig) -> Result<Vec<Check>, CliError> {
    if suite == "all" {
        let mut out = Vec::new();
        for s in SUITES {
            out.extend(run(s, cfg)?);
        }
        return Ok(out);
    }
    match suite {
        "formulas" => formulas(cfg),
        "rational" => rational(cfg),
        "derivative" => derivative(cfg),
        "cone" => cone(cfg),
        "xi0" => xi0(cfg),
        "barnes" => barnes(cfg),
        "lemmas" => lemmas(cfg),
        "heat" => heat(),
        "polyakov" => polyakov(),
        "golden" => golden(cfg),
        "spectral" => spectral(),
        other => Err(CliError::Usage(format!("unknown suite '{other}'; expected all or one of {}", SUITES.join(", ")))),
    }
}
