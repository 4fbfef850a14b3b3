use core::f64::consts::PI;

use proptest::prelude::*;
use sectordet::cone::{
    closed_generic_cone_unchecked, closed_rational_cone, ddalpha_cone, ddalpha_cone_via_sector, det_log_cone,
    det_log_cone_via_sector,
};
use sectordet::heat_trace::{corner_coefficient_boundary, corner_coefficient_cone_point};
use sectordet::polyakov::{flat_sector_spec, variational_polyakov};
use sectordet::sector::{
    ald_row_summand, ald_row_summand_simplified, barnes_zeta_integral, barnes_zeta_prime_zero,
    barnes_zeta_prime_zero_split, barnes_zeta_series, closed_generic_unchecked, closed_rational, ddalpha_sector,
    log_lemma_sides, residue_lemma_sides, w_alpha_set, w_alpha_set_from_definition,
};
use sectordet::{AngleClass, DerivativeMethod, OpeningAngle, QuadratureConfig};

fn angle(a: f64) -> OpeningAngle {
    OpeningAngle::new(a).unwrap()
}

fn far_from_pi_over_j(alpha: f64, gap: f64) -> bool {
    (1..=400).all(|j| (alpha - PI / j as f64).abs() > gap)
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cone_matches_doubled_sector(alpha in 0.3..(2.0 * PI - 0.3)) {
        let a = angle(alpha);
        let direct = det_log_cone(&a, &cfg()).unwrap().value;
        let relation = det_log_cone_via_sector(&a, &cfg()).unwrap().value;
        prop_assert!((direct - relation).abs() < 1e-10);
    }

    #[test]
    fn cone_derivative_is_half_angle_sector_derivative(alpha in 0.3..(2.0 * PI - 0.3)) {
        let a = angle(alpha);
        let cone = ddalpha_cone(&a, DerivativeMethod::IntegralForm, &cfg()).unwrap().value;
        let sector = ddalpha_cone_via_sector(&a, DerivativeMethod::IntegralForm, &cfg()).unwrap().value;
        prop_assert!((cone - sector).abs() < 1e-11);
    }

    #[test]
    fn closed_forms_match_integral(alpha in 0.25..3.0_f64) {
        prop_assume!(far_from_pi_over_j(alpha, 1e-3));
        let a = angle(alpha);
        let i = ddalpha_sector(&a, DerivativeMethod::IntegralForm, &cfg()).unwrap().value;
        let g = ddalpha_sector(&a, DerivativeMethod::ClosedGeneric, &cfg()).unwrap().value;
        let r = ddalpha_sector(&a, DerivativeMethod::AldRowRaw, &cfg()).unwrap().value;
        prop_assert!((i - g).abs() < 1e-9, "{} vs {}", i, g);
        prop_assert!((i - r).abs() < 1e-9, "{} vs {}", i, r);
    }

    #[test]
    fn lemma_identities(alpha in 0.3..3.0_f64) {
        prop_assume!(far_from_pi_over_j(alpha, 1e-3));
        let (l, r) = residue_lemma_sides(&angle(alpha), &cfg()).unwrap();
        prop_assert!((l - r).abs() < 1e-8);
        let (l, r) = log_lemma_sides(&angle(alpha), &cfg()).unwrap();
        prop_assert!((l - r).abs() < 1e-8);
    }

    #[test]
    fn w_set_definitions_agree(alpha in 0.02..(PI - 1e-6)) {
        let a = angle(alpha);
        prop_assert_eq!(w_alpha_set(&a).unwrap(), w_alpha_set_from_definition(&a).unwrap());
    }

    #[test]
    fn summand_rewrite(k in -30_i64..30, alpha in 0.05..3.0_f64) {
        prop_assume!(k != 0 && (k as f64 * alpha / PI - (k as f64 * alpha / PI).round()).abs() > 1e-3);
        let raw = ald_row_summand(k, alpha);
        prop_assert!((raw - ald_row_summand_simplified(k, alpha)).abs() < 1e-11 * raw.abs().max(1.0));
    }

    #[test]
    fn barnes_split_independence(alpha in 0.2..6.0_f64, split in 0.2..3.0_f64) {
        let a = angle(alpha);
        let one = barnes_zeta_prime_zero(&a, &cfg()).unwrap().value;
        let other = barnes_zeta_prime_zero_split(&a, split, &cfg()).unwrap().value;
        prop_assert!((one - other).abs() < 1e-10);
    }

    #[test]
    fn barnes_series_matches_integral(alpha in 0.3..6.0_f64, z in 2.5..5.0_f64) {
        let a = angle(alpha);
        let s = barnes_zeta_series(z, &a, 400).unwrap();
        let i = barnes_zeta_integral(z, &a, &cfg()).unwrap().value;
        prop_assert!((s.value - i).abs() < 1e-8 * i.max(1.0) + s.tail_bound);
    }

    #[test]
    fn rational_classification(j in 2_u32..200, delta in -9e-9..9e-9_f64) {
        let a = angle(PI / f64::from(j) + delta);
        prop_assert_eq!(a.classification(), AngleClass::PiOverJ(j));
    }

    #[test]
    fn corner_doubling(gamma in 1e-3..(2.0 * PI - 1e-3)) {
        let cone = corner_coefficient_cone_point(gamma).unwrap();
        let half = corner_coefficient_boundary(gamma / 2.0).unwrap();
        prop_assert!((cone - 2.0 * half).abs() <= 1e-15 * cone.abs().max(1.0));
    }

    #[test]
    fn variational_is_linear(alpha in 0.3..6.0_f64, u in proptest::collection::vec(-1.0..1.0_f64, 8), v in proptest::collection::vec(-1.0..1.0_f64, 8)) {
        let mut su = flat_sector_spec(alpha, 0.0, 0.0, 6).unwrap();
        let mut sv = su.clone();
        let mut sw = su.clone();
        for (i, node) in su.boundary_nodes.iter_mut().enumerate() { node.phi_dot = u[i]; node.dphi_dot_dn = u[(i + 3) % 8]; }
        for (i, node) in sv.boundary_nodes.iter_mut().enumerate() { node.phi_dot = v[i]; node.dphi_dot_dn = v[(i + 3) % 8]; }
        for (i, node) in sw.boundary_nodes.iter_mut().enumerate() { node.phi_dot = u[i] + v[i]; node.dphi_dot_dn = u[(i + 3) % 8] + v[(i + 3) % 8]; }
        let total = variational_polyakov(&sw).unwrap();
        let parts = variational_polyakov(&su).unwrap() + variational_polyakov(&sv).unwrap();
        prop_assert!((total - parts).abs() < 1e-13);
    }
}

#[test]
fn closed_generic_is_continuous_at_rational_angles() {
    for j in 2..=8u32 {
        let centre = PI / f64::from(j);
        let exact = closed_rational(j);
        for side in [-1e-5, 1e-5] {
            let v = closed_generic_unchecked(centre + side, &cfg()).unwrap().value;
            assert!((v - exact).abs() < 1e-3, "j {j} side {side}: {v} vs {exact}");
        }
    }
}

#[test]
fn cone_closed_generic_is_continuous_at_rational_angles() {
    for j in 2..=8u32 {
        let centre = 2.0 * PI / f64::from(j);
        let exact = closed_rational_cone(j);
        for side in [-1e-5, 1e-5] {
            let v = closed_generic_cone_unchecked(centre + side, &cfg()).unwrap().value;
            assert!((v - exact).abs() < 1e-3, "j {j} side {side}: {v} vs {exact}");
        }
    }
}
