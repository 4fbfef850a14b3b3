//! Reference values produced by `tools/golden_oracle.py` (mpmath, 40 digits).

use core::f64::consts::PI;

use sectordet::cone::{det_log_cone, ddalpha_cone};
use sectordet::sector::{ddalpha_sector, det_log_sector, log_lemma_sides, residue_lemma_sides};
use sectordet::{DerivativeMethod, OpeningAngle, QuadratureConfig};

const SECTOR: [(f64, f64); 6] = [
    (PI / 6.0, 0.269_814_095_920_015_726_171_125_4),
    (PI / 4.0, 0.435_501_962_061_315_918_467_617_1),
    (PI / 3.0, 0.518_726_353_352_655_801_585_339),
    (PI / 2.0, 0.622_702_170_264_472_343_690_471_9),
    (1.0, 0.506_386_243_695_616_193_591_776_2),
    (2.0, 0.689_200_278_837_382_223_654_022_2),
];

const CONE: [(f64, f64); 3] = [
    (PI / 2.0, -0.047_934_609_082_040_904_845_095_17),
    (PI, 0.326_465_807_324_271_945_600_614),
    (1.5 * PI, 0.561_065_886_731_304_389_682_650_9),
];

fn angle(a: f64) -> OpeningAngle {
    OpeningAngle::new(a).unwrap()
}

#[test]
fn sector_determinants() {
    let cfg = QuadratureConfig::default();
    for (alpha, expected) in SECTOR {
        let got = det_log_sector(&angle(alpha), &cfg).unwrap();
        assert!((got.value - expected).abs() < 1e-10, "alpha {alpha}: {} vs {expected}", got.value);
        assert!(got.abs_err < 1e-10);
    }
}

#[test]
fn cone_determinants() {
    let cfg = QuadratureConfig::default();
    for (alpha, expected) in CONE {
        let got = det_log_cone(&angle(alpha), &cfg).unwrap();
        assert!((got.value - expected).abs() < 1e-10, "alpha {alpha}: {} vs {expected}", got.value);
    }
}

#[test]
fn sector_derivatives() {
    let cfg = QuadratureConfig::default();
    let cases = [
        (1.0, 0.270_558_731_336_367_691_736_203_505_793),
        (2.0, 0.146_655_060_203_122_361_424_412_343_171),
        (PI / 3.0, 0.252_870_757_546_649_043_258_205_702_584),
        (PI / 5.0, 0.655_404_897_861_495_609_761_484_303_01),
        (0.5, 1.112_673_047_982_902_608_557_254_830_5),
    ];
    for (alpha, expected) in cases {
        let got = ddalpha_sector(&angle(alpha), DerivativeMethod::IntegralForm, &cfg).unwrap().value;
        assert!((got - expected).abs() < 1e-11, "alpha {alpha}: {got} vs {expected}");
    }
    let cone = ddalpha_cone(&angle(2.0), DerivativeMethod::ClosedGeneric, &cfg).unwrap().value;
    assert!((cone - 0.270_558_731_336_367_691_736_203_505_793).abs() < 1e-10);
}

#[test]
fn lemma_left_sides() {
    let cfg = QuadratureConfig::default();
    let residue = [(0.7, 0.039_621_584_230_074_2), (1.0, -0.010_501_755_004_546_753_8), (1.3, 0.043_036_029_224_908_95)];
    for (alpha, expected) in residue {
        let (lhs, _) = residue_lemma_sides(&angle(alpha), &cfg).unwrap();
        assert!((lhs - expected).abs() < 1e-12, "alpha {alpha}: {lhs}");
    }
    let log = [(0.7, 0.014_258_645_088_205_6), (1.0, -0.003_976_452_423_855_883_21), (1.3, 0.016_355_518_293_817_12)];
    for (alpha, expected) in log {
        let (lhs, _) = log_lemma_sides(&angle(alpha), &cfg).unwrap();
        assert!((lhs - expected).abs() < 1e-12, "alpha {alpha}: {lhs}");
    }
}
