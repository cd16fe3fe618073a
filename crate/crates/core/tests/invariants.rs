//! Cross-module invariants of the verification layer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rellich::params::base_alpha;
use rellich::profile::plateau_profile;
use rellich::quadrature::QuadratureSpec;
use rellich::radial::rellich_ratio_separable;
use rellich::validity::best_constant;
use rellich::verify::{hardy_quotient_log_profile, verify_remainder};
use rellich::{ExtendedIndex, OperatorParams, Profile1D};

const WIDTHS: [f64; 4] = [25.0, 50.0, 100.0, 200.0];

fn random_in_range(rng: &mut ChaCha8Rng) -> (OperatorParams, ExtendedIndex, f64) {
    let dim = rng.gen_range(3u32..9);
    let c = rng.gen_range(-1.0..2.0);
    let half = (f64::from(dim) - 2.0 + c) / 2.0;
    let d: f64 = rng.gen_range(0.5..6.0);
    let prm = OperatorParams::new(dim, c, d - half * half).unwrap();
    let p = if rng.gen_bool(0.2) {
        ExtendedIndex::Infinity
    } else {
        ExtendedIndex::Finite(rng.gen_range(1.2..5.0))
    };
    let alpha = base_alpha(&prm, p) + rng.gen_range(-0.7..0.7) * d.sqrt();
    (prm, p, alpha)
}

#[test]
fn plateau_gap_to_best_constant_is_nonincreasing_in_width() {
    let quad = QuadratureSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let (prm, p, alpha) = random_in_range(&mut rng);
        let c = best_constant(&prm, p, alpha).expect("alpha inside the range");
        let gaps: Vec<f64> = WIDTHS
            .iter()
            .map(|&t| {
                let v = plateau_profile(t).unwrap();
                let r = rellich_ratio_separable(&prm, p, alpha, 0, &v, &quad).unwrap().ratio;
                assert!(r >= c - 1e-3, "ratio {r} below C {c}");
                (r - c).abs()
            })
            .collect();
        for w in gaps.windows(2) {
            assert!(w[1] <= w[0] + 1e-9, "{prm:?} p={p} alpha={alpha}: gaps {gaps:?}");
        }
    }
}

#[test]
fn hardy_quotient_reaches_constant_at_large_width() {
    let quad = QuadratureSpec::default();
    for (dim, beta) in [(3u32, 0.0), (5, 1.5), (4, -1.0), (7, 2.0)] {
        for q in [1.5, 2.0, 4.0] {
            let w = Profile1D::bump(-200.0, 200.0).unwrap();
            let normalized = hardy_quotient_log_profile(dim, q, beta, &w, &quad).unwrap();
            assert!((normalized - 1.0).abs() <= 0.05, "N={dim} beta={beta} p={q}: {normalized}");
        }
    }
}

#[test]
fn remainder_margin_shrinks_along_plateau_family() {
    let quad = QuadratureSpec::default();
    let prm = OperatorParams::new(5, 0.0, 0.0).unwrap();
    let p = ExtendedIndex::Finite(2.0);
    let start = std::f64::consts::LN_2 + 0.5;
    let corpus: Vec<Profile1D> = WIDTHS
        .iter()
        .map(|&t| Profile1D::bump(start, start + 2.0 * t).unwrap())
        .collect();
    let report = verify_remainder(&prm, p, 0.0, &corpus, &quad).unwrap();
    assert!(report.passed, "{report:?}");
    let margins: Vec<f64> = report.samples.iter().map(|s| s.margin).collect();
    assert!(margins.iter().all(|&m| m >= -1e-6), "{margins:?}");
    for w in margins.windows(2) {
        assert!(w[1] < w[0], "margins not decreasing: {margins:?}");
    }
}
