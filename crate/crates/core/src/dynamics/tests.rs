use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::models::*;
use super::*;
use crate::cone::{ConePoint, SectionFunctional};
use crate::error::Error;
use crate::linalg::Matrix;

type Pair = ConicPair<f64, MatrixGroup<f64>>;

fn pt(c: &[f64]) -> ConePoint<f64> {
    ConePoint::from_f64(c).unwrap()
}

fn ex31() -> Pair {
    example_3_1_pair().unwrap()
}

fn random_section_point(rng: &mut ChaCha8Rng) -> ConePoint<f64> {
    let t: f64 = rng.gen_range(0.0..=1.0);
    pt(&[t, 1.0 - t])
}

fn conic_samples(pair: &Pair, rng: &mut ChaCha8Rng, n: usize) -> Vec<(Matrix<f64>, ConePoint<f64>, ConePoint<f64>, f64)> {
    let gens = pair.group().generators().len();
    (0..n)
        .map(|_| {
            let w = GroupWord::random(rng, gens, 8);
            let g = pair.group().evaluate(&w).unwrap();
            (g, random_section_point(rng), random_section_point(rng), rng.gen_range(0.0..=1.0))
        })
        .collect()
}

#[test]
fn induced_pair_examples() {
    let pair = ex31();
    let g = diag2(2.0, 3.0);
    assert_eq!(pair.sigma(&g, &pt(&[1.0, 0.0])), 2.0);
    assert_eq!(pair.rho(&g, &pt(&[1.0, 0.0])), pt(&[1.0, 0.0]));

    let e = Matrix::identity(2);
    let x = pt(&[0.3, 0.7]);
    assert_eq!(pair.sigma(&e, &x), 1.0);
    assert_eq!(pair.rho(&e, &x), x);

    let swap = antidiag2(1.0, 1.0);
    assert_eq!(pair.sigma(&swap, &x), 1.0);
    assert_eq!(pair.rho(&swap, &x), pt(&[0.7, 0.3]));
}

#[test]
fn reconstruction_holds_on_samples() {
    let pair = ex31();
    let model = example_3_1::<f64>();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let g = model.evaluate(&GroupWord::random(&mut rng, 3, 20)).unwrap();
        let x = random_section_point(&mut rng);
        let direct = model.act(&g, &x);
        let rebuilt = pair.rho(&g, &x).scale(pair.sigma(&g, &x));
        assert!(direct.distance(&rebuilt) <= 1e-12 * direct.norm());
        assert!((pair.section().eval(&pair.rho(&g, &x)) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn induced_pair_rejects_action_leaving_cone() {
    let shear = Matrix::from_rows(&[vec![1.0, -1.0], vec![0.0, 1.0]]).unwrap();
    let model = Arc::new(MatrixGroup::new(vec![shear]).unwrap());
    let l = SectionFunctional::from_f64(&[1.0, 1.0]).unwrap();
    let err = induced_pair(model, l, &[pt(&[0.0, 1.0])]).unwrap_err();
    assert!(matches!(err, Error::ActionLeavesCone(_)));
}

#[test]
fn induced_pair_rejects_dimension_mismatch() {
    let model = Arc::new(example_3_1::<f64>());
    let l = SectionFunctional::from_f64(&[1.0, 1.0, 1.0]).unwrap();
    assert!(matches!(induced_pair(model, l, &[]), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn action_axioms_hold_for_example_3_1() {
    let model = example_3_1::<f64>();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let samples: Vec<_> = (0..100)
        .map(|_| {
            let g = model.evaluate(&GroupWord::random(&mut rng, 3, 20)).unwrap();
            let h = model.evaluate(&GroupWord::random(&mut rng, 3, 20)).unwrap();
            (g, h, random_section_point(&mut rng), random_section_point(&mut rng))
        })
        .collect();
    let report = verify_action_axioms(&model, &samples, 1e-10);
    assert!(report.passed(), "max violation {}", report.max_violation());
}

#[test]
fn multiplier_identity_on_random_words() {
    let pair = ex31();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let words = GroupWord::random_pairs(&mut rng, 3, 20, 50);
    let points: Vec<_> = (0..5).map(|_| random_section_point(&mut rng)).collect();
    let report = verify_multiplier(&pair, &words, &points, 1e-9);
    assert!(report.passed(), "max violation {}", report.max_violation());
    assert_eq!(report.rows.len(), 250);
}

#[test]
fn multiplier_identity_exact_for_identity_gamma() {
    let pair = ex31();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let words: Vec<_> = (0..20).map(|_| (GroupWord::random(&mut rng, 3, 10), GroupWord::empty())).collect();
    let points = segment_points(7);
    let report = verify_multiplier(&pair, &words, &points, 0.0);
    assert_eq!(report.max_violation(), 0.0);
}

#[test]
fn corrupted_multiplier_is_detected() {
    let pair = ex31().map_sigma(|_, x, s| s * (1.0 + x.coords()[0]));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let words = GroupWord::random_pairs(&mut rng, 3, 20, 50);
    let points = segment_points(5);
    let report = verify_multiplier(&pair, &words, &points, 1e-9);
    assert!(!report.passed());
    assert!(report.max_violation() > 1e-3);
}

#[test]
fn conic_pair_condition_for_linear_action() {
    let pair = ex31();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let samples = conic_samples(&pair, &mut rng, 200);
    let report = verify_conic_pair(&pair, &samples, 1e-10);
    assert!(report.passed(), "max violation {}", report.max_violation());
}

#[test]
fn conic_pair_endpoints_are_exact() {
    let pair = ex31();
    let g = diag2(2.0, 3.0);
    let (a, b) = (pt(&[0.2, 0.8]), pt(&[0.9, 0.1]));
    let samples = vec![(g.clone(), a.clone(), b.clone(), 0.0), (g, a, b, 1.0)];
    let report = verify_conic_pair(&pair, &samples, 0.0);
    assert!(report.passed(), "{:?}", report.first_failure());
}

#[test]
fn squared_multiplier_is_not_affine() {
    let pair = ex31().map_sigma(|_, _, s| s * s);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let samples = conic_samples(&pair, &mut rng, 100);
    let report = verify_conic_pair(&pair, &samples, 1e-10);
    assert!(!report.affinity.passed());
    assert!(report.max_violation() > 1e-3);
}

#[test]
fn synthesis_round_trip() {
    let pair = ex31();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let validation = conic_samples(&pair, &mut rng, 50);
    let tau = synthesize_action(&pair, &validation, 1e-10).unwrap();
    let model = example_3_1::<f64>();
    for _ in 0..200 {
        let g = model.evaluate(&GroupWord::random(&mut rng, 3, 12)).unwrap();
        let c: f64 = rng.gen_range(0.1..10.0);
        let v = random_section_point(&mut rng).scale(c);
        let direct = model.act(&g, &v);
        assert!(tau.act(&g, &v).distance(&direct) <= 1e-12 * direct.norm());
    }
    assert!(tau.act(&model.identity(), &ConePoint::zeros(2)).is_zero());

    let again = induced_pair(Arc::new(tau), pair.section().clone(), &segment_points(8)).unwrap();
    for x in segment_points(9) {
        let g = model.evaluate(&GroupWord::random(&mut rng, 3, 12)).unwrap();
        assert!(crate::scalar::relative_diff(again.sigma(&g, &x), pair.sigma(&g, &x)) <= 1e-12);
        assert!(again.rho(&g, &x).max_abs_diff(&pair.rho(&g, &x)) <= 1e-12);
    }
}

#[test]
fn degenerate_synthesis_preserves_section() {
    let model = Arc::new(MatrixGroup::new(vec![antidiag2(1.0, 1.0)]).unwrap());
    let l = SectionFunctional::from_f64(&[1.0, 1.0]).unwrap();
    let swap_rho = |g: &Matrix<f64>, x: &ConePoint<f64>| ConePoint::from_vec_unchecked(g.apply(x.coords()));
    let pair = ConicPair::from_parts(model.clone(), l.clone(), swap_rho, |_, _| 1.0);
    let validation = vec![(antidiag2(1.0, 1.0), pt(&[0.1, 0.9]), pt(&[0.6, 0.4]), 0.3)];
    let tau = synthesize_action(&pair, &validation, 1e-12).unwrap();
    let samples: Vec<_> = segment_points(10).into_iter().map(|x| (antidiag2(1.0, 1.0), x.scale(3.0))).collect();
    assert!(invariant_section_check(&tau, &l, &samples, 1e-12));
}

#[test]
fn synthesis_rejects_pair_violating_condition() {
    let pair = ex31().map_sigma(|_, _, s| s * s);
    let validation = vec![(diag2(2.0, 3.0), pt(&[1.0, 0.0]), pt(&[0.0, 1.0]), 0.5)];
    match synthesize_action(&pair, &validation, 1e-10) {
        Err(Error::ConditionViolated { sample, violation }) => {
            assert!(sample.contains("sample#0"));
            assert!(violation > 1e-3);
        }
        other => panic!("expected rejection, got {other:?}"),
    }
}

fn abs_det(g: &Matrix<f64>) -> f64 {
    g.det().abs()
}

fn element_pairs(group: &MatrixGroup<f64>, rng: &mut ChaCha8Rng, n: usize) -> Vec<(Matrix<f64>, Matrix<f64>)> {
    let k = group.generators().len();
    (0..n)
        .map(|_| {
            (
                group.evaluate(&GroupWord::random(rng, k, 6)).unwrap(),
                group.evaluate(&GroupWord::random(rng, k, 6)).unwrap(),
            )
        })
        .collect()
}

#[test]
fn scaling_by_unit_homomorphism_is_identity() {
    let pair = ex31();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let samples = element_pairs(&example_3_1(), &mut rng, 20);
    let scaled = scale_multiplier(&pair, |_| 1.0, &samples, 1e-12).unwrap();
    let g = diag2(2.0, 3.0);
    for x in segment_points(5) {
        assert_eq!(scaled.sigma(&g, &x), pair.sigma(&g, &x));
    }
}

#[test]
fn scaling_by_determinant_gives_valid_pair() {
    let pair = ex31();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let samples = element_pairs(&example_3_1(), &mut rng, 50);
    let scaled = scale_multiplier(&pair, abs_det, &samples, 1e-12).unwrap();

    let words = GroupWord::random_pairs(&mut rng, 3, 10, 50);
    assert!(verify_multiplier(&scaled, &words, &segment_points(4), 1e-10).passed());
    let cs = conic_samples(&scaled, &mut rng, 50);
    assert!(verify_conic_pair(&scaled, &cs, 1e-10).passed());

    for (g, h) in &samples {
        let a = multiplier_ratio(&pair, &scaled, g, &segment_points(6), 1e-10).unwrap();
        assert!(crate::scalar::relative_diff(a, abs_det(g)) <= 1e-10);
        let ah = multiplier_ratio(&pair, &scaled, h, &segment_points(6), 1e-10).unwrap();
        let agh = multiplier_ratio(&pair, &scaled, &g.mul(h), &segment_points(6), 1e-10).unwrap();
        assert!(crate::scalar::relative_diff(agh, a * ah) <= 1e-10);
    }
}

#[test]
fn fractional_determinant_power_on_monomial_group() {
    let group = Arc::new(monomial_2x2::<f64>());
    let pair = induced_pair(group.clone(), SectionFunctional::from_f64(&[1.0, 1.0]).unwrap(), &segment_points(8)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let samples = element_pairs(&group, &mut rng, 50);
    let scaled = scale_multiplier(&pair, |g| g.det().abs().powf(0.5), &samples, 1e-12).unwrap();
    let words = GroupWord::random_pairs(&mut rng, 3, 10, 50);
    assert!(verify_multiplier(&scaled, &words, &segment_points(4), 1e-10).passed());
    let cs: Vec<_> = samples
        .iter()
        .map(|(g, _)| (g.clone(), random_section_point(&mut rng), random_section_point(&mut rng), rng.gen_range(0.0..1.0)))
        .collect();
    assert!(verify_conic_pair(&scaled, &cs, 1e-10).passed());
}

#[test]
fn non_homomorphism_rejected() {
    let pair = ex31();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let samples = element_pairs(&example_3_1(), &mut rng, 20);
    let err = scale_multiplier(&pair, |g| 1.0 + g.get(0, 0).abs(), &samples, 1e-12).unwrap_err();
    assert!(matches!(err, Error::NotHomomorphism(_)));
}

#[test]
fn ratio_of_identical_pairs_is_one() {
    let pair = ex31();
    let g = diag2(2.0, 3.0);
    assert_eq!(multiplier_ratio(&pair, &pair, &g, &segment_points(5), 1e-12).unwrap(), 1.0);
}

#[test]
fn ratio_rejects_pairs_with_different_rho() {
    let pair = ex31();
    let other = induced_pair(
        Arc::new(example_3_1::<f64>()),
        SectionFunctional::from_f64(&[1.0, 1.0]).unwrap(),
        &segment_points(4),
    )
    .unwrap()
    .map_rho(|_, _, r| r.combine(0.5, &ConePoint::from_f64(&[0.5, 0.5]).unwrap(), 0.5))
    .map_sigma(|_, x, s| s * (1.0 + x.coords()[0]));
    let err = multiplier_ratio(&pair, &other, &diag2(2.0, 3.0), &segment_points(5), 1e-10).unwrap_err();
    assert!(matches!(err, Error::PairsDoNotShareRho { .. }));
}

#[test]
fn orbit_covers_endpoints_for_example_3_1() {
    let pair = ex31();
    let targets = [pt(&[1.0, 0.0]), pt(&[0.0, 1.0])];
    let report = orbit_coverage(&pair, &pt(&[0.4, 0.6]), &targets, 40, 1e-3);
    assert!(report.covered, "{report:?}");
    assert!(!report.truncated);
}

#[test]
fn trivial_group_does_not_cover() {
    let group = Arc::new(MatrixGroup::new(vec![Matrix::identity(2)]).unwrap());
    let pair = induced_pair(group, SectionFunctional::from_f64(&[1.0, 1.0]).unwrap(), &segment_points(3)).unwrap();
    let report = orbit_coverage(&pair, &pt(&[0.5, 0.5]), &[pt(&[1.0, 0.0])], 10, 1e-3);
    assert!(!report.covered);
    assert_eq!(report.orbit_size, 1);
    assert!((report.min_distances[0] - 0.5f64.sqrt()).abs() < 1e-12);
}

#[test]
fn rotation_fixes_disc_center() {
    let group = Arc::new(disc_rotation::<f64>(1.0));
    let l = SectionFunctional::from_f64(&[0.0, 0.0, 1.0]).unwrap();
    let pair = induced_pair(group, l, &[pt(&[0.0, 0.0, 1.0]), pt(&[1.0, 0.0, 1.0])]).unwrap();
    let targets: Vec<_> = (0..4)
        .map(|k| {
            let a = std::f64::consts::FRAC_PI_2 * k as f64;
            pt(&[a.cos(), a.sin(), 1.0])
        })
        .collect();
    let report = orbit_coverage(&pair, &pt(&[0.0, 0.0, 1.0]), &targets, 40, 1e-3);
    assert!(!report.covered);
    assert!(report.min_distances.iter().all(|&d| (d - 1.0).abs() < 1e-9));
}

#[test]
fn invariant_section_verdicts() {
    let model = example_3_1::<f64>();
    let l = SectionFunctional::from_f64(&[1.0, 1.0]).unwrap();
    let samples: Vec<_> = segment_points(5).into_iter().map(|x| (diag2(2.0, 3.0), x)).collect();
    assert!(!invariant_section_check(&model, &l, &samples, 1e-12));
    assert!(!invariant_section_check(&model, &l.scaled(5.0), &samples, 1e-12));

    let swap = MatrixGroup::new(vec![antidiag2(1.0, 1.0)]).unwrap();
    let swaps: Vec<_> = segment_points(5).into_iter().map(|x| (antidiag2(1.0, 1.0), x.scale(2.5))).collect();
    assert!(invariant_section_check(&swap, &l, &swaps, 1e-12));
    assert!(invariant_section_check(&swap, &l.scaled(5.0), &swaps, 1e-12));
}

#[test]
fn affine_action_forces_constant_multiplier() {
    // swap is affine on the segment; 2·I scales by a character
    let group = Arc::new(swap_and_scale::<f64>());
    let pair = induced_pair(group.clone(), SectionFunctional::from_f64(&[1.0, 1.0]).unwrap(), &segment_points(5)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let samples = conic_samples(&pair, &mut rng, 100);
    assert!(verify_conic_pair(&pair, &samples, 1e-10).passed());
    for _ in 0..50 {
        let g = group.evaluate(&GroupWord::random(&mut rng, 2, 8)).unwrap();
        let values: Vec<f64> = segment_points(11).iter().map(|x| pair.sigma(&g, x)).collect();
        let (lo, hi) = values.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
        assert!(hi - lo < 1e-10 * hi);
    }
    let bent = pair.map_sigma(|_, x, s| s * (1.0 + x.coords()[0]));
    assert!(!verify_conic_pair(&bent, &samples, 1e-10).passed());
}

#[test]
fn invariant_functionals_of_irreducible_degenerate_action_are_proportional() {
    let group = Arc::new(MatrixGroup::new(vec![antidiag2(1.0, 1.0)]).unwrap());
    let l = SectionFunctional::from_f64(&[1.0, 1.0]).unwrap();
    let pair = induced_pair(group.clone(), l.clone(), &segment_points(4)).unwrap();
    let validation = vec![(antidiag2(1.0, 1.0), pt(&[0.2, 0.8]), pt(&[1.0, 0.0]), 0.4)];
    let tau = synthesize_action(&pair, &validation, 1e-12).unwrap();
    let extremes = [pt(&[1.0, 0.0]), pt(&[0.0, 1.0])];
    for x0 in &extremes {
        assert!(orbit_coverage(&pair, x0, &extremes, 4, 1e-9).covered);
    }
    let probe: Vec<_> = [pt(&[0.3, 1.2]), pt(&[2.0, 0.5]), pt(&[1.0, 1.0])]
        .into_iter()
        .map(|x| (antidiag2(1.0, 1.0), x))
        .collect();
    let candidates: Vec<SectionFunctional<f64>> = [[1.0, 1.0], [2.0, 2.0], [1.0, 2.0], [3.0, 1.0], [0.7, 0.7]]
        .iter()
        .map(|w| SectionFunctional::from_f64(w).unwrap())
        .collect();
    let invariant: Vec<_> = candidates
        .iter()
        .filter(|c| invariant_section_check(&tau, c, &probe, 1e-12))
        .collect();
    assert_eq!(invariant.len(), 3);
    let base = invariant[0];
    let ratio = base.weights()[0] / invariant[1].weights()[0];
    for c in &invariant {
        let r0 = base.weights()[0] / c.weights()[0];
        let r1 = base.weights()[1] / c.weights()[1];
        assert!((r0 - r1).abs() < 1e-10);
    }
    assert!(ratio > 0.0);
}

#[test]
fn cocycle_in_single_precision() {
    let pair = example_3_1_pair::<f32>().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let words = GroupWord::random_pairs(&mut rng, 3, 6, 30);
    let report = verify_multiplier(&pair, &words, &segment_points(4), 1e-5f32);
    assert!(report.passed(), "max violation {}", report.max_violation());
}
