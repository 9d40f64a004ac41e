use std::sync::Arc;

use conekit_core::dynamics::models::{example_3_1, example_3_1_pair, monomial_2x2, segment_points};
use conekit_core::dynamics::{
    induced_pair, multiplier_ratio, scale_multiplier, synthesize_action, verify_conic_pair, verify_multiplier_elements, Group,
    GroupModel, GroupWord, SemiConicPair,
};
use conekit_core::scalar::relative_diff;
use conekit_core::{ConePoint, SectionFunctional};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word() -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((0usize..3, prop::bool::ANY), 0..=20).prop_map(|letters| {
        let pairs: Vec<(usize, i8)> = letters.into_iter().map(|(g, inv)| (g, if inv { -1 } else { 1 })).collect();
        GroupWord::from_exponents(&pairs).unwrap()
    })
}

fn section_point() -> impl Strategy<Value = ConePoint<f64>> {
    (0.0f64..=1.0).prop_map(|t| ConePoint::from_f64(&[t, 1.0 - t]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn cocycle_identity(g in word(), h in word(), x in section_point()) {
        let pair = example_3_1_pair::<f64>().unwrap();
        let (g, h) = (pair.group().evaluate(&g).unwrap(), pair.group().evaluate(&h).unwrap());
        let report = verify_multiplier_elements(&pair, &[(g, h, x)], 1e-10);
        prop_assert!(report.passed(), "{}", report.max_violation());
    }

    #[test]
    fn reconstruction(g in word(), x in section_point()) {
        let model = example_3_1::<f64>();
        let pair = example_3_1_pair::<f64>().unwrap();
        let g = model.evaluate(&g).unwrap();
        let direct = model.act(&g, &x);
        let rebuilt = pair.rho(&g, &x).scale(pair.sigma(&g, &x));
        prop_assert!(direct.distance(&rebuilt) <= 1e-13 * direct.norm());
    }

    #[test]
    fn condition_one(g in word(), x1 in section_point(), x2 in section_point(), lambda in 0.0f64..=1.0) {
        let pair = example_3_1_pair::<f64>().unwrap();
        let g = pair.group().evaluate(&g).unwrap();
        prop_assert!(verify_conic_pair(&pair, &[(g, x1, x2, lambda)], 1e-10).passed());
    }

    #[test]
    fn determinant_scaling_is_x_independent(g in word(), h in word()) {
        let group = Arc::new(monomial_2x2::<f64>());
        let pair = induced_pair(group.clone(), SectionFunctional::from_f64(&[1.0, 1.0]).unwrap(), &segment_points(4)).unwrap();
        let (g, h) = (group.evaluate(&g).unwrap(), group.evaluate(&h).unwrap());
        let scaled = scale_multiplier(&pair, |m| m.det().abs(), &[(g.clone(), h.clone())], 1e-10).unwrap();
        let pts = segment_points(9);
        let a = |m| multiplier_ratio(&pair, &scaled, m, &pts, 1e-10).unwrap();
        prop_assert!(relative_diff(a(&g), g.det().abs()) <= 1e-10);
        let gh = group.compose(&g, &h);
        prop_assert!(relative_diff(a(&gh), a(&g) * a(&h)) <= 1e-10);
    }
}

#[test]
fn synthesis_round_trip_thousand_samples() {
    use rand::Rng;
    let pair = example_3_1_pair::<f64>().unwrap();
    let model = example_3_1::<f64>();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let validation = vec![(model.evaluate(&GroupWord::random(&mut rng, 3, 5)).unwrap(), segment_points(3)[0].clone(), segment_points(3)[2].clone(), 0.3)];
    let tau = Arc::new(synthesize_action(&pair, &validation, 1e-10).unwrap());
    let again = induced_pair(tau, pair.section().clone(), &segment_points(4)).unwrap();
    for _ in 0..1000 {
        let g = model.evaluate(&GroupWord::random(&mut rng, 3, 20)).unwrap();
        let t: f64 = rng.gen_range(0.0..=1.0);
        let x = ConePoint::from_f64(&[t, 1.0 - t]).unwrap();
        assert!(relative_diff(again.sigma(&g, &x), pair.sigma(&g, &x)) <= 1e-12);
        assert!(again.rho(&g, &x).max_abs_diff(&pair.rho(&g, &x)) <= 1e-12);
    }
}
