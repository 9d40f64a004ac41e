use conekit_core::dynamics::models::example_3_1_pair;
use conekit_core::dynamics::{Group, GroupWord, SemiConicPair};
use conekit_core::msec::{barycenter_equivariance_check, radon_nikodym_check, LiftedPair};
use conekit_core::scalar::relative_diff;
use conekit_core::{AtomicMeasure, ConePoint};
use proptest::prelude::*;

fn measure() -> impl Strategy<Value = AtomicMeasure<f64>> {
    prop::collection::vec((0.0f64..=1.0, 0.05f64..1.0), 1..6).prop_map(|raw| {
        AtomicMeasure::new(raw.into_iter().map(|(t, w)| (ConePoint::from_f64(&[t, 1.0 - t]).unwrap(), w)))
            .unwrap()
            .normalize()
            .unwrap()
    })
}

fn word() -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((0usize..3, prop::bool::ANY), 0..=12).prop_map(|letters| {
        let pairs: Vec<(usize, i8)> = letters.into_iter().map(|(g, inv)| (g, if inv { -1 } else { 1 })).collect();
        GroupWord::from_exponents(&pairs).unwrap()
    })
}

proptest! {
    #[test]
    fn dirac_restriction(w in word(), t in 0.0f64..=1.0) {
        let lift = LiftedPair::new(example_3_1_pair::<f64>().unwrap());
        let g = lift.group().evaluate(&w).unwrap();
        let y = ConePoint::from_f64(&[t, 1.0 - t]).unwrap();
        let d = AtomicMeasure::dirac(y.clone());
        prop_assert_eq!(lift.sigma_tilde(&g, &d).unwrap(), lift.base().sigma(&g, &y));
        let moved = lift.rho_tilde(&g, &d).unwrap();
        prop_assert_eq!(moved.len(), 1);
        prop_assert!(moved.atoms()[0].point.max_abs_diff(&lift.base().rho(&g, &y)) < 1e-15);
    }

    #[test]
    fn sigma_tilde_is_affine(w in word(), nu in measure(), kappa in measure(), lambda in 0.0f64..=1.0) {
        let lift = LiftedPair::new(example_3_1_pair::<f64>().unwrap());
        let g = lift.group().evaluate(&w).unwrap();
        let mix = nu.combine(lambda, &kappa, 1.0 - lambda).unwrap();
        let lhs = lift.sigma_tilde(&g, &mix).unwrap();
        let rhs = lambda * lift.sigma_tilde(&g, &nu).unwrap() + (1.0 - lambda) * lift.sigma_tilde(&g, &kappa).unwrap();
        prop_assert!(relative_diff(lhs, rhs) <= 1e-12);
    }

    #[test]
    fn lifted_multiplier_law(w1 in word(), w2 in word(), nu in measure()) {
        let lift = LiftedPair::new(example_3_1_pair::<f64>().unwrap());
        let (g, h) = (lift.group().evaluate(&w1).unwrap(), lift.group().evaluate(&w2).unwrap());
        let gh = lift.group().compose(&g, &h);
        let lhs = lift.sigma_tilde(&gh, &nu).unwrap();
        let rhs = lift.sigma_tilde(&h, &nu).unwrap() * lift.sigma_tilde(&g, &lift.rho_tilde(&h, &nu).unwrap()).unwrap();
        prop_assert!(relative_diff(lhs, rhs) <= 1e-10);
        prop_assert!(lift.rho_tilde(&h, &nu).unwrap().is_probability(1e-12));
    }

    #[test]
    fn barycenter_and_density_checks(w in word(), nu in measure()) {
        let pair = example_3_1_pair::<f64>().unwrap();
        let lift = LiftedPair::new(pair.clone());
        let g = pair.group().evaluate(&w).unwrap();
        prop_assert!(barycenter_equivariance_check(&pair, &lift, &[(g.clone(), nu.clone())], 1e-10).passed());
        prop_assert!(radon_nikodym_check(&lift, &[(g, nu)], 1e-9).passed());
    }
}
