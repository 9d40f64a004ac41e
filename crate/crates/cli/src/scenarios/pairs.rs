use std::fs;
use std::sync::Arc;

use conekit_core::dynamics::models::{example_3_1, example_3_1_pair};
use conekit_core::dynamics::{
    induced_pair, multiplier_ratio, orbit_coverage, scale_multiplier, synthesize_action, verify_conic_pair,
    verify_multiplier_elements, ConicPair, Group, GroupModel, GroupWord, MatrixGroup, SemiConicPair,
};
use conekit_core::linalg::Matrix;
use conekit_core::msec::{barycenter_equivariance_check, radon_nikodym_check, resultant_equivariance_check, LiftedPair};
use conekit_core::scalar::relative_diff;
use conekit_core::{tolerance, AtomicMeasure, CheckReport, ConePoint, SectionFunctional};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::rng;
use crate::error::{CliError, CliResult};
use crate::output::csv;
use crate::params::Params;
use crate::run::{CheckSummary, ScenarioResult};

type Pair = ConicPair<f64, MatrixGroup<f64>>;

fn random_element(group: &MatrixGroup<f64>, rng: &mut ChaCha8Rng, max_len: usize) -> Matrix<f64> {
    let w = GroupWord::random(rng, group.generators().len(), max_len);
    group.evaluate(&w).expect("generator indices are in range")
}

fn random_section_point(l: &SectionFunctional<f64>, rng: &mut ChaCha8Rng) -> ConePoint<f64> {
    let raw: Vec<f64> = (0..l.dim()).map(|_| rng.gen_range(1e-6..1.0)).collect();
    let x = ConePoint::from_f64(&raw).expect("finite coordinates");
    x.scale(1.0 / l.eval(&x))
}

fn random_measure(l: &SectionFunctional<f64>, rng: &mut ChaCha8Rng) -> AtomicMeasure<f64> {
    let k = rng.gen_range(1..=5);
    let atoms: Vec<_> = (0..k).map(|_| (random_section_point(l, rng), rng.gen_range(0.05..1.0))).collect();
    AtomicMeasure::new(atoms).and_then(|m| m.normalize()).expect("positive weights")
}

/// Cocycle, condition (1) and affinity on seeded samples.
fn pair_checks(pair: &Pair, rng: &mut ChaCha8Rng, samples: usize, word_length: usize, tol: f64) -> (CheckReport, CheckReport, CheckReport) {
    let group = pair.group();
    let l = pair.section();
    let triples: Vec<_> = (0..samples)
        .map(|_| {
            (
                random_element(group, rng, word_length),
                random_element(group, rng, word_length),
                random_section_point(l, rng),
            )
        })
        .collect();
    let multiplier = verify_multiplier_elements(pair, &triples, tol);
    let quads: Vec<_> = (0..samples)
        .map(|_| {
            (
                random_element(group, rng, word_length),
                random_section_point(l, rng),
                random_section_point(l, rng),
                rng.gen_range(0.0..=1.0),
            )
        })
        .collect();
    let conic = verify_conic_pair(pair, &quads, tol);
    (multiplier, conic.condition, conic.affinity)
}

fn load_fixture(path: &str) -> CliResult<Params> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::config("fixture", format!("{path}: {e}")))?;
    let Value::Object(map) = value else {
        return Err(CliError::config("fixture", "must be a JSON object"));
    };
    for key in map.keys() {
        if !["generators", "section", "mutation"].contains(&key.as_str()) {
            return Err(CliError::config(format!("fixture.{key}"), "unknown fixture field"));
        }
    }
    Ok(Params::new(map))
}

fn build_pair(params: &Params) -> CliResult<Pair> {
    let gens: Vec<Vec<Vec<f64>>> = params.get(
        "generators",
        vec![
            vec![vec![2.0, 0.0], vec![0.0, 1.0]],
            vec![vec![1.0, 0.0], vec![0.0, 3.0]],
            vec![vec![0.0, 1.0], vec![1.0, 0.0]],
        ],
    )?;
    if gens.is_empty() {
        return Err(CliError::config("generators", "need at least one matrix"));
    }
    let mut matrices = Vec::new();
    for (i, rows) in gens.iter().enumerate() {
        let m = Matrix::from_rows(rows).map_err(|e| CliError::config(format!("generators[{i}]"), e.to_string()))?;
        if m.row_major().iter().any(|&v| v < 0.0) {
            return Err(CliError::config(format!("generators[{i}]"), "entries must be nonnegative"));
        }
        matrices.push(m);
    }
    let group = MatrixGroup::new(matrices).map_err(|e| CliError::config("generators", e.to_string()))?;
    let section: Vec<f64> = params.get("section", vec![1.0; group.dim()])?;
    let l = SectionFunctional::from_f64(&section).map_err(|e| CliError::config("section", e.to_string()))?;
    let probe: Vec<ConePoint<f64>> = (0..l.dim())
        .map(|i| {
            let mut e = vec![0.0; l.dim()];
            e[i] = 1.0;
            ConePoint::from_f64(&e).expect("unit vector")
        })
        .collect();
    let pair = induced_pair(Arc::new(group), l, &probe).map_err(|e| CliError::config("section", e.to_string()))?;
    match params.string("mutation", "none")?.as_str() {
        "none" => Ok(pair),
        "corrupt-sigma" => Ok(pair.map_sigma(|_, x, s| s * (1.0 + x.coords()[0]))),
        "sigma-squared" => Ok(pair.map_sigma(|_, _, s| s * s)),
        other => Err(CliError::config("mutation", format!("unknown mutation `{other}`"))),
    }
}

pub(crate) fn verify_pair(params: &Params, seed: u64) -> CliResult<ScenarioResult> {
    let fixture = params.string("fixture", "")?;
    let mut effective = if fixture.is_empty() { Params::default() } else { load_fixture(&fixture)? };
    effective.overlay(params);
    let pair = build_pair(&effective)?;
    let samples = params.usize("samples", 1000)?;
    let word_length = params.usize("word_length", tolerance::DEFAULT_WORD_LENGTH)?;
    let tol = params.positive("tol", tolerance::COMPOSITION)?;

    let mut rng = rng(seed);
    let (multiplier, condition, affinity) = pair_checks(&pair, &mut rng, samples, word_length, tol);
    let mut out = ScenarioResult::default();
    out.report("multiplier.csv", &multiplier);
    out.report("condition.csv", &condition);
    out.report("affinity.csv", &affinity);
    out.detail("mutation", effective.string("mutation", "none")?);
    Ok(out)
}

pub(crate) fn example31(params: &Params, seed: u64) -> CliResult<ScenarioResult> {
    let samples = params.usize("samples", 1000)?;
    let n_measures = params.usize("measures", 100)?;
    let word_length = params.usize("word_length", tolerance::DEFAULT_WORD_LENGTH)?;
    let orbit_length = params.usize("orbit_length", tolerance::DEFAULT_ORBIT_WORD_LENGTH)?;
    let orbit_tol = params.positive("orbit_tol", tolerance::ORBIT_COVERAGE)?;
    let tol = params.positive("tol", tolerance::COMPOSITION)?;

    let pair = example_3_1_pair::<f64>()?;
    let model = example_3_1::<f64>();
    let l = pair.section().clone();
    let mut rng = rng(seed);
    let mut out = ScenarioResult::default();

    let (multiplier, condition, affinity) = pair_checks(&pair, &mut rng, samples, word_length, tol);
    out.report("multiplier.csv", &multiplier);
    out.report("condition.csv", &condition);
    out.report("affinity.csv", &affinity);

    let squared = pair.map_sigma(|_, _, s| s * s);
    let (_, _, squared_affinity) = pair_checks(&squared, &mut rng, samples.min(100), word_length, tol);
    let v = squared_affinity.max_violation();
    out.checks.push(CheckSummary::flag(
        "sigma-squared-detected",
        v > 1e-3,
        format!("affinity violation {v:e}"),
    ));

    let validation: Vec<_> = (0..50)
        .map(|_| {
            (
                random_element(&model, &mut rng, word_length),
                random_section_point(&l, &mut rng),
                random_section_point(&l, &mut rng),
                rng.gen_range(0.0..=1.0),
            )
        })
        .collect();
    let tau = synthesize_action(&pair, &validation, tol)?;
    let again = induced_pair(Arc::new(tau), l.clone(), &[])?;
    let mut synthesis = CheckReport::new("synthesis-round-trip", tolerance::IDENTITY);
    for i in 0..samples {
        let g = random_element(&model, &mut rng, word_length);
        let x = random_section_point(&l, &mut rng);
        let (s0, s1) = (pair.sigma(&g, &x), again.sigma(&g, &x));
        let (r0, r1) = (pair.rho(&g, &x), again.rho(&g, &x));
        let violation = relative_diff(s0, s1).max(r0.max_abs_diff(&r1));
        let lhs = [vec![s1], r1.to_f64_vec()].concat();
        let rhs = [vec![s0], r0.to_f64_vec()].concat();
        synthesis.push(format!("sample#{i}"), lhs, rhs, violation);
    }
    out.report("synthesis.csv", &synthesis);

    let element_pairs: Vec<_> = (0..100)
        .map(|_| (random_element(&model, &mut rng, word_length), random_element(&model, &mut rng, word_length)))
        .collect();
    let abs_det = |g: &Matrix<f64>| g.det().abs();
    let scaled = scale_multiplier(&pair, abs_det, &element_pairs, tol)?;
    let probe: Vec<_> = (0..8).map(|_| random_section_point(&l, &mut rng)).collect();
    let mut scaling = CheckReport::new("multiplier-scaling", tol);
    for (i, (g, h)) in element_pairs.iter().enumerate() {
        let ratio = |m: &Matrix<f64>| multiplier_ratio(&pair, &scaled, m, &probe, tol);
        match (ratio(g), ratio(h), ratio(&model.compose(g, h))) {
            (Ok(a), Ok(b), Ok(ab)) => {
                scaling.push(format!("pair#{i} | a(g)"), vec![a], vec![abs_det(g)], relative_diff(a, abs_det(g)));
                scaling.push(format!("pair#{i} | a(gh)"), vec![ab], vec![a * b], relative_diff(ab, a * b));
            }
            _ => scaling.push(format!("pair#{i} | ratio not constant"), vec![], vec![], f64::INFINITY),
        }
    }
    out.report("scaling.csv", &scaling);

    let x0 = ConePoint::from_f64(&[0.4, 0.6])?;
    let targets = [ConePoint::from_f64(&[1.0, 0.0])?, ConePoint::from_f64(&[0.0, 1.0])?];
    let coverage = orbit_coverage(&pair, &x0, &targets, orbit_length, orbit_tol);
    let worst = coverage.min_distances.iter().copied().fold(0.0, f64::max);
    out.checks.push(CheckSummary::measured(
        "orbit-coverage",
        worst,
        orbit_tol,
        format!("{} orbit points over {} levels", coverage.orbit_size, coverage.levels_explored),
    ));
    out.csv.push((
        "orbit.csv".into(),
        csv(
            "target,min_distance",
            targets
                .iter()
                .zip(&coverage.min_distances)
                .map(|(t, d)| vec![t.to_string(), d.to_string()]),
        ),
    ));

    let lift = LiftedPair::new(pair.clone());
    let measures: Vec<AtomicMeasure<f64>> = (0..n_measures).map(|_| random_measure(&l, &mut rng)).collect();
    let lift_triples: Vec<_> = measures
        .iter()
        .map(|nu| {
            (
                random_element(&model, &mut rng, word_length),
                random_element(&model, &mut rng, word_length),
                nu.clone(),
            )
        })
        .collect();
    let mut lifted = verify_multiplier_elements(&lift, &lift_triples, tol);
    lifted.name = "lift-multiplier".into();
    out.report("lift_multiplier.csv", &lifted);

    let moved: Vec<_> = measures
        .iter()
        .map(|nu| (random_element(&model, &mut rng, word_length), nu.clone()))
        .collect();
    out.report("barycenter.csv", &barycenter_equivariance_check(&pair, &lift, &moved, tol));
    let scaled_measures: Vec<_> = moved
        .iter()
        .map(|(g, nu)| (g.clone(), nu.scale(rng.gen_range(0.5..3.0)).expect("positive scale")))
        .collect();
    out.report("resultant.csv", &resultant_equivariance_check(&pair, &model, &scaled_measures, tol));
    out.report(
        "radon_nikodym.csv",
        &radon_nikodym_check(&lift, &moved, tolerance::RADON_NIKODYM),
    );
    Ok(out)
}
