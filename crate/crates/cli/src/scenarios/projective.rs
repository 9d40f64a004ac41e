use std::f64::consts::PI;

use conekit_core::dynamics::{verify_multiplier_elements, SemiConicPair};
use conekit_core::sl2::{
    excise, fixed_measure_check, hyperbolic_directions, proximality_concentration, quadrature_measure, random_rotation,
    random_sl2, v_sigma_equivariance_check, v_sigma_sample, Mat2, MultiplierS, P1Pair, P1Point, Sl2Group,
};
use conekit_core::tolerance;
use rand::Rng;

use super::rng;
use crate::error::{CliError, CliResult};
use crate::output::csv;
use crate::params::Params;
use crate::run::{CheckSummary, ScenarioResult};

fn element(params: &Params) -> CliResult<Mat2<f64>> {
    match params.get_opt::<Vec<f64>>("matrix")? {
        Some(m) => {
            let m: [f64; 4] = m
                .try_into()
                .map_err(|m: Vec<f64>| CliError::config("matrix", format!("need 4 entries, got {}", m.len())))?;
            Mat2::from_f64(m).map_err(|e| CliError::config("matrix", e.to_string()))
        }
        None => {
            let a = params.positive("a", 2.0)?;
            Mat2::diagonal(a).map_err(|e| CliError::config("a", e.to_string()))
        }
    }
}

pub(crate) fn fixed(params: &Params) -> CliResult<ScenarioResult> {
    let g = element(params)?;
    let s = params.f64("s", 1.0)?;
    let n = params.usize("N", 2048)?;
    let tol = params.positive("tol", tolerance::FIXED_MEASURE)?;
    let report = fixed_measure_check(&g, s, n, tol)?;
    let mut out = ScenarioResult::default();
    out.checks.push(CheckSummary::measured(
        "sigma-tilde",
        (report.sigma_tilde - 1.0).abs(),
        tol,
        format!("sigma-tilde = {}", report.sigma_tilde),
    ));
    out.checks.push(CheckSummary::measured("harmonics", report.max_residual(), tol, "order <= 4"));
    let ms = MultiplierS::new(s);
    let m = quadrature_measure::<f64>(n)?;
    out.csv.push((
        "sigma.csv".into(),
        csv(
            "theta,sigma",
            m.atoms().iter().map(|a| vec![a.point.theta().to_string(), ms.eval(&g, &a.point).to_string()]),
        ),
    ));
    out.csv.push((
        "residuals.csv".into(),
        csv("harmonic,residual", report.residuals.iter().map(|(k, r)| vec![k.clone(), r.to_string()])),
    ));
    out.detail("sigma_tilde", report.sigma_tilde);
    Ok(out)
}

pub(crate) fn concentration(params: &Params) -> CliResult<ScenarioResult> {
    let g = element(params)?;
    let n = params.usize("N", 1024)?;
    let radius = params.f64("excise", 1e-3)?;
    let iterations = params.usize("iterations", 12)?;
    let epsilon = params.positive("epsilon", 0.01)?;
    let target = params.positive("target", 0.99)?;
    if radius < 0.0 {
        return Err(CliError::config("excise", "must be nonnegative"));
    }
    let (attracting, repelling) = hyperbolic_directions(&g)?;
    let nu = excise(&quadrature_measure(n)?, &repelling, radius)?;
    let curve = proximality_concentration(&g, &nu, iterations, epsilon)?;
    let last = *curve.last().expect("iterations + 1 values");
    let mut out = ScenarioResult::default();
    out.checks.push(CheckSummary::flag(
        "concentration",
        last > target,
        format!("mass {last} after {iterations} iterations, target {target}"),
    ));
    let drop = curve.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max);
    out.checks.push(CheckSummary::measured("monotone", drop, tolerance::WEIGHT_SUM, "largest decrease"));
    out.csv.push((
        "curve.csv".into(),
        csv("n,mass", curve.iter().enumerate().map(|(i, m)| vec![i.to_string(), m.to_string()])),
    ));
    out.detail("attracting", attracting.theta());
    out.detail("repelling", repelling.theta());
    Ok(out)
}

pub(crate) fn vsigma(params: &Params, seed: u64) -> CliResult<ScenarioResult> {
    let s = params.f64("s", 1.0)?;
    let s_list: Vec<f64> = params.get("s_list", vec![-1.0, 0.0, 0.5, 1.0, 2.0])?;
    let rows = params.usize("group_points", 8)?;
    let cols = params.usize("base_points", 16)?;
    let samples = params.usize("samples", 1000)?;
    let tol = params.positive("tol", tolerance::COMPOSITION)?;
    let k_tol = params.positive("k_tol", tolerance::IDENTITY)?;
    let mut rng = rng(seed);
    let random_point = |rng: &mut rand_chacha::ChaCha8Rng| P1Point::new(rng.gen_range(0.0..PI));

    let gs: Vec<Mat2<f64>> = (0..rows).map(|_| random_sl2(&mut rng, 1.0)).collect();
    let ys: Vec<P1Point<f64>> = (0..cols).map(|_| random_point(&mut rng)).collect();
    let ms = MultiplierS::new(s);
    let matrix = v_sigma_sample(&ms, &gs, &ys).map_err(|e| CliError::config("group_points", e.to_string()))?;
    let header = ["row,a,b,c,d".to_string()]
        .into_iter()
        .chain((0..cols).map(|j| format!("y{j}")))
        .collect::<Vec<_>>()
        .join(",");
    let body = matrix.iter().zip(&gs).enumerate().map(|(i, (values, g))| {
        [i.to_string()]
            .into_iter()
            .chain(g.entries().iter().map(|v| v.to_string()))
            .chain(values.iter().map(|v| v.to_string()))
            .collect::<Vec<_>>()
    });
    let mut out = ScenarioResult::default();
    out.csv.push(("matrix.csv".into(), csv(&header, body)));

    let triples: Vec<_> = (0..samples)
        .map(|_| (random_sl2(&mut rng, 1.0), random_sl2(&mut rng, 1.0), random_point(&mut rng)))
        .collect();
    out.report("equivariance.csv", &v_sigma_equivariance_check(&ms, &triples, tol));

    let group = Sl2Group::new(vec![]);
    let mut k_dev = 0.0f64;
    let rotations: Vec<Mat2<f64>> = (0..samples).map(|_| random_rotation(&mut rng)).collect();
    for &si in &s_list {
        let pair = P1Pair::new(group.clone(), si);
        let mut report = verify_multiplier_elements(&pair, &triples, tol);
        report.name = format!("cocycle s={si}");
        out.checks.push(CheckSummary::from_report(&report));
        for (k, y) in rotations.iter().zip(triples.iter().map(|t| &t.2)) {
            k_dev = k_dev.max((pair.sigma(k, y) - 1.0).abs());
        }
    }
    out.checks.push(CheckSummary::measured(
        "k-multiplier",
        k_dev,
        k_tol,
        format!("{} rotations x {} exponents", rotations.len(), s_list.len()),
    ));
    Ok(out)
}
