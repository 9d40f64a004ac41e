use std::fs;

use conekit_core::triviality::{
    boundedness_scan, build_example_8_1, coset_equivalent, coset_fixtures, solve_coboundary, OrbitGraph, RSequence,
    SolveOptions, TrivialityVerdict,
};
use conekit_core::{tolerance, Error};
use serde_json::json;

use super::rng;
use crate::error::{CliError, CliResult};
use crate::output::csv;
use crate::params::Params;
use crate::run::{CheckSummary, ScenarioResult};

fn verdict_ratio(v: &TrivialityVerdict<f64>) -> String {
    v.certificate().map(|c| c.ratio.to_string()).unwrap_or_default()
}

/// `x` to ten significant digits, trailing zeros removed.
fn compact(x: f64) -> String {
    let s = format!("{:.*}", (9 - x.abs().log10().floor() as i32).max(0) as usize, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn verdict_text(v: &TrivialityVerdict<f64>) -> String {
    match v {
        TrivialityVerdict::Trivial { .. } => "Trivial".into(),
        TrivialityVerdict::NonTrivial { certificate, .. } => format!("NonTrivial(ratio {})", compact(certificate.ratio)),
        TrivialityVerdict::Inconclusive { reason } => format!("Inconclusive({reason})"),
    }
}

pub(crate) fn example81(params: &Params) -> CliResult<ScenarioResult> {
    let n = params.usize("N", tolerance::DEFAULT_TRUNCATION)?;
    let product = params.positive("product", 0.5)?;
    let tol = params.positive("tol", 1e-10)?;
    let bound_length = params.usize("bound_length", 40)?;
    let sequence = match params.string("sequence", "geometric")?.as_str() {
        "geometric" => RSequence::Geometric {
            product,
            ratio: params.positive("ratio", 0.5)?,
        },
        "inverse-square" => RSequence::InverseSquare { product },
        other => return Err(CliError::config("sequence", format!("unknown sequence `{other}`"))),
    };
    if product >= 1.0 {
        return Err(CliError::config("product", "must lie in (0, 1)"));
    }
    let ex = build_example_8_1(n, sequence)?;
    let opts = SolveOptions::default();
    let y = solve_coboundary(&ex.graph_y, None, &opts)?;
    let s = solve_coboundary(&ex.graph_s, None, &opts)?;
    let expected = ex.expected_witness();
    let mut out = ScenarioResult::default();

    match y.witness() {
        Some(f) => {
            let err = f.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            out.checks.push(CheckSummary::measured("Y-trivial", err, tol, "witness vs partial products"));
            out.csv.push((
                "witness.csv".into(),
                csv(
                    "node,f,expected",
                    f.iter()
                        .zip(&expected)
                        .enumerate()
                        .map(|(i, (a, b))| vec![ex.graph_y.label(i).to_string(), a.to_string(), b.to_string()]),
                ),
            ));
        }
        None => out.checks.push(CheckSummary::flag("Y-trivial", false, verdict_text(&y))),
    }
    match s.certificate() {
        Some(c) if s.is_non_trivial() => out.checks.push(CheckSummary::measured(
            "S-nontrivial",
            (c.ratio - product).abs(),
            tol,
            c.description.clone(),
        )),
        _ => out.checks.push(CheckSummary::flag("S-nontrivial", false, verdict_text(&s))),
    }
    let (lo, hi) = boundedness_scan(&ex.graph_y, bound_length);
    out.detail("Y", verdict_text(&y));
    out.detail("S", verdict_text(&s));
    out.detail("nodes", ex.graph_y.node_count());
    out.detail("partial_product", ex.partial_product);
    out.detail("path_product_range", json!([lo, hi]));
    Ok(out)
}

fn load_graph(field: &str, path: &str) -> CliResult<OrbitGraph<f64>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    OrbitGraph::from_json(&text).map_err(|e| CliError::config(field, format!("{path}: {e}")))
}

pub(crate) fn coset(params: &Params, seed: u64) -> CliResult<ScenarioResult> {
    let opts = SolveOptions::default();
    let graph = params.string("graph", "")?;
    let graph2 = params.string("graph2", "")?;
    let expect = params.string("expect", "")?;
    let mut out = ScenarioResult::default();

    if graph.is_empty() {
        if !graph2.is_empty() {
            return Err(CliError::config("graph2", "needs `graph` as well"));
        }
        let count = params.usize("fixtures", 50)?;
        let fixtures = coset_fixtures(&mut rng(seed), count)?;
        let mut rows = Vec::new();
        let (mut wrong, mut inconclusive) = (0usize, 0usize);
        for fx in &fixtures {
            let v = coset_equivalent(&fx.sigma1, &fx.sigma2, &opts)?;
            match &v {
                TrivialityVerdict::Inconclusive { .. } => inconclusive += 1,
                _ if v.is_trivial() != fx.same_coset => wrong += 1,
                _ => {}
            }
            let expected = if fx.same_coset { "same" } else { "different" };
            rows.push(vec![fx.name.clone(), expected.into(), v.kind().into(), verdict_ratio(&v)]);
        }
        out.checks.push(CheckSummary::measured(
            "coset-fixtures",
            wrong as f64,
            0.0,
            format!("{wrong} false verdicts, {inconclusive} inconclusive of {count}"),
        ));
        out.csv.push(("verdicts.csv".into(), csv("fixture,expected,verdict,ratio", rows)));
        return Ok(out);
    }

    let g1 = load_graph("graph", &graph)?;
    let v = if graph2.is_empty() {
        solve_coboundary(&g1, None, &opts)?
    } else {
        let g2 = load_graph("graph2", &graph2)?;
        coset_equivalent(&g1, &g2, &opts).map_err(|e| match e {
            Error::InvalidGraph(m) => CliError::config("graph2", m),
            e => e.into(),
        })?
    };
    let check = match expect.as_str() {
        "" => CheckSummary::flag("coset", !matches!(v, TrivialityVerdict::Inconclusive { .. }), verdict_text(&v)),
        "same" => CheckSummary::flag("coset", v.is_trivial(), verdict_text(&v)),
        "different" => CheckSummary::flag("coset", v.is_non_trivial(), verdict_text(&v)),
        other => return Err(CliError::config("expect", format!("`{other}` is not same | different"))),
    };
    out.checks.push(check);
    out.detail("verdict", verdict_text(&v));
    let name = if graph2.is_empty() { graph } else { format!("{graph} / {graph2}") };
    out.csv.push((
        "verdicts.csv".into(),
        csv("fixture,expected,verdict,ratio", [vec![name, expect, v.kind().into(), verdict_ratio(&v)]]),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::compact;

    #[test]
    fn compact_formatting() {
        assert_eq!(compact(0.4999999999999999), "0.5");
        assert_eq!(compact(0.125), "0.125");
        assert_eq!(compact(1.5e-3), "0.0015");
        assert_eq!(compact(250.0), "250");
    }
}
