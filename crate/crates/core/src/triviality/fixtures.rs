//! Seeded coset-test fixtures with known answers.

use rand::Rng;

use super::example81::{build_example_8_1, RSequence};
use super::graph::OrbitGraph;
use crate::error::Result;
use crate::tolerance;

#[derive(Debug, Clone)]
pub struct CosetFixture {
    pub name: String,
    pub sigma1: OrbitGraph<f64>,
    pub sigma2: OrbitGraph<f64>,
    /// Whether `σ₂ / σ₁` is a trivial multiplier.
    pub same_coset: bool,
    /// The `f` used to build a same-coset fixture, if any.
    pub density: Option<Vec<f64>>,
}

fn ring<R: Rng + ?Sized>(rng: &mut R) -> Result<OrbitGraph<f64>> {
    let k = rng.gen_range(3..=8);
    let mut g = OrbitGraph::new();
    for i in 0..k {
        g.add_node(format!("v{i}"));
    }
    for i in 0..k {
        g.add_edge(i, (i + 1) % k, "g", rng.gen_range(-1.0f64..1.0).exp())?;
    }
    for _ in 0..k / 2 {
        let (u, v) = (rng.gen_range(0..k), rng.gen_range(0..k));
        g.add_edge(u, v, "h", rng.gen_range(-1.0f64..1.0).exp())?;
    }
    Ok(g)
}

fn random_product<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    if rng.gen_bool(0.5) {
        rng.gen_range(0.2..0.8)
    } else {
        rng.gen_range(1.25..3.0)
    }
}

/// A density on the two-sided shift nodes that is continuous at both limits:
/// `f(a_n) = A + B 2^{−n}` for `n ≥ 0`, `C + D 2^{n}` for `n < 0`,
/// `f(0) = A`, `f(1) = C`.
fn continuous_density<R: Rng + ?Sized>(rng: &mut R, graph: &OrbitGraph<f64>, glue: bool) -> Vec<f64> {
    let a = rng.gen_range(0.5..2.0);
    let c = if glue { a } else { rng.gen_range(0.5..2.0) };
    let (b, d) = (rng.gen_range(-0.4..0.4), rng.gen_range(-0.4..0.4));
    graph
        .labels()
        .iter()
        .map(|label| match label.as_str() {
            "0" => a,
            "1" => c,
            l => {
                let n: i64 = l[1..].parse().expect("node label a<n>");
                if n >= 0 {
                    a + b * 0.5f64.powi(n as i32)
                } else {
                    c + d * 0.5f64.powi((-n) as i32)
                }
            }
        })
        .collect()
}

/// The `i`-th fixture; the five kinds cycle with `i`.
pub fn coset_fixture<R: Rng + ?Sized>(rng: &mut R, i: usize) -> Result<CosetFixture> {
    let truncation = tolerance::DEFAULT_TRUNCATION;
    match i % 5 {
        0 => {
            let sigma1 = ring(rng)?;
            let f: Vec<f64> = (0..sigma1.node_count()).map(|_| rng.gen_range(-2.0f64..2.0).exp()).collect();
            let sigma2 = sigma1.reweighted(&f)?;
            Ok(CosetFixture {
                name: format!("ring-trivial-{i}"),
                sigma1,
                sigma2,
                same_coset: true,
                density: Some(f),
            })
        }
        1 => {
            let ex = build_example_8_1(truncation, RSequence::Geometric {
                product: random_product(rng),
                ratio: 0.5,
            })?;
            let f = continuous_density(rng, &ex.graph_y, false);
            let sigma2 = ex.graph_y.reweighted(&f)?;
            Ok(CosetFixture {
                name: format!("example81-y-trivial-{i}"),
                sigma1: ex.graph_y,
                sigma2,
                same_coset: true,
                density: Some(f),
            })
        }
        2 => {
            let ex = build_example_8_1(truncation, RSequence::Geometric {
                product: random_product(rng),
                ratio: rng.gen_range(0.3..0.6),
            })?;
            let ones = vec![1.0; ex.graph_s.edges().len()];
            Ok(CosetFixture {
                name: format!("example81-s-eta-{i}"),
                sigma1: ex.graph_s.with_sigmas(&ones)?,
                sigma2: ex.graph_s,
                same_coset: false,
                density: None,
            })
        }
        3 => {
            let sigma1 = ring(rng)?;
            let mut sigmas = sigma1.sigmas();
            sigmas[0] *= rng.gen_range(1.5..3.0);
            let sigma2 = sigma1.with_sigmas(&sigmas)?;
            Ok(CosetFixture {
                name: format!("ring-cycle-{i}"),
                sigma1,
                sigma2,
                same_coset: false,
                density: None,
            })
        }
        _ => {
            let ex = build_example_8_1(truncation, RSequence::default())?;
            let f = continuous_density(rng, &ex.graph_s, true);
            let sigma2 = ex.graph_s.reweighted(&f)?;
            Ok(CosetFixture {
                name: format!("example81-s-trivial-{i}"),
                sigma1: ex.graph_s,
                sigma2,
                same_coset: true,
                density: Some(f),
            })
        }
    }
}

pub fn coset_fixtures<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Result<Vec<CosetFixture>> {
    (0..count).map(|i| coset_fixture(rng, i)).collect()
}
