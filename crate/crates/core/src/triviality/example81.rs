//! The `Z`-action `a_n ↦ a_{n+1}` on `{a_n} ∪ {0, 1}` with `a_n → 0` as
//! `n → ∞` and `a_n → 1` as `n → −∞`, and its quotient gluing `0` to `1`.

use super::graph::OrbitGraph;
use crate::error::{Error, Result};
use crate::scalar::pairwise_sum;
use crate::tolerance;

/// A positive sequence `r_n` (`r_n = 1` for `n ≤ 0`) with a known infinite
/// product `P = ∏_{n≥1} r_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RSequence {
    /// `ln r_n = ln P · (1 − q) q^{n−1}`, `0 < q < 1`.
    Geometric { product: f64, ratio: f64 },
    /// `ln r_n = ln P · 6 / (π² n²)`; converges far too slowly for
    /// moderate truncations.
    InverseSquare { product: f64 },
}

impl Default for RSequence {
    fn default() -> Self {
        Self::Geometric { product: 0.5, ratio: 0.5 }
    }
}

impl RSequence {
    pub fn product(&self) -> f64 {
        match *self {
            Self::Geometric { product, .. } | Self::InverseSquare { product } => product,
        }
    }

    pub fn ln_r(&self, n: i64) -> f64 {
        if n <= 0 {
            return 0.0;
        }
        match *self {
            Self::Geometric { product, ratio } => product.ln() * (1.0 - ratio) * ratio.powi((n - 1) as i32),
            Self::InverseSquare { product } => product.ln() * 6.0 / (std::f64::consts::PI.powi(2) * (n * n) as f64),
        }
    }

    pub fn r(&self, n: i64) -> f64 {
        self.ln_r(n).exp()
    }

    /// `∏_{k=1}^{n} r_k`, `1` for `n ≤ 0`.
    pub fn partial_product(&self, n: i64) -> f64 {
        let logs: Vec<f64> = (1..=n).map(|k| self.ln_r(k)).collect();
        pairwise_sum(&logs).exp()
    }

    fn validate(&self) -> Result<()> {
        let p = self.product();
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::InvalidArgument(format!("infinite product must be positive, got {p}")));
        }
        if let Self::Geometric { ratio, .. } = *self {
            if !(ratio > 0.0 && ratio < 1.0) {
                return Err(Error::InvalidArgument(format!("geometric ratio must lie in (0, 1), got {ratio}")));
            }
        }
        Ok(())
    }
}

pub fn node_label(n: i64) -> String {
    format!("a{n}")
}

#[derive(Debug, Clone)]
pub struct Example81 {
    pub truncation: usize,
    pub sequence: RSequence,
    pub partial_product: f64,
    /// The space with `0` and `1` distinct.
    pub graph_y: OrbitGraph<f64>,
    /// The quotient with `0` and `1` identified.
    pub graph_s: OrbitGraph<f64>,
}

impl Example81 {
    /// The coboundary of the multiplier on `Y`, normalized at `a_0`:
    /// partial products on `a_n`, `1` for `n < 0`, `P` at `0` and `1` at `1`.
    pub fn expected_witness(&self) -> Vec<f64> {
        self.graph_y
            .labels()
            .iter()
            .map(|label| match label.as_str() {
                "0" => self.sequence.product(),
                "1" => 1.0,
                a => self.sequence.partial_product(a[1..].parse::<i64>().expect("node label a<n>")),
            })
            .collect()
    }
}

/// Builds the truncated orbit `a_{−N}..a_N` with the two fixed points.
///
/// Node order is `a0, a1..aN, a-1..a-N, 0, 1`, so the default base is `a0`.
/// Fails with [`Error::NotConverged`] unless the partial product at `N`
/// is within [`tolerance::PARTIAL_PRODUCT`] of the declared product.
pub fn build_example_8_1(truncation: usize, sequence: RSequence) -> Result<Example81> {
    if truncation < 2 {
        return Err(Error::InvalidArgument(format!("truncation must be at least 2, got {truncation}")));
    }
    sequence.validate()?;
    let n = truncation as i64;
    let partial = sequence.partial_product(n);
    if (partial - sequence.product()).abs() > tolerance::PARTIAL_PRODUCT {
        return Err(Error::NotConverged {
            n: truncation,
            partial,
            target: sequence.product(),
        });
    }

    let mut g = OrbitGraph::new();
    for k in (0..=n).chain((1..=n).map(|k| -k)) {
        g.add_node(node_label(k));
    }
    let zero = g.add_node("0");
    let one = g.add_node("1");
    let idx = |g: &OrbitGraph<f64>, k: i64| g.node(&node_label(k)).expect("node exists");
    for k in -n..n {
        let (a, b) = (idx(&g, k), idx(&g, k + 1));
        g.add_edge(a, b, "T", sequence.r(k + 1))?;
    }
    g.add_edge(zero, zero, "T", 1.0)?;
    g.add_edge(one, one, "T", 1.0)?;
    let forward = (1..=n).map(|k| idx(&g, k)).collect();
    let backward = (1..=n).map(|k| idx(&g, -k)).collect();
    g.add_limit(forward, zero)?;
    g.add_limit(backward, one)?;

    let mut s = g.clone();
    s.identify(zero, one)?;
    Ok(Example81 {
        truncation,
        sequence,
        partial_product: partial,
        graph_y: g,
        graph_s: s,
    })
}
