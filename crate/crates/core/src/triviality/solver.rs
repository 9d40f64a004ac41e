//! Coboundary solving in log space.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::graph::OrbitGraph;
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::scalar::{lit, to_f64, Real};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Allowed `|log ratio|` on every constraint.
    pub log_tol: f64,
    /// Allowed spread of `log f` over the tail of a limit sequence.
    pub cauchy_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            log_tol: tolerance::TRIVIALITY_LOG,
            cauchy_tol: tolerance::CAUCHY,
        }
    }
}

/// The constraint a certificate refers to, by index into the graph's lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "kebab-case")]
pub enum Constraint {
    Edge(usize),
    Identification(usize),
    Limit(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub constraint: Constraint,
    pub description: String,
    /// For an edge `σ f(from) / f(to)`, for an identification `f(u) / f(v)`,
    /// for a limit `f(limit) / lim f(seq)`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrivialityVerdict<T> {
    /// `f` indexed by node, `f(base) = 1`.
    Trivial { witness: Vec<T> },
    /// `values` is the propagated `f` the certificate was evaluated against.
    NonTrivial { certificate: Certificate, values: Vec<T> },
    Inconclusive { reason: String },
}

impl<T: Real> TrivialityVerdict<T> {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Self::Trivial { .. })
    }

    pub fn is_non_trivial(&self) -> bool {
        matches!(self, Self::NonTrivial { .. })
    }

    pub fn witness(&self) -> Option<&[T]> {
        match self {
            Self::Trivial { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Self::NonTrivial { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Trivial { .. } => "Trivial",
            Self::NonTrivial { .. } => "NonTrivial",
            Self::Inconclusive { .. } => "Inconclusive",
        }
    }
}

fn cauchy_tail<T: Real>(log_f: &[T], seq: &[usize], tol: f64) -> Option<T> {
    let window = seq.len().div_ceil(4).max(2).min(seq.len());
    let tail = &seq[seq.len() - window..];
    let (lo, hi) = tail
        .iter()
        .map(|&i| log_f[i])
        .fold((T::infinity(), T::neg_infinity()), |(a, b), v| (a.min(v), b.max(v)));
    if to_f64(hi - lo) <= tol {
        Some(log_f[*seq.last().expect("nonempty sequence")])
    } else {
        None
    }
}

/// Ratio of a constraint under node values `f`.
pub fn constraint_ratio<T: Real>(graph: &OrbitGraph<T>, constraint: Constraint, f: &[T]) -> f64 {
    match constraint {
        Constraint::Edge(i) => {
            let e = &graph.edges()[i];
            to_f64(e.sigma * f[e.from] / f[e.to])
        }
        Constraint::Identification(i) => {
            let (u, v) = graph.identifications()[i];
            to_f64(f[u] / f[v])
        }
        Constraint::Limit(i) => {
            let l = &graph.limits()[i];
            to_f64(f[l.limit] / f[*l.seq.last().expect("nonempty sequence")])
        }
    }
}

/// Decides whether the edge weights are a coboundary `σ(e) = f(to)/f(from)`
/// for a positive `f` compatible with the identifications and limits.
///
/// Each edge-connected component is solved along a spanning tree. Limits
/// whose sequence passes its Cauchy check then link components: the limit
/// node's value is the last value along the sequence. Identifications are
/// only checked, never used to propagate. `base` defaults to the first node.
pub fn solve_coboundary<T: Real>(graph: &OrbitGraph<T>, base: Option<&str>, opts: &SolveOptions) -> Result<TrivialityVerdict<T>> {
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::Empty("graph has no nodes"));
    }
    let base = match base {
        Some(label) => graph
            .node(label)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown base node {label}")))?,
        None => 0,
    };

    let mut adjacency: Vec<Vec<(usize, T, usize)>> = vec![Vec::new(); n];
    for (i, e) in graph.edges().iter().enumerate() {
        let ls = e.sigma.ln();
        adjacency[e.from].push((e.to, ls, i));
        adjacency[e.to].push((e.from, -ls, i));
    }

    let mut comp: Vec<Option<usize>> = vec![None; n];
    let mut rel = vec![T::zero(); n];
    let mut tree_edges = HashSet::new();
    let mut n_comp = 0;
    for start in std::iter::once(base).chain(0..n) {
        if comp[start].is_some() {
            continue;
        }
        comp[start] = Some(n_comp);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &(v, delta, e) in &adjacency[u] {
                if comp[v].is_none() {
                    comp[v] = Some(n_comp);
                    rel[v] = rel[u] + delta;
                    tree_edges.insert(e);
                    queue.push_back(v);
                }
            }
        }
        n_comp += 1;
    }
    let comp: Vec<usize> = comp.into_iter().map(|c| c.expect("every node visited")).collect();

    // links between components: offset[b] = offset[a] + delta
    let mut links: Vec<Vec<(usize, T, usize)>> = vec![Vec::new(); n_comp];
    let mut failed_cauchy: Vec<usize> = Vec::new();
    for (i, l) in graph.limits().iter().enumerate() {
        let c_seq = comp[l.seq[0]];
        let c_lim = comp[l.limit];
        if c_seq == c_lim || l.seq.iter().any(|&s| comp[s] != c_seq) {
            continue;
        }
        match cauchy_tail(&rel, &l.seq, opts.cauchy_tol) {
            Some(value) => {
                let delta = value - rel[l.limit];
                links[c_seq].push((c_lim, delta, i));
                links[c_lim].push((c_seq, -delta, i));
            }
            None => failed_cauchy.push(i),
        }
    }

    let mut offset: Vec<Option<T>> = vec![None; n_comp];
    let mut used_limits = HashSet::new();
    offset[comp[base]] = Some(T::zero());
    let mut queue = VecDeque::from([comp[base]]);
    while let Some(c) = queue.pop_front() {
        let oc = offset[c].expect("queued components have offsets");
        for &(d, delta, l) in &links[c] {
            if offset[d].is_none() {
                offset[d] = Some(oc + delta);
                used_limits.insert(l);
                queue.push_back(d);
            }
        }
    }

    let unreached: Vec<usize> = (0..n).filter(|&i| offset[comp[i]].is_none()).collect();
    if !unreached.is_empty() {
        let blocked = failed_cauchy.iter().find(|&&i| {
            let l = &graph.limits()[i];
            unreached.contains(&l.limit) || unreached.contains(&l.seq[0])
        });
        if let Some(&i) = blocked {
            return Ok(TrivialityVerdict::Inconclusive {
                reason: format!(
                    "limit sequence for {} fails its Cauchy check",
                    graph.label(graph.limits()[i].limit)
                ),
            });
        }
        return Err(Error::Disconnected(unreached.iter().map(|&i| graph.label(i).to_string()).collect()));
    }

    let log_f: Vec<T> = (0..n).map(|i| offset[comp[i]].expect("all reached") + rel[i]).collect();
    let values: Vec<T> = log_f.iter().map(|v| v.exp()).collect();
    let tol = lit::<T>(opts.log_tol);
    let exceeds = |log_ratio: T| !(log_ratio.abs() <= tol);

    for (i, e) in graph.edges().iter().enumerate() {
        if tree_edges.contains(&i) {
            continue;
        }
        let r = e.sigma.ln() + log_f[e.from] - log_f[e.to];
        if exceeds(r) {
            return Ok(non_trivial(
                Constraint::Edge(i),
                format!("edge {} -> {} ({})", graph.label(e.from), graph.label(e.to), e.generator),
                r,
                values,
            ));
        }
    }
    for (i, &(u, v)) in graph.identifications().iter().enumerate() {
        let r = log_f[u] - log_f[v];
        if exceeds(r) {
            return Ok(non_trivial(
                Constraint::Identification(i),
                format!("identification {} = {}", graph.label(u), graph.label(v)),
                r,
                values,
            ));
        }
    }
    let mut inconclusive = None;
    for (i, l) in graph.limits().iter().enumerate() {
        if used_limits.contains(&i) {
            continue;
        }
        match cauchy_tail(&log_f, &l.seq, opts.cauchy_tol) {
            Some(value) => {
                let r = log_f[l.limit] - value;
                if exceeds(r) {
                    return Ok(non_trivial(
                        Constraint::Limit(i),
                        format!("limit at {}", graph.label(l.limit)),
                        r,
                        values,
                    ));
                }
            }
            None => {
                inconclusive.get_or_insert(i);
            }
        }
    }
    if let Some(i) = inconclusive {
        return Ok(TrivialityVerdict::Inconclusive {
            reason: format!(
                "limit sequence for {} fails its Cauchy check",
                graph.label(graph.limits()[i].limit)
            ),
        });
    }
    Ok(TrivialityVerdict::Trivial { witness: values })
}

fn non_trivial<T: Real>(constraint: Constraint, description: String, log_ratio: T, values: Vec<T>) -> TrivialityVerdict<T> {
    TrivialityVerdict::NonTrivial {
        certificate: Certificate {
            constraint,
            description,
            ratio: to_f64(log_ratio.exp()),
        },
        values,
    }
}

/// Edge-by-edge check of a witness: `|log σ(e) − log f(to) + log f(from)|`.
pub fn verify_witness<T: Real>(graph: &OrbitGraph<T>, f: &[T], tol: f64) -> CheckReport {
    let mut report = CheckReport::new("coboundary-witness", tol);
    for e in graph.edges() {
        let predicted = f[e.to] / f[e.from];
        report.push(
            format!("{} -> {}", graph.label(e.from), graph.label(e.to)),
            vec![to_f64(e.sigma)],
            vec![to_f64(predicted)],
            to_f64((e.sigma.ln() - predicted.ln()).abs()),
        );
    }
    report
}

/// Whether the multipliers of two graphs with the same topology differ by
/// a trivial multiplier: solves the coboundary problem for `σ₂ / σ₁`.
pub fn coset_equivalent<T: Real>(
    sigma1: &OrbitGraph<T>,
    sigma2: &OrbitGraph<T>,
    opts: &SolveOptions,
) -> Result<TrivialityVerdict<T>> {
    if !sigma1.same_topology(sigma2) {
        return Err(Error::InvalidGraph("coset test needs graphs with the same topology".into()));
    }
    let ratio: Vec<T> = sigma1.edges().iter().zip(sigma2.edges()).map(|(a, b)| b.sigma / a.sigma).collect();
    solve_coboundary(&sigma1.with_sigmas(&ratio)?, None, opts)
}

/// Smallest and largest product of `σ` over paths of length `1..=max_len`,
/// walking edges forward (factor `σ`) or backward (factor `1/σ`).
pub fn boundedness_scan<T: Real>(graph: &OrbitGraph<T>, max_len: usize) -> (T, T) {
    let n = graph.node_count();
    if graph.edges().is_empty() || max_len == 0 {
        return (T::one(), T::one());
    }
    let moves: Vec<(usize, usize, T)> = graph
        .edges()
        .iter()
        .flat_map(|e| {
            let l = e.sigma.ln();
            [(e.from, e.to, l), (e.to, e.from, -l)]
        })
        .collect();
    let mut lo = vec![T::zero(); n];
    let mut hi = vec![T::zero(); n];
    let mut reach = vec![true; n];
    let (mut best_lo, mut best_hi) = (T::infinity(), T::neg_infinity());
    for _ in 0..max_len {
        let mut nlo = vec![T::infinity(); n];
        let mut nhi = vec![T::neg_infinity(); n];
        let mut nreach = vec![false; n];
        for &(u, v, l) in &moves {
            if reach[u] {
                nreach[v] = true;
                nlo[v] = nlo[v].min(lo[u] + l);
                nhi[v] = nhi[v].max(hi[u] + l);
            }
        }
        for v in 0..n {
            if nreach[v] {
                best_lo = best_lo.min(nlo[v]);
                best_hi = best_hi.max(nhi[v]);
            }
        }
        lo = nlo;
        hi = nhi;
        reach = nreach;
    }
    (best_lo.exp(), best_hi.exp())
}
