//! Finite orbit structures: labelled nodes, `σ`-weighted edges, glued node
//! pairs and declared limits.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct Edge<T> {
    pub from: usize,
    pub to: usize,
    pub generator: String,
    pub sigma: T,
}

/// `seq[k] → limit` as `k → ∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct Limit {
    pub seq: Vec<usize>,
    pub limit: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitGraph<T> {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge<T>>,
    identifications: Vec<(usize, usize)>,
    limits: Vec<Limit>,
}

impl<T: Real> Default for OrbitGraph<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> OrbitGraph<T> {
    pub fn new() -> Self {
        Self {
            labels: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            identifications: Vec::new(),
            limits: Vec::new(),
        }
    }

    /// Adds a node, or returns the index of an existing node with that label.
    pub fn add_node(&mut self, label: impl Into<String>) -> usize {
        let label = label.into();
        if let Some(&i) = self.index.get(&label) {
            return i;
        }
        let i = self.labels.len();
        self.index.insert(label.clone(), i);
        self.labels.push(label);
        i
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i < self.labels.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfBounds {
                index: i,
                len: self.labels.len(),
            })
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, generator: impl Into<String>, sigma: T) -> Result<usize> {
        self.check_node(from)?;
        self.check_node(to)?;
        if !(sigma > T::zero()) || !sigma.is_finite() {
            return Err(Error::InvalidGraph(format!(
                "edge {} -> {} has non-positive sigma {sigma}",
                self.labels[from], self.labels[to]
            )));
        }
        self.edges.push(Edge {
            from,
            to,
            generator: generator.into(),
            sigma,
        });
        Ok(self.edges.len() - 1)
    }

    pub fn identify(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_node(u)?;
        self.check_node(v)?;
        self.identifications.push((u, v));
        Ok(())
    }

    /// Declares `seq → limit`. The sequence must be nonempty and injective.
    pub fn add_limit(&mut self, seq: Vec<usize>, limit: usize) -> Result<()> {
        self.check_node(limit)?;
        if seq.is_empty() {
            return Err(Error::InvalidGraph("empty limit sequence".into()));
        }
        let mut seen = HashSet::new();
        for &i in &seq {
            self.check_node(i)?;
            if !seen.insert(i) {
                return Err(Error::InvalidGraph(format!(
                    "limit sequence for {} repeats {}",
                    self.labels[limit], self.labels[i]
                )));
            }
        }
        self.limits.push(Limit { seq, limit });
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn node(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn identifications(&self) -> &[(usize, usize)] {
        &self.identifications
    }

    pub fn limits(&self) -> &[Limit] {
        &self.limits
    }

    pub fn sigmas(&self) -> Vec<T> {
        self.edges.iter().map(|e| e.sigma).collect()
    }

    /// Same topology, edge weights replaced by `sigmas` (in edge order).
    pub fn with_sigmas(&self, sigmas: &[T]) -> Result<Self> {
        if sigmas.len() != self.edges.len() {
            return Err(Error::DimensionMismatch {
                expected: self.edges.len(),
                got: sigmas.len(),
            });
        }
        let mut out = self.clone();
        for (e, &s) in out.edges.iter_mut().zip(sigmas) {
            if !(s > T::zero()) || !s.is_finite() {
                return Err(Error::InvalidGraph(format!("non-positive sigma {s}")));
            }
            e.sigma = s;
        }
        Ok(out)
    }

    /// Multiplies every edge weight by `f(to) / f(from)`.
    pub fn reweighted(&self, f: &[T]) -> Result<Self> {
        if f.len() != self.node_count() {
            return Err(Error::DimensionMismatch {
                expected: self.node_count(),
                got: f.len(),
            });
        }
        if let Some(i) = f.iter().position(|v| !(*v > T::zero()) || !v.is_finite()) {
            return Err(Error::NonPositiveDensity {
                at: self.labels[i].clone(),
                value: to_f64(f[i]),
            });
        }
        let sigmas: Vec<T> = self.edges.iter().map(|e| e.sigma * f[e.to] / f[e.from]).collect();
        self.with_sigmas(&sigmas)
    }

    /// Whether `other` has the same nodes, edge endpoints, identifications
    /// and limits.
    pub fn same_topology(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.identifications == other.identifications
            && self.limits == other.limits
            && self.edges.len() == other.edges.len()
            && self
                .edges
                .iter()
                .zip(&other.edges)
                .all(|(a, b)| a.from == b.from && a.to == b.to && a.generator == b.generator)
    }

    /// Follows the unique `generator`-labelled out-edge `k` times from
    /// `start`, returning the end node and the product of `σ` along the way.
    pub fn follow(&self, start: usize, generator: &str, k: usize) -> Option<(usize, T)> {
        let mut at = start;
        let mut product = T::one();
        for _ in 0..k {
            let mut out = self.edges.iter().filter(|e| e.from == at && e.generator == generator);
            let e = out.next()?;
            if out.next().is_some() {
                return None;
            }
            product *= e.sigma;
            at = e.to;
        }
        Some((at, product))
    }

    pub fn to_json(&self) -> String {
        let doc = GraphDoc {
            nodes: self.labels.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    from: NodeRef::Label(self.labels[e.from].clone()),
                    to: NodeRef::Label(self.labels[e.to].clone()),
                    gen: e.generator.clone(),
                    sigma: to_f64(e.sigma),
                })
                .collect(),
            identify: self
                .identifications
                .iter()
                .map(|&(u, v)| [NodeRef::Label(self.labels[u].clone()), NodeRef::Label(self.labels[v].clone())])
                .collect(),
            limits: self
                .limits
                .iter()
                .map(|l| LimitDoc {
                    seq: l.seq.iter().map(|&i| NodeRef::Label(self.labels[i].clone())).collect(),
                    limit: NodeRef::Label(self.labels[l.limit].clone()),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("graph document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut g = Self::new();
        for label in &doc.nodes {
            if g.node(label).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate node {label}")));
            }
            g.add_node(label.clone());
        }
        let lookup = |g: &Self, r: &NodeRef| match r {
            NodeRef::Index(i) if *i < g.node_count() => Ok(*i),
            NodeRef::Index(i) => Err(Error::InvalidGraph(format!("node index {i} out of range"))),
            NodeRef::Label(label) => g.node(label).ok_or_else(|| Error::InvalidGraph(format!("unknown node {label}"))),
        };
        for e in &doc.edges {
            let (from, to) = (lookup(&g, &e.from)?, lookup(&g, &e.to)?);
            g.add_edge(from, to, e.gen.clone(), lit(e.sigma))?;
        }
        for [u, v] in &doc.identify {
            let (u, v) = (lookup(&g, u)?, lookup(&g, v)?);
            g.identify(u, v)?;
        }
        for l in &doc.limits {
            let seq = l.seq.iter().map(|s| lookup(&g, s)).collect::<Result<Vec<_>>>()?;
            let limit = lookup(&g, &l.limit)?;
            g.add_limit(seq, limit)?;
        }
        Ok(g)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    nodes: Vec<String>,
    edges: Vec<EdgeDoc>,
    #[serde(default)]
    identify: Vec<[NodeRef; 2]>,
    #[serde(default)]
    limits: Vec<LimitDoc>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    from: NodeRef,
    to: NodeRef,
    #[serde(default)]
    gen: String,
    sigma: f64,
}

#[derive(Serialize, Deserialize)]
struct LimitDoc {
    seq: Vec<NodeRef>,
    limit: NodeRef,
}

/// A node given by label or by position in `nodes`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NodeRef {
    Index(usize),
    Label(String),
}
