//! Scenario kinds, their parameters and the catalog.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::CliError;
use crate::params::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    VerifyPair,
    Example31,
    Example81,
    Coset,
    Sl2Fixed,
    Sl2Concentration,
    Vsigma,
}

impl Kind {
    pub const ALL: [Kind; 7] = [
        Kind::VerifyPair,
        Kind::Example31,
        Kind::Example81,
        Kind::Coset,
        Kind::Sl2Fixed,
        Kind::Sl2Concentration,
        Kind::Vsigma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::VerifyPair => "verify-pair",
            Kind::Example31 => "example31",
            Kind::Example81 => "example81",
            Kind::Coset => "coset",
            Kind::Sl2Fixed => "sl2-fixed",
            Kind::Sl2Concentration => "sl2-concentration",
            Kind::Vsigma => "vsigma",
        }
    }

    pub fn entry(self) -> &'static CatalogEntry {
        CATALOG.iter().find(|e| e.kind == self).expect("every kind has a catalog entry")
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown scenario kind `{s}` (see `conekit list`)")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: &'static str,
    pub doc: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct CsvSpec {
    pub file: &'static str,
    pub columns: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub kind: Kind,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
    pub outputs: &'static [CsvSpec],
}

const fn p(name: &'static str, default: &'static str, doc: &'static str) -> ParamSpec {
    ParamSpec { name, default, doc }
}

const fn c(file: &'static str, columns: &'static str) -> CsvSpec {
    CsvSpec { file, columns }
}

const REPORT_COLUMNS: &str = "sample,inputs,lhs,rhs,violation";

pub static CATALOG: [CatalogEntry; 7] = [
    CatalogEntry {
        kind: Kind::VerifyPair,
        summary: "cocycle identity, condition (1) and sigma-affinity for the pair induced by a matrix group on the positive orthant",
        params: &[
            p("fixture", "", "JSON file {generators, section, mutation}; explicit params override it"),
            p("generators", "[[[2,0],[0,1]],[[1,0],[0,3]],[[0,1],[1,0]]]", "nonnegative invertible matrices"),
            p("section", "[1,1]", "positive section functional"),
            p("mutation", "none", "none | corrupt-sigma | sigma-squared"),
            p("samples", "1000", "random samples per check"),
            p("word_length", "20", "maximum random word length"),
            p("tol", "1e-10", "relative tolerance"),
        ],
        outputs: &[
            c("multiplier.csv", REPORT_COLUMNS),
            c("condition.csv", REPORT_COLUMNS),
            c("affinity.csv", REPORT_COLUMNS),
        ],
    },
    CatalogEntry {
        kind: Kind::Example31,
        summary: "full suite on the diagonal/swap group of the 2-dimensional orthant: pair, synthesis, scaling, orbit, measure lift",
        params: &[
            p("samples", "1000", "random samples for pair checks"),
            p("measures", "100", "random atomic measures for lift checks"),
            p("word_length", "20", "maximum random word length"),
            p("orbit_length", "40", "orbit enumeration depth"),
            p("orbit_tol", "1e-3", "orbit coverage distance"),
            p("tol", "1e-10", "relative tolerance"),
        ],
        outputs: &[
            c("multiplier.csv", REPORT_COLUMNS),
            c("condition.csv", REPORT_COLUMNS),
            c("affinity.csv", REPORT_COLUMNS),
            c("synthesis.csv", REPORT_COLUMNS),
            c("scaling.csv", REPORT_COLUMNS),
            c("orbit.csv", "target,min_distance"),
            c("lift_multiplier.csv", REPORT_COLUMNS),
            c("barycenter.csv", REPORT_COLUMNS),
            c("resultant.csv", REPORT_COLUMNS),
            c("radon_nikodym.csv", REPORT_COLUMNS),
        ],
    },
    CatalogEntry {
        kind: Kind::Example81,
        summary: "shift on a two-point compactified orbit: trivial multiplier on Y, non-trivial after gluing the endpoints",
        params: &[
            p("N", "64", "truncation"),
            p("product", "0.5", "infinite product of r_n"),
            p("ratio", "0.5", "geometric decay of log r_n"),
            p("sequence", "geometric", "geometric | inverse-square"),
            p("tol", "1e-10", "tolerance on witness values and certificate ratio"),
            p("bound_length", "40", "path length for the boundedness scan"),
        ],
        outputs: &[c("witness.csv", "node,f,expected")],
    },
    CatalogEntry {
        kind: Kind::Coset,
        summary: "coset test of two multipliers on an orbit graph; with no graphs, runs seeded randomized fixtures",
        params: &[
            p("graph", "", "orbit graph JSON (sigma1, or the only multiplier)"),
            p("graph2", "", "orbit graph JSON with the same topology (sigma2)"),
            p("expect", "", "same | different (optional, for given graphs)"),
            p("fixtures", "50", "number of randomized fixtures"),
        ],
        outputs: &[c("verdicts.csv", "fixture,expected,verdict,ratio")],
    },
    CatalogEntry {
        kind: Kind::Sl2Fixed,
        summary: "whether the lifted action of g fixes the uniform measure on the projective line for the multiplier sigma^s",
        params: &[
            p("a", "2", "g = diag(a, 1/a)"),
            p("matrix", "", "[a,b,c,d], overrides `a`"),
            p("s", "1", "multiplier exponent"),
            p("N", "2048", "quadrature size"),
            p("tol", "1e-4", "tolerance on sigma-tilde and harmonic residuals"),
        ],
        outputs: &[c("sigma.csv", "theta,sigma"), c("residuals.csv", "harmonic,residual")],
    },
    CatalogEntry {
        kind: Kind::Sl2Concentration,
        summary: "mass of g^n_* nu near the attracting direction of a hyperbolic g",
        params: &[
            p("a", "2", "g = diag(a, 1/a)"),
            p("matrix", "", "[a,b,c,d], overrides `a`"),
            p("N", "1024", "quadrature size of nu"),
            p("excise", "1e-3", "radius removed around the repelling direction"),
            p("iterations", "12", "number of iterations"),
            p("epsilon", "0.01", "window radius around the attracting direction"),
            p("target", "0.99", "required final mass"),
        ],
        outputs: &[c("curve.csv", "n,mass")],
    },
    CatalogEntry {
        kind: Kind::Vsigma,
        summary: "samples of y -> sigma^s(., y), equivariance, cocycle for several s, and the rotation-invariance of sigma^s",
        params: &[
            p("s", "1", "exponent for the sampled matrix"),
            p("s_list", "[-1,0,0.5,1,2]", "exponents for cocycle and rotation checks"),
            p("group_points", "8", "rows of the sampled matrix"),
            p("base_points", "16", "columns of the sampled matrix"),
            p("samples", "1000", "random triples per check"),
            p("tol", "1e-10", "relative tolerance for equivariance and cocycle"),
            p("k_tol", "1e-12", "tolerance for |sigma^s(k, y) - 1|"),
        ],
        outputs: &[c("matrix.csv", "row,a,b,c,d,y0..y{M-1}"), c("equivariance.csv", REPORT_COLUMNS)],
    },
];

#[derive(Debug, Clone)]
pub struct Scenario {
    pub kind: Kind,
    pub params: Params,
    pub seed: u64,
    /// Root directory; files go to `<output>/<kind>/`.
    pub output: PathBuf,
}

impl Scenario {
    pub fn new(kind: Kind, params: Params, seed: u64, output: PathBuf) -> Self {
        Self {
            kind,
            params,
            seed,
            output,
        }
    }

    pub fn output_dir(&self) -> PathBuf {
        self.output.join(self.kind.name())
    }

    /// Rejects parameters that the kind does not declare.
    pub fn validate(&self) -> Result<(), CliError> {
        let entry = self.kind.entry();
        for key in self.params.map().keys() {
            if !entry.params.iter().any(|p| p.name == key) {
                return Err(CliError::config(key.clone(), format!("not a parameter of `{}`", self.kind)));
            }
        }
        Ok(())
    }
}

pub fn list_scenarios() -> &'static [CatalogEntry] {
    &CATALOG
}

pub fn catalog_text() -> String {
    let mut out = String::new();
    for e in &CATALOG {
        out.push_str(&format!("{}\n  {}\n", e.kind, e.summary));
        for p in e.params {
            let default = if p.default.is_empty() { "-" } else { p.default };
            out.push_str(&format!("    --{:<13} {:<12} {}\n", p.name, default, p.doc));
        }
        for o in e.outputs {
            out.push_str(&format!("    > {}: {}\n", o.file, o.columns));
        }
    }
    out
}

pub fn catalog_json() -> String {
    serde_json::to_string_pretty(&CATALOG[..]).expect("catalog serializes")
}
