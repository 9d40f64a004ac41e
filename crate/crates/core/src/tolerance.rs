//! Default tolerances.
//!
//! | constant | value | used by |
//! |---|---|---|
//! | `NNLS` | 1e-9 | cone membership, extremality |
//! | `WEIGHT_SUM` | 1e-12 | probability checks |
//! | `IDENTITY` | 1e-12 | identity-element and round-trip checks |
//! | `COMPOSITION` | 1e-10 | cocycle and condition (1) checks |
//! | `ORBIT_COVERAGE` | 1e-3 | orbit closure evidence |
//! | `ORBIT_DEDUP` | 1e-6 | orbit point deduplication |
//! | `MERGE` | 1e-9 | atom identification |
//! | `RADON_NIKODYM` | 1e-9 | atom-wise density identity |
//! | `TRIVIALITY_LOG` | 1e-9 | coboundary constraints, log scale |
//! | `CAUCHY` | 1e-10 | limit sequences, log scale |
//! | `PARTIAL_PRODUCT` | 1e-12 | shift-orbit truncation |
//! | `HYPERBOLIC_MARGIN` | 1e-12 | `|trace| > 2 + margin` |
//! | `FIXED_MEASURE` | 1e-4 | weak fixed-point residuals |
//! | `SL2_DET` | 1e-12 | unimodularity of `Mat2` |

pub const NNLS: f64 = 1e-9;
pub const WEIGHT_SUM: f64 = 1e-12;
pub const IDENTITY: f64 = 1e-12;
pub const COMPOSITION: f64 = 1e-10;
pub const ORBIT_COVERAGE: f64 = 1e-3;
pub const ORBIT_DEDUP: f64 = 1e-6;
pub const MERGE: f64 = 1e-9;
pub const RADON_NIKODYM: f64 = 1e-9;
pub const TRIVIALITY_LOG: f64 = 1e-9;
pub const CAUCHY: f64 = 1e-10;
pub const PARTIAL_PRODUCT: f64 = 1e-12;
pub const HYPERBOLIC_MARGIN: f64 = 1e-12;
pub const FIXED_MEASURE: f64 = 1e-4;
pub const SL2_DET: f64 = 1e-12;

pub const DEFAULT_WORD_LENGTH: usize = 20;
pub const DEFAULT_TRUNCATION: usize = 64;
pub const DEFAULT_ORBIT_WORD_LENGTH: usize = 40;
