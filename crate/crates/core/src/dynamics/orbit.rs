//! Bounded orbit enumeration as evidence for orbit-closure conditions.
//!
//! Whether the orbit closure of a point contains the extreme points of a
//! section cannot be decided from finitely many group elements. The report
//! produced here records how close a breadth-first enumeration of words up
//! to a fixed length gets to each target: evidence for irreducibility, not
//! a proof of it.

use std::collections::HashSet;

use serde::Serialize;

use crate::dynamics::group::Group;
use crate::dynamics::pair::SemiConicPair;
use crate::measure::SupportPoint;
use crate::scalar::{lit, to_f64, Real};
use crate::tolerance;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    /// Smallest distance from the enumerated orbit to each target.
    pub min_distances: Vec<f64>,
    pub covered: bool,
    pub tol: f64,
    /// Distinct orbit points after deduplication.
    pub orbit_size: usize,
    /// Word length reached (enumeration stops early once every target is covered).
    pub levels_explored: usize,
    /// True if the point budget was exhausted before `max_word_length`.
    pub truncated: bool,
}

/// Default cap on deduplicated orbit points.
pub const DEFAULT_MAX_ORBIT_POINTS: usize = 2_000_000;

/// Breadth-first enumeration of `ρ_w(x0)` over words of length
/// `≤ max_word_length` in the generators and their inverses, deduplicated
/// on a grid of spacing [`tolerance::ORBIT_DEDUP`].
pub fn orbit_coverage<T, P>(pair: &P, x0: &P::Point, targets: &[P::Point], max_word_length: usize, tol: T) -> CoverageReport
where
    T: Real,
    P: SemiConicPair<T>,
    P::Point: SupportPoint<T>,
{
    orbit_coverage_bounded(pair, x0, targets, max_word_length, tol, DEFAULT_MAX_ORBIT_POINTS)
}

pub fn orbit_coverage_bounded<T, P>(
    pair: &P,
    x0: &P::Point,
    targets: &[P::Point],
    max_word_length: usize,
    tol: T,
    max_points: usize,
) -> CoverageReport
where
    T: Real,
    P: SemiConicPair<T>,
    P::Point: SupportPoint<T>,
{
    let moves = pair.group().symmetric_generators();
    let cell = lit::<T>(tolerance::ORBIT_DEDUP);
    let key = |p: &P::Point| -> Vec<i64> {
        p.coordinates()
            .iter()
            .map(|&c| (c / cell).round().to_i64().unwrap_or(i64::MAX))
            .collect()
    };
    let mut best: Vec<T> = targets.iter().map(|t| t.distance(x0)).collect();
    let all_covered = |best: &[T]| best.iter().all(|&d| d <= tol);

    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(key(x0));
    let mut frontier = vec![x0.clone()];
    let mut levels = 0;
    let mut truncated = false;
    while levels < max_word_length.max(1) && !all_covered(&best) && !frontier.is_empty() {
        levels += 1;
        let mut next = Vec::new();
        'expand: for p in &frontier {
            for g in &moves {
                let q = pair.rho(g, p);
                if seen.insert(key(&q)) {
                    for (b, t) in best.iter_mut().zip(targets) {
                        let d = t.distance(&q);
                        if d < *b {
                            *b = d;
                        }
                    }
                    next.push(q);
                    if seen.len() >= max_points {
                        truncated = true;
                        break 'expand;
                    }
                }
            }
        }
        frontier = next;
        if truncated {
            break;
        }
    }
    CoverageReport {
        covered: all_covered(&best),
        min_distances: best.into_iter().map(to_f64).collect(),
        tol: to_f64(tol),
        orbit_size: seen.len(),
        levels_explored: levels,
        truncated,
    }
}
