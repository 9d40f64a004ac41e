//! Scalar abstraction shared by every module.
//!
//! All geometry in this crate is written against [`Real`], which is
//! implemented for `f32` and `f64`. Tolerances are specified as `f64`
//! literals and converted with [`lit`]; [`tol_floor`] keeps a requested
//! tolerance above the working precision of narrower types.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` constant into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

/// Lossy conversion to `f64` for reporting.
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `tol` as a `T`, but never below 64 ulps of one.
#[inline]
pub fn tol_floor<T: Real>(tol: f64) -> T {
    let floor = T::epsilon() * lit(64.0);
    let t = lit::<T>(tol);
    if t < floor {
        floor
    } else {
        t
    }
}

/// Pairwise (cascade) summation. The reduction tree depends only on the
/// slice length, so results are reproducible for a given input order.
pub fn pairwise_sum<T: Real>(xs: &[T]) -> T {
    const BLOCK: usize = 8;
    if xs.len() <= BLOCK {
        return xs.iter().fold(T::zero(), |acc, &x| acc + x);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// `|a - b| / max(|a|, |b|)`; the absolute difference when both vanish.
#[inline]
pub fn relative_diff<T: Real>(a: T, b: T) -> T {
    let scale = a.abs().max(b.abs());
    let diff = (a - b).abs();
    if scale <= T::min_positive_value() {
        diff
    } else {
        diff / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_small_input() {
        let xs: Vec<f64> = (1..=100).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&xs), 5050.0);
        assert_eq!(pairwise_sum::<f64>(&[]), 0.0);
    }

    #[test]
    fn tol_floor_respects_precision() {
        assert_eq!(tol_floor::<f64>(1e-10), 1e-10);
        assert!(tol_floor::<f32>(1e-12) > 1e-6);
    }

    #[test]
    fn relative_diff_is_symmetric() {
        assert_eq!(relative_diff(2.0, 1.0), 0.5);
        assert_eq!(relative_diff(1.0, 2.0), 0.5);
        assert_eq!(relative_diff(0.0, 0.0), 0.0);
    }
}
