//! Ready-made group models used by tests, scenarios and documentation.

use std::sync::Arc;

use crate::cone::{ConePoint, SectionFunctional};
use crate::dynamics::group::MatrixGroup;
use crate::dynamics::pair::{induced_pair, ConicPair};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::scalar::{lit, Real};

pub fn diag2<T: Real>(a: f64, b: f64) -> Matrix<T> {
    Matrix::diagonal(&[lit(a), lit(b)])
}

/// `(0 a; b 0)`.
pub fn antidiag2<T: Real>(a: f64, b: f64) -> Matrix<T> {
    Matrix::from_row_major(2, &[T::zero(), lit(a), lit(b), T::zero()]).expect("2x2")
}

/// Positive diagonal and antidiagonal matrices acting on the closed first
/// quadrant, generated by `diag(2,1)`, `diag(1,3)` and the swap.
pub fn example_3_1<T: Real>() -> MatrixGroup<T> {
    MatrixGroup::new(vec![diag2(2.0, 1.0), diag2(1.0, 3.0), antidiag2(1.0, 1.0)]).expect("invertible generators")
}

/// Interior sample points of the section `x + y = 1` of the quadrant.
pub fn segment_points<T: Real>(n: usize) -> Vec<ConePoint<T>> {
    (0..n)
        .map(|i| {
            let t = (i as f64 + 0.5) / n as f64;
            ConePoint::from_f64(&[t, 1.0 - t]).expect("finite")
        })
        .collect()
}

/// The pair induced by [`example_3_1`] on `L = (1, 1)`.
pub fn example_3_1_pair<T: Real>() -> Result<ConicPair<T, MatrixGroup<T>>> {
    let model = Arc::new(example_3_1::<T>());
    let l = SectionFunctional::from_f64(&[1.0, 1.0])?;
    let samples = segment_points(16);
    induced_pair(model, l, &samples)
}

/// Monomial matrices with non-unit determinants on the quadrant.
pub fn monomial_2x2<T: Real>() -> MatrixGroup<T> {
    MatrixGroup::new(vec![diag2(3.0, 0.5), antidiag2(2.0, 5.0), diag2(1.5, 1.25)]).expect("invertible generators")
}

/// The swap together with the homothety `2·I`: an affine action on the
/// segment with a nontrivial determinant character.
pub fn swap_and_scale<T: Real>() -> MatrixGroup<T> {
    MatrixGroup::new(vec![antidiag2(1.0, 1.0), diag2(2.0, 2.0)]).expect("invertible generators")
}

/// Rotation by `angle` about the axis of the cone over the unit disc at
/// height one, in `R^3`.
pub fn disc_rotation<T: Real>(angle: f64) -> MatrixGroup<T> {
    let (s, c) = angle.sin_cos();
    let m = Matrix::from_row_major(
        3,
        &[lit(c), lit(-s), T::zero(), lit(s), lit(c), T::zero(), T::zero(), T::zero(), T::one()],
    )
    .expect("3x3");
    MatrixGroup::new(vec![m]).expect("rotation is invertible")
}
