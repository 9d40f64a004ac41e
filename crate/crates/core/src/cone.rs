//! Finite-dimensional cones, linear sections and the canonical projection
//! onto a section.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{dot, nnls, norm};
use crate::scalar::{tol_floor, Real};
use crate::tolerance;

/// A vector in `R^d`, `d >= 1`, with finite coordinates.
#[derive(Clone, PartialEq)]
pub struct ConePoint<T> {
    coords: Vec<T>,
}

impl<T: Real> fmt::Debug for ConePoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl<T: Real> fmt::Display for ConePoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<T: Real> ConePoint<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidPoint("dimension must be at least 1".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint(format!("non-finite coordinate in {coords:?}")));
        }
        Ok(Self { coords })
    }

    /// Convenience constructor from `f64` literals.
    pub fn from_f64(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| crate::scalar::lit(c)).collect())
    }

    pub(crate) fn from_vec_unchecked(coords: Vec<T>) -> Self {
        Self { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            coords: vec![T::zero(); dim.max(1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn norm(&self) -> T {
        norm(&self.coords)
    }

    pub fn scale(&self, c: T) -> Self {
        Self {
            coords: self.coords.iter().map(|&x| x * c).collect(),
        }
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: T, other: &Self, b: T) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&x, &y)| a * x + b * y)
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(T::one(), other, T::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(T::one(), other, -T::one())
    }

    pub fn distance(&self, other: &Self) -> T {
        self.sub(other).norm()
    }

    /// Largest coordinate-wise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(T::zero(), |m, (&x, &y)| m.max((x - y).abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == T::zero())
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: self.dim(),
            });
        }
        Ok(())
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.coords.iter().map(|&c| crate::scalar::to_f64(c)).collect()
    }
}

/// The cone of nonnegative combinations of finitely many nonzero generators.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralCone<T: Real> {
    dim: usize,
    generators: Vec<ConePoint<T>>,
}

impl<T: Real> PolyhedralCone<T> {
    pub fn new(generators: Vec<ConePoint<T>>) -> Result<Self> {
        let first = generators
            .first()
            .ok_or(Error::Empty("cone generators"))?;
        let dim = first.dim();
        for (i, g) in generators.iter().enumerate() {
            g.check_dim(dim)?;
            if g.is_zero() {
                return Err(Error::InvalidCone(format!("generator {i} is zero")));
            }
        }
        Ok(Self { dim, generators })
    }

    /// The closed nonnegative orthant of `R^dim`.
    pub fn orthant(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidCone("dimension must be at least 1".into()));
        }
        let gens = (0..dim)
            .map(|i| {
                let mut c = vec![T::zero(); dim];
                c[i] = T::one();
                ConePoint::from_vec_unchecked(c)
            })
            .collect();
        Self::new(gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ConePoint<T>] {
        &self.generators
    }
}

/// A linear functional `L(x) = <weights, x>` whose level set `L = 1` is the
/// section.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionFunctional<T> {
    weights: Vec<T>,
}

impl<T: Real> SectionFunctional<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidArgument(
                "section weights must be a nonempty finite vector".into(),
            ));
        }
        Ok(Self { weights })
    }

    pub fn from_f64(weights: &[f64]) -> Result<Self> {
        Self::new(weights.iter().map(|&w| crate::scalar::lit(w)).collect())
    }

    /// Builds `L` and checks it is strictly positive on every generator.
    pub fn for_cone(weights: Vec<T>, cone: &PolyhedralCone<T>) -> Result<Self> {
        let l = Self::new(weights)?;
        if l.dim() != cone.dim() {
            return Err(Error::DimensionMismatch {
                expected: cone.dim(),
                got: l.dim(),
            });
        }
        for g in cone.generators() {
            let v = l.eval(g);
            if v <= T::zero() {
                return Err(Error::NotInOpenCone {
                    value: crate::scalar::to_f64(v),
                });
            }
        }
        Ok(l)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn eval(&self, x: &ConePoint<T>) -> T {
        dot(&self.weights, x.coords())
    }

    pub fn scaled(&self, c: T) -> Self {
        Self {
            weights: self.weights.iter().map(|&w| w * c).collect(),
        }
    }
}

/// Whether `x` lies within `tol` (Euclidean residual) of `cone`.
pub fn cone_contains<T: Real>(cone: &PolyhedralCone<T>, x: &ConePoint<T>, tol: T) -> Result<bool> {
    if tol <= T::zero() {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    x.check_dim(cone.dim())?;
    let cols: Vec<&[T]> = cone.generators().iter().map(|g| g.coords()).collect();
    Ok(nnls(&cols, x.coords()).residual <= tol)
}

/// Membership with the nonnegative least squares coefficients.
pub fn cone_coefficients<T: Real>(cone: &PolyhedralCone<T>, x: &ConePoint<T>) -> Result<(Vec<T>, T)> {
    x.check_dim(cone.dim())?;
    let cols: Vec<&[T]> = cone.generators().iter().map(|g| g.coords()).collect();
    let s = nnls(&cols, x.coords());
    Ok((s.coefficients, s.residual))
}

/// The canonical projection `x / L(x)` onto the section `L = 1`.
pub fn project_to_section<T: Real>(l: &SectionFunctional<T>, x: &ConePoint<T>) -> Result<ConePoint<T>> {
    x.check_dim(l.dim())?;
    let v = l.eval(x);
    if v <= T::zero() || !v.is_finite() {
        return Err(Error::NotInOpenCone {
            value: crate::scalar::to_f64(v),
        });
    }
    Ok(x.scale(T::one() / v))
}

/// Whether generator `index` spans an extreme ray: its normalized direction
/// is farther than `tol` from the cone of the remaining generators.
pub fn is_extreme_generator<T: Real>(cone: &PolyhedralCone<T>, index: usize, tol: T) -> Result<bool> {
    let gens = cone.generators();
    let g = gens.get(index).ok_or(Error::IndexOutOfBounds {
        index,
        len: gens.len(),
    })?;
    let unit = g.scale(T::one() / g.norm());
    let others: Vec<&[T]> = gens
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != index)
        .map(|(_, h)| h.coords())
        .collect();
    Ok(nnls(&others, unit.coords()).residual > tol)
}

/// Extreme generators of `cone` at the default tolerance.
pub fn extreme_generators<T: Real>(cone: &PolyhedralCone<T>) -> Vec<usize> {
    let tol = tol_floor::<T>(tolerance::NNLS);
    (0..cone.generators().len())
        .filter(|&i| is_extreme_generator(cone, i, tol).unwrap_or(false))
        .collect()
}

/// `Σ w_i x_i` for a probability vector `w`. When `section` is given, every
/// point must lie on it (within the membership tolerance).
pub fn barycenter<T: Real>(
    points: &[ConePoint<T>],
    weights: &[T],
    section: Option<&SectionFunctional<T>>,
) -> Result<ConePoint<T>> {
    let first = points.first().ok_or(Error::Empty("barycenter points"))?;
    if points.len() != weights.len() {
        return Err(Error::DimensionMismatch {
            expected: points.len(),
            got: weights.len(),
        });
    }
    if let Some(w) = weights.iter().find(|w| **w < T::zero() || !w.is_finite()) {
        return Err(Error::InvalidWeight(format!("{w}")));
    }
    let sum = crate::scalar::pairwise_sum(weights);
    if (sum - T::one()).abs() > tol_floor::<T>(tolerance::WEIGHT_SUM) {
        return Err(Error::NotProbability {
            sum: crate::scalar::to_f64(sum),
        });
    }
    let dim = first.dim();
    let mut acc = vec![T::zero(); dim];
    for (p, &w) in points.iter().zip(weights) {
        p.check_dim(dim)?;
        if let Some(l) = section {
            let v = l.eval(p);
            if (v - T::one()).abs() > tol_floor::<T>(tolerance::NNLS) {
                return Err(Error::InvalidPoint(format!("{p} is not on the section (L = {v})")));
            }
        }
        for (a, &c) in acc.iter_mut().zip(p.coords()) {
            *a += w * c;
        }
    }
    Ok(ConePoint::from_vec_unchecked(acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[f64]) -> ConePoint<f64> {
        ConePoint::from_f64(c).unwrap()
    }

    fn cone(gens: &[&[f64]]) -> PolyhedralCone<f64> {
        PolyhedralCone::new(gens.iter().map(|g| pt(g)).collect()).unwrap()
    }

    #[test]
    fn point_invariants() {
        assert!(ConePoint::<f64>::new(vec![]).is_err());
        assert!(ConePoint::new(vec![1.0, f64::NAN]).is_err());
        assert!(PolyhedralCone::new(vec![pt(&[0.0, 0.0])]).is_err());
        assert!(PolyhedralCone::new(vec![pt(&[1.0, 0.0]), pt(&[1.0])]).is_err());
    }

    #[test]
    fn quadrant_membership() {
        let q = PolyhedralCone::<f64>::orthant(2).unwrap();
        assert!(cone_contains(&q, &pt(&[1.0, 1.0]), 1e-9).unwrap());
        assert!(!cone_contains(&q, &pt(&[-1.0, 0.0]), 1e-9).unwrap());
        assert!(cone_contains(&q, &pt(&[1.0]), 1e-9).is_err());
        assert!(cone_contains(&q, &pt(&[1.0, 1.0]), 0.0).is_err());
    }

    #[test]
    fn membership_in_lifted_cone() {
        let c = cone(&[&[1.0, 0.0, 1.0], &[0.0, 1.0, 1.0]]);
        assert!(cone_contains(&c, &pt(&[1.0, 1.0, 2.0]), 1e-9).unwrap());
        let (coef, res) = cone_coefficients(&c, &pt(&[1.0, 1.0, 2.0])).unwrap();
        assert!((coef[0] - 1.0).abs() < 1e-12 && (coef[1] - 1.0).abs() < 1e-12);
        assert!(res < 1e-12);
        assert!(!cone_contains(&c, &pt(&[1.0, 1.0, 1.0]), 1e-9).unwrap());
    }

    #[test]
    fn projection_examples() {
        let l = SectionFunctional::from_f64(&[1.0, 1.0]).unwrap();
        assert_eq!(project_to_section(&l, &pt(&[2.0, 2.0])).unwrap(), pt(&[0.5, 0.5]));
        assert_eq!(project_to_section(&l, &pt(&[3.0, 1.0])).unwrap(), pt(&[0.75, 0.25]));
        let l0 = SectionFunctional::from_f64(&[1.0, 0.0]).unwrap();
        assert!(matches!(
            project_to_section(&l0, &pt(&[0.0, 1.0])),
            Err(Error::NotInOpenCone { .. })
        ));
    }

    #[test]
    fn section_must_be_positive_on_generators() {
        let q = PolyhedralCone::<f64>::orthant(2).unwrap();
        assert!(SectionFunctional::for_cone(vec![1.0, 2.0], &q).is_ok());
        assert!(SectionFunctional::for_cone(vec![1.0, 0.0], &q).is_err());
    }

    #[test]
    fn extremality_examples() {
        let q = cone(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert!(is_extreme_generator(&q, 0, 1e-9).unwrap());
        let c = cone(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        assert!(!is_extreme_generator(&c, 2, 1e-9).unwrap());
        assert!(is_extreme_generator(&c, 0, 1e-9).unwrap());
        assert!(is_extreme_generator(&c, 5, 1e-9).is_err());
        assert_eq!(extreme_generators(&c), vec![0, 1]);
    }

    #[test]
    fn pentagon_vertices_are_extreme() {
        let verts: Vec<ConePoint<f64>> = (0..5)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / 5.0;
                pt(&[a.cos(), a.sin(), 1.0])
            })
            .collect();
        let c = PolyhedralCone::new(verts).unwrap();
        for i in 0..5 {
            assert!(is_extreme_generator(&c, i, 1e-9).unwrap(), "vertex {i}");
        }
    }

    #[test]
    fn barycenter_examples() {
        let simplex = [pt(&[1.0, 0.0, 0.0]), pt(&[0.0, 1.0, 0.0]), pt(&[0.0, 0.0, 1.0])];
        let w = [1.0 / 3.0; 3];
        let l = SectionFunctional::from_f64(&[1.0, 1.0, 1.0]).unwrap();
        let b = barycenter(&simplex, &w, Some(&l)).unwrap();
        for c in b.coords() {
            assert!((c - 1.0 / 3.0).abs() < 1e-15);
        }
        assert!((l.eval(&b) - 1.0).abs() < 1e-15);

        let single = barycenter(&[pt(&[0.3, 0.7])], &[1.0], None).unwrap();
        assert_eq!(single, pt(&[0.3, 0.7]));

        let two = barycenter(&[pt(&[1.0, 0.0]), pt(&[0.0, 1.0])], &[0.25, 0.75], None).unwrap();
        assert_eq!(two, pt(&[0.25, 0.75]));
    }

    #[test]
    fn barycenter_rejections() {
        assert!(matches!(barycenter::<f64>(&[], &[], None), Err(Error::Empty(_))));
        assert!(matches!(
            barycenter(&[pt(&[1.0])], &[0.9], None),
            Err(Error::NotProbability { .. })
        ));
        let l = SectionFunctional::from_f64(&[1.0, 1.0]).unwrap();
        assert!(barycenter(&[pt(&[2.0, 0.0])], &[1.0], Some(&l)).is_err());
    }

    #[test]
    fn f32_projection() {
        let l = SectionFunctional::<f32>::new(vec![1.0, 1.0]).unwrap();
        let p = project_to_section(&l, &ConePoint::new(vec![3.0f32, 1.0]).unwrap()).unwrap();
        assert_eq!(p.coords(), &[0.75f32, 0.25]);
    }
}
