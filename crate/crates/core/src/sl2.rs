//! `SL₂(ℝ)` acting on the projective line.
//!
//! `P¹` is parametrized by `θ ∈ [0, π)` with representative vector
//! `v(θ) = (cos θ, sin θ)`. The base multiplier is the angular Jacobian of
//! the forward action, `σ(g, θ) = ‖g v(θ)‖⁻²`, which integrates to 1
//! against the uniform measure `dθ/π`; `σ^s` is its pointwise power.
//!
//! Writing the density in pullback form instead, `d(g⁻¹m)/dm` at `g·θ`, gives
//! `σ(g⁻¹, g·θ) = 1 / σ(g, θ)`: for `g = (a 1; 0 a⁻¹)` at `θ = 0` that is
//! `a²` where this module reports `a⁻²`. Only the cocycle law, `∫σ dm = 1`
//! and the non-constancy of `σ(g, ·)` are independent of that choice.

use std::f64::consts;

use rand::Rng;

use crate::dynamics::{Group, SemiConicPair};
use crate::error::{Error, Result};
use crate::measure::{AtomicMeasure, SupportPoint};
use crate::msec::LiftedPair;
use crate::report::CheckReport;
use crate::scalar::{lit, relative_diff, to_f64, Real};
use crate::tolerance;

/// A unimodular 2×2 matrix `(a b; c d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T> {
    a: T,
    b: T,
    c: T,
    d: T,
}

impl<T: Real> Mat2<T> {
    /// Scales a matrix with positive determinant to determinant 1.
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let det = a * d - b * c;
        if ![a, b, c, d].iter().all(|x| x.is_finite()) || !(det > T::zero()) {
            return Err(Error::InvalidMatrix(format!("({a} {b}; {c} {d}) has determinant {det}")));
        }
        let s = det.sqrt();
        Ok(Self {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        })
    }

    pub fn from_f64(m: [f64; 4]) -> Result<Self> {
        Self::new(lit(m[0]), lit(m[1]), lit(m[2]), lit(m[3]))
    }

    pub fn identity() -> Self {
        Self {
            a: T::one(),
            b: T::zero(),
            c: T::zero(),
            d: T::one(),
        }
    }

    /// Rotation by `phi`.
    pub fn rotation(phi: T) -> Self {
        let (s, c) = phi.sin_cos();
        Self { a: c, b: -s, c: s, d: c }
    }

    /// `diag(a, 1/a)`.
    pub fn diagonal(a: T) -> Result<Self> {
        if !(a > T::zero()) {
            return Err(Error::InvalidMatrix(format!("diag({a}, 1/{a})")));
        }
        Ok(Self {
            a,
            b: T::zero(),
            c: T::zero(),
            d: a.recip(),
        })
    }

    pub fn entries(&self) -> [T; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> T {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> T {
        self.a + self.d
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        };
        Self::new(m.a, m.b, m.c, m.d).unwrap_or(m)
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    pub fn apply(&self, v: [T; 2]) -> [T; 2] {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    /// Operator norm, the larger singular value.
    pub fn norm(&self) -> T {
        let f = self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d;
        let two = lit::<T>(2.0);
        let disc = (f * f - lit::<T>(4.0)).max(T::zero()).sqrt();
        ((f + disc) / two).sqrt()
    }
}

/// `k(φ₁) diag(eᵗ, e⁻ᵗ) k(φ₂)` with uniform angles and `t ∈ [−max_t, max_t]`,
/// so that `‖g‖ = e^{|t|}`.
pub fn random_sl2<T: Real, R: Rng + ?Sized>(rng: &mut R, max_t: f64) -> Mat2<T> {
    let phi1 = rng.gen_range(0.0..consts::TAU);
    let phi2 = rng.gen_range(0.0..consts::TAU);
    let t = if max_t > 0.0 { rng.gen_range(-max_t..=max_t) } else { 0.0 };
    let a = Mat2::diagonal(lit::<T>(t.exp())).expect("positive diagonal");
    Mat2::rotation(lit(phi1)).mul(&a).mul(&Mat2::rotation(lit(phi2)))
}

pub fn random_rotation<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Mat2<T> {
    Mat2::rotation(lit(rng.gen_range(0.0..consts::TAU)))
}

/// A point of `P¹` as an angle in `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct P1Point<T> {
    theta: T,
}

impl<T: Real> P1Point<T> {
    pub fn new(theta: T) -> Self {
        let pi = T::PI();
        let mut t = theta - pi * (theta / pi).floor();
        if !(t < pi) || t < T::zero() {
            t = T::zero();
        }
        Self { theta: t }
    }

    pub fn from_vector(v: [T; 2]) -> Self {
        Self::new(v[1].atan2(v[0]))
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn vector(&self) -> [T; 2] {
        let (s, c) = self.theta.sin_cos();
        [c, s]
    }

    /// Angular distance on the circle of length `π`.
    pub fn distance(&self, other: &Self) -> T {
        let d = (self.theta - other.theta).abs();
        d.min(T::PI() - d)
    }

    /// `(cos 2θ, sin 2θ)`: the embedding of `P¹` as the unit circle.
    pub fn doubled(&self) -> [T; 2] {
        let (s, c) = (self.theta + self.theta).sin_cos();
        [c, s]
    }
}

impl<T: Real> SupportPoint<T> for P1Point<T> {
    fn distance(&self, other: &Self) -> T {
        P1Point::distance(self, other)
    }

    fn coordinates(&self) -> Vec<T> {
        vec![self.theta]
    }

    fn from_coordinates(coords: &[T]) -> Result<Self> {
        match coords {
            [t] if t.is_finite() => Ok(Self::new(*t)),
            _ => Err(Error::InvalidPoint(format!("expected one finite angle, got {coords:?}"))),
        }
    }
}

pub fn act_p1<T: Real>(g: &Mat2<T>, p: &P1Point<T>) -> P1Point<T> {
    P1Point::from_vector(g.apply(p.vector()))
}

/// `‖g v(θ)‖⁻²`.
pub fn sigma_base<T: Real>(g: &Mat2<T>, p: &P1Point<T>) -> T {
    let [x, y] = g.apply(p.vector());
    (x * x + y * y).recip()
}

/// The exponent of the power family `σ^s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierS<T> {
    pub s: T,
}

impl<T: Real> MultiplierS<T> {
    pub fn new(s: T) -> Self {
        Self { s }
    }

    pub fn eval(&self, g: &Mat2<T>, p: &P1Point<T>) -> T {
        if self.s == T::zero() {
            return T::one();
        }
        sigma_base(g, p).powf(self.s)
    }
}

pub fn sigma_s<T: Real>(ms: &MultiplierS<T>, g: &Mat2<T>, p: &P1Point<T>) -> T {
    ms.eval(g, p)
}

/// A finitely generated subgroup of `SL₂(ℝ)`.
#[derive(Debug, Clone)]
pub struct Sl2Group<T> {
    generators: Vec<Mat2<T>>,
}

impl<T: Real> Sl2Group<T> {
    pub fn new(generators: Vec<Mat2<T>>) -> Self {
        Self { generators }
    }
}

impl<T: Real> Group for Sl2Group<T> {
    type Element = Mat2<T>;

    fn identity(&self) -> Mat2<T> {
        Mat2::identity()
    }

    fn compose(&self, g: &Mat2<T>, h: &Mat2<T>) -> Mat2<T> {
        g.mul(h)
    }

    fn inverse(&self, g: &Mat2<T>) -> Mat2<T> {
        g.inverse()
    }

    fn generators(&self) -> &[Mat2<T>] {
        &self.generators
    }
}

/// `(act_p1, σ^s)` on `P¹`.
#[derive(Debug, Clone)]
pub struct P1Pair<T> {
    group: Sl2Group<T>,
    multiplier: MultiplierS<T>,
}

impl<T: Real> P1Pair<T> {
    pub fn new(group: Sl2Group<T>, s: T) -> Self {
        Self {
            group,
            multiplier: MultiplierS::new(s),
        }
    }

    pub fn multiplier(&self) -> MultiplierS<T> {
        self.multiplier
    }
}

impl<T: Real> SemiConicPair<T> for P1Pair<T> {
    type Group = Sl2Group<T>;
    type Point = P1Point<T>;

    fn group(&self) -> &Sl2Group<T> {
        &self.group
    }

    fn rho(&self, g: &Mat2<T>, y: &P1Point<T>) -> P1Point<T> {
        act_p1(g, y)
    }

    fn sigma(&self, g: &Mat2<T>, y: &P1Point<T>) -> T {
        self.multiplier.eval(g, y)
    }
}

/// Midpoint rule for `dθ/π`: atoms at `(i + ½)π/N` with weight `1/N`.
pub fn quadrature_measure<T: Real>(n: usize) -> Result<AtomicMeasure<T, P1Point<T>>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("quadrature needs N >= 2, got {n}")));
    }
    let w = lit::<T>(1.0 / n as f64);
    AtomicMeasure::new((0..n).map(|i| (P1Point::new(lit((i as f64 + 0.5) * consts::PI / n as f64)), w)))
}

/// Resultant of the measure pushed to the unit circle by `θ ↦ 2θ`.
pub fn doubled_resultant<T: Real>(nu: &AtomicMeasure<T, P1Point<T>>) -> [T; 2] {
    [
        nu.integrate(|p| p.doubled()[0]),
        nu.integrate(|p| p.doubled()[1]),
    ]
}

/// Removes the atoms within `radius` of `center` and renormalizes.
pub fn excise<T: Real>(nu: &AtomicMeasure<T, P1Point<T>>, center: &P1Point<T>, radius: T) -> Result<AtomicMeasure<T, P1Point<T>>> {
    AtomicMeasure::new(
        nu.atoms()
            .iter()
            .filter(|a| a.point.distance(center) > radius)
            .map(|a| (a.point, a.weight)),
    )?
    .normalize()
}

/// Test functions `cos 2kθ`, `sin 2kθ` for `k = 1..=max_k`.
pub fn harmonics<T: Real>(max_k: usize) -> Vec<(String, Box<dyn Fn(&P1Point<T>) -> T + Send + Sync>)> {
    let mut out: Vec<(String, Box<dyn Fn(&P1Point<T>) -> T + Send + Sync>)> = Vec::new();
    for k in 1..=max_k {
        let m = lit::<T>(2.0 * k as f64);
        out.push((format!("cos{}", 2 * k), Box::new(move |p: &P1Point<T>| (m * p.theta()).cos())));
        out.push((format!("sin{}", 2 * k), Box::new(move |p: &P1Point<T>| (m * p.theta()).sin())));
    }
    out
}

#[derive(Debug, Clone)]
pub struct FixedMeasureReport {
    pub s: f64,
    pub n: usize,
    pub tol: f64,
    /// `σ̃(g, m_N)`.
    pub sigma_tilde: f64,
    /// `(name, |∫f dρ̃_g(m_N) − ∫f dm_N|)` per test function.
    pub residuals: Vec<(String, f64)>,
}

impl FixedMeasureReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.1).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        (self.sigma_tilde - 1.0).abs() <= self.tol && self.max_residual() <= self.tol
    }
}

/// Whether the quadrature surrogate of the uniform measure is fixed by the
/// lifted action of `g` for the multiplier `σ^s`: `σ̃(g, m_N) ≈ 1` and
/// `ρ̃_g(m_N) ≈ m_N` against the harmonics of order `≤ 4`.
pub fn fixed_measure_check<T: Real>(g: &Mat2<T>, s: T, n: usize, tol: f64) -> Result<FixedMeasureReport> {
    if n < 64 {
        return Err(Error::InvalidArgument(format!("fixed-measure check needs N >= 64, got {n}")));
    }
    let m = quadrature_measure::<T>(n)?;
    let lift = LiftedPair::new(P1Pair::new(Sl2Group::new(vec![*g]), s));
    let sigma_tilde = lift.sigma_tilde(g, &m)?;
    let moved = lift.rho_tilde(g, &m)?;
    let residuals = harmonics::<T>(4)
        .into_iter()
        .map(|(name, f)| {
            let r = (moved.integrate(|p| f(p)) - m.integrate(|p| f(p))).abs();
            (name, to_f64(r))
        })
        .collect();
    Ok(FixedMeasureReport {
        s: to_f64(s),
        n,
        tol,
        sigma_tilde: to_f64(sigma_tilde),
        residuals,
    })
}

/// Attracting and repelling directions of a hyperbolic element.
pub fn hyperbolic_directions<T: Real>(g: &Mat2<T>) -> Result<(P1Point<T>, P1Point<T>)> {
    let tr = g.trace();
    if !(tr.abs() > lit::<T>(2.0 + tolerance::HYPERBOLIC_MARGIN)) {
        return Err(Error::NotHyperbolic { trace: to_f64(tr.abs()) });
    }
    let root = (tr * tr - lit::<T>(4.0)).sqrt();
    let two = lit::<T>(2.0);
    let (l1, l2) = ((tr + root) / two, (tr - root) / two);
    let (big, small) = if l1.abs() >= l2.abs() { (l1, l2) } else { (l2, l1) };
    let [a, b, c, d] = g.entries();
    let eigvec = |l: T| -> [T; 2] {
        let u = [b, l - a];
        let w = [l - d, c];
        if u[0].hypot(u[1]) >= w[0].hypot(w[1]) {
            u
        } else {
            w
        }
    };
    Ok((P1Point::from_vector(eigvec(big)), P1Point::from_vector(eigvec(small))))
}

/// Mass of `gⁿ_* ν` within `epsilon` of the attracting direction of `g`,
/// for `n = 0..=iterations`.
pub fn proximality_concentration<T: Real>(
    g: &Mat2<T>,
    nu: &AtomicMeasure<T, P1Point<T>>,
    iterations: usize,
    epsilon: T,
) -> Result<Vec<T>> {
    let (attracting, _) = hyperbolic_directions(g)?;
    if !nu.is_probability(lit(tolerance::WEIGHT_SUM)) {
        return Err(Error::NotProbability {
            sum: to_f64(nu.total_mass()),
        });
    }
    let mut points: Vec<(P1Point<T>, T)> = nu.atoms().iter().map(|a| (a.point, a.weight)).collect();
    let mut curve = Vec::with_capacity(iterations + 1);
    for step in 0..=iterations {
        if step > 0 {
            for (p, _) in points.iter_mut() {
                *p = act_p1(g, p);
            }
        }
        let inside: Vec<T> = points
            .iter()
            .filter(|(p, _)| p.distance(&attracting) <= epsilon)
            .map(|(_, w)| *w)
            .collect();
        curve.push(crate::scalar::pairwise_sum(&inside));
    }
    Ok(curve)
}

/// `F[i][j] = σ^s(g_i, y_j)`.
pub fn v_sigma_sample<T: Real>(ms: &MultiplierS<T>, group_points: &[Mat2<T>], base_points: &[P1Point<T>]) -> Result<Vec<Vec<T>>> {
    if group_points.is_empty() || base_points.is_empty() {
        return Err(Error::Empty("v_sigma_sample needs group and base points"));
    }
    Ok(group_points
        .iter()
        .map(|g| base_points.iter().map(|y| ms.eval(g, y)).collect())
        .collect())
}

/// Checks `σ^s(gγ, y) = σ^s(γ, y) σ^s(g, γy)`, the equivariance of
/// `y ↦ σ^s(·, y)`, on `(g, γ, y)` samples (relative).
pub fn v_sigma_equivariance_check<T: Real>(ms: &MultiplierS<T>, samples: &[(Mat2<T>, Mat2<T>, P1Point<T>)], tol: f64) -> CheckReport {
    let mut report = CheckReport::new("v-sigma-equivariance", tol);
    for (i, (g, gamma, y)) in samples.iter().enumerate() {
        let lhs = ms.eval(&g.mul(gamma), y);
        let rhs = ms.eval(gamma, y) * ms.eval(g, &act_p1(gamma, y));
        report.push(format!("sample#{i}"), vec![to_f64(lhs)], vec![to_f64(rhs)], to_f64(relative_diff(lhs, rhs)));
    }
    report
}
