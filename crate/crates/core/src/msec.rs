//! Lifting a pair `(ρ, σ)` on `Y` to atomic probability measures on `Y`.
//!
//! For `ν = Σ wᵢ δ_{yᵢ}`:
//!
//! * `σ̃(g, ν) = Σ wᵢ σ(g, yᵢ)`
//! * `ρ̃_g(ν) = Σ (wᵢ σ(g, yᵢ) / σ̃(g, ν)) δ_{ρ_g yᵢ}`
//!
//! Only finitely supported measures are represented. Checks that need a
//! barycenter require the base points to be [`ConePoint`]s on a section.

use std::marker::PhantomData;

use crate::cone::ConePoint;
use crate::dynamics::{ConvexDomain, Elem, Group, GroupModel, SemiConicPair};
use crate::error::{Error, Result};
use crate::measure::{Atom, AtomicMeasure, SupportPoint};
use crate::report::CheckReport;
use crate::scalar::{lit, relative_diff, to_f64, Real};
use crate::tolerance;

fn require_probability<T: Real, P: SupportPoint<T>>(nu: &AtomicMeasure<T, P>) -> Result<()> {
    if nu.is_probability(lit(tolerance::WEIGHT_SUM)) {
        Ok(())
    } else {
        Err(Error::NotProbability {
            sum: to_f64(nu.total_mass()),
        })
    }
}

/// The pair `(ρ̃, σ̃)` on atomic measures over the points of `base`.
pub struct LiftedPair<T, B> {
    base: B,
    _scalar: PhantomData<fn() -> T>,
}

impl<T, B: Clone> Clone for LiftedPair<T, B> {
    fn clone(&self) -> Self {
        Self::new(self.base.clone())
    }
}

impl<T, B> LiftedPair<T, B> {
    pub fn new(base: B) -> Self {
        Self {
            base,
            _scalar: PhantomData,
        }
    }

    pub fn base(&self) -> &B {
        &self.base
    }
}

impl<T, B> LiftedPair<T, B>
where
    T: Real,
    B: SemiConicPair<T>,
    B::Point: SupportPoint<T>,
{
    /// `σ̃(g, ν)`; `ν` must be a probability measure.
    pub fn sigma_tilde(&self, g: &Elem<T, B>, nu: &AtomicMeasure<T, B::Point>) -> Result<T> {
        require_probability(nu)?;
        Ok(self.sigma(g, nu))
    }

    /// `ρ̃_g(ν)`; `ν` must be a probability measure.
    pub fn rho_tilde(&self, g: &Elem<T, B>, nu: &AtomicMeasure<T, B::Point>) -> Result<AtomicMeasure<T, B::Point>> {
        require_probability(nu)?;
        Ok(self.rho(g, nu))
    }
}

impl<T, B> SemiConicPair<T> for LiftedPair<T, B>
where
    T: Real,
    B: SemiConicPair<T>,
    B::Point: SupportPoint<T>,
{
    type Group = B::Group;
    type Point = AtomicMeasure<T, B::Point>;

    fn group(&self) -> &B::Group {
        self.base.group()
    }

    fn rho(&self, g: &Elem<T, B>, nu: &Self::Point) -> Self::Point {
        let weighted: Vec<Atom<T, B::Point>> = nu
            .atoms()
            .iter()
            .map(|a| Atom {
                point: self.base.rho(g, &a.point),
                weight: a.weight * self.base.sigma(g, &a.point),
            })
            .collect();
        let total = AtomicMeasure::from_atoms_unchecked(weighted.clone()).total_mass();
        AtomicMeasure::from_atoms_unchecked(
            weighted
                .into_iter()
                .map(|a| Atom {
                    point: a.point,
                    weight: a.weight / total,
                })
                .collect(),
        )
    }

    fn sigma(&self, g: &Elem<T, B>, nu: &Self::Point) -> T {
        nu.integrate(|y| self.base.sigma(g, y))
    }
}

/// The lift that only pushes atoms forward, without the `σ`-reweighting.
/// It agrees with [`LiftedPair`] exactly when `σ ≡ 1`.
pub struct PushforwardLift<T, B> {
    base: B,
    _scalar: PhantomData<fn() -> T>,
}

impl<T, B> PushforwardLift<T, B> {
    pub fn new(base: B) -> Self {
        Self {
            base,
            _scalar: PhantomData,
        }
    }
}

impl<T, B> SemiConicPair<T> for PushforwardLift<T, B>
where
    T: Real,
    B: SemiConicPair<T>,
    B::Point: SupportPoint<T>,
{
    type Group = B::Group;
    type Point = AtomicMeasure<T, B::Point>;

    fn group(&self) -> &B::Group {
        self.base.group()
    }

    fn rho(&self, g: &Elem<T, B>, nu: &Self::Point) -> Self::Point {
        nu.pushforward(|y| self.base.rho(g, y))
    }

    fn sigma(&self, g: &Elem<T, B>, nu: &Self::Point) -> T {
        nu.integrate(|y| self.base.sigma(g, y))
    }
}

impl<T: Real, P: SupportPoint<T>> ConvexDomain<T> for AtomicMeasure<T, P> {
    fn combine(&self, a: T, other: &Self, b: T) -> Self {
        let atoms = self
            .atoms()
            .iter()
            .map(|x| (x, a))
            .chain(other.atoms().iter().map(|x| (x, b)))
            .filter(|(x, c)| x.weight * *c != T::zero())
            .map(|(x, c)| Atom {
                point: x.point.clone(),
                weight: x.weight * c,
            })
            .collect();
        AtomicMeasure::from_atoms_unchecked(atoms)
    }

    /// Total variation after identifying points within [`tolerance::MERGE`].
    fn discrepancy(&self, other: &Self) -> T {
        self.total_variation(other, lit(tolerance::MERGE))
    }

    fn report_values(&self) -> Vec<f64> {
        self.merge_atoms(lit(tolerance::MERGE))
            .sorted()
            .atoms()
            .iter()
            .flat_map(|a| a.point.coordinates().into_iter().chain([a.weight]).map(to_f64))
            .collect()
    }
}

fn relative_vec<T: Real>(a: &ConePoint<T>, b: &ConePoint<T>) -> f64 {
    let scale = a.norm().max(b.norm()).max(T::one());
    to_f64(a.max_abs_diff(b) / scale)
}

/// Checks `ρ_g(β(ν)) = β(ρ̃_g(ν))` and `σ̃(g, ν) = σ(g, β(ν))`, where `β` is
/// the barycenter of a probability measure on the section.
///
/// `lift` is normally a [`LiftedPair`] over `base`; passing another lift
/// (for instance [`PushforwardLift`]) tests that lift instead.
pub fn barycenter_equivariance_check<T, B, L>(
    base: &B,
    lift: &L,
    samples: &[(Elem<T, B>, AtomicMeasure<T>)],
    tol: T,
) -> CheckReport
where
    T: Real,
    B: SemiConicPair<T, Point = ConePoint<T>>,
    L: SemiConicPair<T, Group = B::Group, Point = AtomicMeasure<T>>,
{
    let mut report = CheckReport::new("barycenter-equivariance", to_f64(tol));
    for (i, (g, nu)) in samples.iter().enumerate() {
        let (Ok(beta), Ok(beta_moved)) = (nu.resultant(), lift.rho(g, nu).resultant()) else {
            report.push(format!("sample#{i}"), vec![], vec![], f64::INFINITY);
            continue;
        };
        let lhs = base.rho(g, &beta);
        report.push(
            format!("sample#{i} | rho"),
            lhs.to_f64_vec(),
            beta_moved.to_f64_vec(),
            relative_vec(&lhs, &beta_moved),
        );
        let (st, sb) = (lift.sigma(g, nu), base.sigma(g, &beta));
        report.push(
            format!("sample#{i} | sigma"),
            vec![to_f64(st)],
            vec![to_f64(sb)],
            to_f64(relative_diff(st, sb)),
        );
    }
    report
}

/// Checks `ρ̃_{gγ}(ν) = ρ̃_g(ρ̃_γ(ν))` in total variation.
pub fn lift_composition_check<T, B>(
    lift: &LiftedPair<T, B>,
    samples: &[(Elem<T, B>, Elem<T, B>, AtomicMeasure<T, B::Point>)],
    tol: T,
) -> CheckReport
where
    T: Real,
    B: SemiConicPair<T>,
    B::Point: SupportPoint<T>,
{
    let mut report = CheckReport::new("lift-composition", to_f64(tol));
    for (i, (g, h, nu)) in samples.iter().enumerate() {
        let gh = lift.group().compose(g, h);
        let lhs = lift.rho(&gh, nu);
        let rhs = lift.rho(g, &lift.rho(h, nu));
        report.push(
            format!("sample#{i}"),
            lhs.report_values(),
            rhs.report_values(),
            to_f64(lhs.discrepancy(&rhs)),
        );
    }
    report
}

/// Atom-wise check of
/// `d(ρ̃_g ν)(y) = d(ρ_{g*}ν)(y) / (σ(g⁻¹, y) σ̃(g, ν))`, relative.
///
/// Both measures are merged at [`tolerance::MERGE`] first; an atom of the
/// pushforward with no counterpart in `ρ̃_g ν` is reported as an infinite
/// violation.
pub fn radon_nikodym_check<T, B>(
    lift: &LiftedPair<T, B>,
    samples: &[(Elem<T, B>, AtomicMeasure<T, B::Point>)],
    tol: T,
) -> CheckReport
where
    T: Real,
    B: SemiConicPair<T>,
    B::Point: SupportPoint<T>,
{
    let merge = lit::<T>(tolerance::MERGE);
    let mut report = CheckReport::new("radon-nikodym", to_f64(tol));
    let base = lift.base();
    for (i, (g, nu)) in samples.iter().enumerate() {
        let sigma_tilde = match lift.sigma_tilde(g, nu) {
            Ok(s) => s,
            Err(e) => {
                report.push(format!("sample#{i} | {e}"), vec![], vec![], f64::INFINITY);
                continue;
            }
        };
        let g_inv = lift.group().inverse(g);
        let pushed = nu.pushforward(|y| base.rho(g, y)).merge_atoms(merge);
        let lifted = lift.rho(g, nu).merge_atoms(merge);
        if pushed.len() != lifted.len() {
            report.push(
                format!("sample#{i} | atom count {} vs {}", pushed.len(), lifted.len()),
                vec![],
                vec![],
                f64::INFINITY,
            );
            continue;
        }
        for (j, atom) in pushed.atoms().iter().enumerate() {
            let expected = atom.weight / (base.sigma(&g_inv, &atom.point) * sigma_tilde);
            let found = lifted.atoms().iter().find(|b| b.point.distance(&atom.point) <= merge);
            let (got, violation) = match found {
                Some(b) => (to_f64(b.weight), to_f64(relative_diff(b.weight, expected))),
                None => (f64::NAN, f64::INFINITY),
            };
            report.push(format!("sample#{i} | atom#{j}"), vec![got], vec![to_f64(expected)], violation);
        }
    }
    report
}

/// The conic action on (not necessarily normalized) measures over the
/// section: atoms `(ρ_g y, w σ(g, y))`.
pub fn lifted_conic_action<T, B>(pair: &B, g: &Elem<T, B>, mu: &AtomicMeasure<T, B::Point>) -> AtomicMeasure<T, B::Point>
where
    T: Real,
    B: SemiConicPair<T>,
    B::Point: SupportPoint<T>,
{
    AtomicMeasure::from_atoms_unchecked(
        mu.atoms()
            .iter()
            .map(|a| Atom {
                point: pair.rho(g, &a.point),
                weight: a.weight * pair.sigma(g, &a.point),
            })
            .collect(),
    )
}

/// Checks that the resultant is a factor map: `r(τ̃_g μ) = τ_g(r(μ))`, with
/// `τ̃` from [`lifted_conic_action`] and `τ` any conic action on the cone
/// (typically the one synthesized from `pair`). Violations are relative to
/// the larger norm.
pub fn resultant_equivariance_check<T, B, M>(
    pair: &B,
    model: &M,
    samples: &[(Elem<T, B>, AtomicMeasure<T>)],
    tol: T,
) -> CheckReport
where
    T: Real,
    B: SemiConicPair<T, Point = ConePoint<T>>,
    M: GroupModel<T, Element = Elem<T, B>>,
{
    let mut report = CheckReport::new("resultant-equivariance", to_f64(tol));
    for (i, (g, mu)) in samples.iter().enumerate() {
        let moved = lifted_conic_action(pair, g, mu);
        let (Ok(lhs), Ok(r)) = (moved.resultant(), mu.resultant()) else {
            report.push(format!("sample#{i}"), vec![], vec![], f64::INFINITY);
            continue;
        };
        let rhs = model.act(g, &r);
        let scale = lhs.norm().max(rhs.norm()).max(T::min_positive_value());
        report.push(
            format!("sample#{i}"),
            lhs.to_f64_vec(),
            rhs.to_f64_vec(),
            to_f64(lhs.distance(&rhs) / scale),
        );
    }
    report
}

/// The functional `μ ↦ ∫ f dμ`. Rejects the measure if `f ≤ 0` at one of
/// its support points.
pub fn section_functional_from_density<T, P>(f: impl Fn(&P) -> T, nu: &AtomicMeasure<T, P>) -> Result<T>
where
    T: Real,
    P: SupportPoint<T>,
{
    for a in nu.atoms() {
        let v = f(&a.point);
        if !(v > T::zero()) || !v.is_finite() {
            return Err(Error::NonPositiveDensity {
                at: format!("{:?}", a.point),
                value: to_f64(v),
            });
        }
    }
    Ok(nu.integrate(f))
}

/// `(ρ, σ₂)` with `σ₂(g, y) = f(ρ_g y) / f(y) · σ₁(g, y)`: the same action,
/// multiplier moved within its coset of trivial multipliers.
pub struct ReweightedPair<T, B, F> {
    base: B,
    density: F,
    _scalar: PhantomData<fn() -> T>,
}

impl<T, B, F> ReweightedPair<T, B, F> {
    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn density(&self) -> &F {
        &self.density
    }
}

impl<T, B, F> SemiConicPair<T> for ReweightedPair<T, B, F>
where
    T: Real,
    B: SemiConicPair<T>,
    F: Fn(&B::Point) -> T + Send + Sync,
{
    type Group = B::Group;
    type Point = B::Point;

    fn group(&self) -> &B::Group {
        self.base.group()
    }

    fn rho(&self, g: &Elem<T, B>, y: &B::Point) -> B::Point {
        self.base.rho(g, y)
    }

    fn sigma(&self, g: &Elem<T, B>, y: &B::Point) -> T {
        let moved = self.base.rho(g, y);
        (self.density)(&moved) / (self.density)(y) * self.base.sigma(g, y)
    }
}

/// Builds a [`ReweightedPair`], checking `f > 0` on `samples`.
pub fn reweight_multiplier<T, B, F>(pair: B, f: F, samples: &[B::Point]) -> Result<ReweightedPair<T, B, F>>
where
    T: Real,
    B: SemiConicPair<T>,
    F: Fn(&B::Point) -> T + Send + Sync,
{
    for y in samples {
        let v = f(y);
        if !(v > T::zero()) || !v.is_finite() {
            return Err(Error::NonPositiveDensity {
                at: format!("{y:?}"),
                value: to_f64(v),
            });
        }
    }
    Ok(ReweightedPair {
        base: pair,
        density: f,
        _scalar: PhantomData,
    })
}
