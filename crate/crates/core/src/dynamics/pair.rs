//! Pairs of an action and a multiplier, the pair induced by a conic action,
//! and the reverse synthesis of a conic action from a pair.

use std::fmt;
use std::sync::Arc;

use crate::cone::{ConePoint, SectionFunctional};
use crate::dynamics::group::{Group, GroupModel};
use crate::dynamics::verify::verify_conic_pair;
use crate::error::{Error, Result};
use crate::scalar::{relative_diff, to_f64, Real};

/// An action `ρ` of a group on a space together with a positive function
/// `σ(g, y)`. Whether `σ` is actually a multiplier (and whether the pair
/// satisfies condition (1)) is a property checked by the verification
/// routines, not assumed by the trait.
pub trait SemiConicPair<T: Real>: Send + Sync {
    type Group: Group;
    type Point: Clone + fmt::Debug + Send + Sync;

    fn group(&self) -> &Self::Group;
    fn rho(&self, g: &Elem<T, Self>, y: &Self::Point) -> Self::Point;
    fn sigma(&self, g: &Elem<T, Self>, y: &Self::Point) -> T;
}

/// Group element type of a pair.
pub type Elem<T, P> = <<P as SemiConicPair<T>>::Group as Group>::Element;

/// Points that can be combined with nonnegative coefficients and compared.
pub trait ConvexDomain<T: Real>: Clone + fmt::Debug {
    /// `a * self + b * other`.
    fn combine(&self, a: T, other: &Self, b: T) -> Self;
    /// A nonnegative distance-like discrepancy, zero for equal points.
    fn discrepancy(&self, other: &Self) -> T;
    /// Flat numeric view for reports.
    fn report_values(&self) -> Vec<f64>;
}

impl<T: Real> ConvexDomain<T> for ConePoint<T> {
    fn combine(&self, a: T, other: &Self, b: T) -> Self {
        ConePoint::combine(self, a, other, b)
    }

    fn discrepancy(&self, other: &Self) -> T {
        self.max_abs_diff(other)
    }

    fn report_values(&self) -> Vec<f64> {
        self.to_f64_vec()
    }
}

type RhoFn<T, E> = Arc<dyn Fn(&E, &ConePoint<T>) -> ConePoint<T> + Send + Sync>;
type SigmaFn<T, E> = Arc<dyn Fn(&E, &ConePoint<T>) -> T + Send + Sync>;

/// A pair `(ρ, σ)` on the section `L = 1` of a cone in `R^d`.
pub struct ConicPair<T: Real, G: Group> {
    group: Arc<G>,
    section: SectionFunctional<T>,
    rho: RhoFn<T, G::Element>,
    sigma: SigmaFn<T, G::Element>,
}

impl<T: Real, G: Group> Clone for ConicPair<T, G> {
    fn clone(&self) -> Self {
        Self {
            group: Arc::clone(&self.group),
            section: self.section.clone(),
            rho: Arc::clone(&self.rho),
            sigma: Arc::clone(&self.sigma),
        }
    }
}

impl<T: Real, G: Group> fmt::Debug for ConicPair<T, G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConicPair").field("section", &self.section).finish_non_exhaustive()
    }
}

impl<T: Real, G: Group + 'static> ConicPair<T, G> {
    pub fn from_parts(
        group: Arc<G>,
        section: SectionFunctional<T>,
        rho: impl Fn(&G::Element, &ConePoint<T>) -> ConePoint<T> + Send + Sync + 'static,
        sigma: impl Fn(&G::Element, &ConePoint<T>) -> T + Send + Sync + 'static,
    ) -> Self {
        Self {
            group,
            section,
            rho: Arc::new(rho),
            sigma: Arc::new(sigma),
        }
    }

    pub fn section(&self) -> &SectionFunctional<T> {
        &self.section
    }

    pub fn group_arc(&self) -> Arc<G> {
        Arc::clone(&self.group)
    }

    /// Same `ρ`, multiplier replaced by `f(g, x, σ(g, x))`.
    pub fn map_sigma(&self, f: impl Fn(&G::Element, &ConePoint<T>, T) -> T + Send + Sync + 'static) -> Self {
        let sigma = Arc::clone(&self.sigma);
        Self {
            group: Arc::clone(&self.group),
            section: self.section.clone(),
            rho: Arc::clone(&self.rho),
            sigma: Arc::new(move |g, x| f(g, x, sigma(g, x))),
        }
    }

    /// Same `σ`, action replaced by `f(g, x, ρ(g, x))`.
    pub fn map_rho(&self, f: impl Fn(&G::Element, &ConePoint<T>, ConePoint<T>) -> ConePoint<T> + Send + Sync + 'static) -> Self {
        let rho = Arc::clone(&self.rho);
        Self {
            group: Arc::clone(&self.group),
            section: self.section.clone(),
            rho: Arc::new(move |g, x| f(g, x, rho(g, x))),
            sigma: Arc::clone(&self.sigma),
        }
    }
}

impl<T: Real, G: Group> SemiConicPair<T> for ConicPair<T, G> {
    type Group = G;
    type Point = ConePoint<T>;

    fn group(&self) -> &G {
        &self.group
    }

    fn rho(&self, g: &G::Element, y: &ConePoint<T>) -> ConePoint<T> {
        (self.rho)(g, y)
    }

    fn sigma(&self, g: &G::Element, y: &ConePoint<T>) -> T {
        (self.sigma)(g, y)
    }
}

/// The pair induced on the section `L = 1`: `σ(g, x) = L(τ_g x)` and
/// `ρ_g(x) = τ_g x / σ(g, x)`.
///
/// Positivity of `L ∘ τ_g` is validated on `samples` for every generator,
/// every inverse generator and the identity.
pub fn induced_pair<T, M>(model: Arc<M>, section: SectionFunctional<T>, samples: &[ConePoint<T>]) -> Result<ConicPair<T, M>>
where
    T: Real,
    M: GroupModel<T> + 'static,
{
    if section.dim() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            got: section.dim(),
        });
    }
    let mut elements = model.symmetric_generators();
    elements.push(model.identity());
    for x in samples {
        x.check_dim(model.dim())?;
        if section.eval(x) <= T::zero() {
            return Err(Error::NotInOpenCone { value: to_f64(section.eval(x)) });
        }
        for g in &elements {
            let v = section.eval(&model.act(g, x));
            if !(v > T::zero()) {
                return Err(Error::ActionLeavesCone(format!("L(g x) = {v} for g = {g:?}, x = {x}")));
            }
        }
    }
    let (m1, l1) = (Arc::clone(&model), section.clone());
    let (m2, l2) = (Arc::clone(&model), section.clone());
    Ok(ConicPair::from_parts(
        model,
        section,
        move |g, x| {
            let v = m1.act(g, x);
            let s = l1.eval(&v);
            v.scale(T::one() / s)
        },
        move |g, x| l2.eval(&m2.act(g, x)),
    ))
}

/// The conic action `τ_g(v) = L(v) σ(g, v/L(v)) ρ_g(v/L(v))` determined by
/// a pair; `τ_g(0) = 0`.
#[derive(Debug, Clone)]
pub struct SynthesizedAction<T: Real, G: Group> {
    pair: ConicPair<T, G>,
}

impl<T: Real, G: Group> SynthesizedAction<T, G> {
    pub fn pair(&self) -> &ConicPair<T, G> {
        &self.pair
    }
}

impl<T: Real, G: Group> Group for SynthesizedAction<T, G> {
    type Element = G::Element;

    fn identity(&self) -> G::Element {
        self.pair.group.identity()
    }

    fn compose(&self, g: &G::Element, h: &G::Element) -> G::Element {
        self.pair.group.compose(g, h)
    }

    fn inverse(&self, g: &G::Element) -> G::Element {
        self.pair.group.inverse(g)
    }

    fn generators(&self) -> &[G::Element] {
        self.pair.group.generators()
    }
}

impl<T: Real, G: Group> GroupModel<T> for SynthesizedAction<T, G> {
    fn dim(&self) -> usize {
        self.pair.section.dim()
    }

    fn act(&self, g: &G::Element, v: &ConePoint<T>) -> ConePoint<T> {
        let l = self.pair.section.eval(v);
        if l == T::zero() {
            return ConePoint::zeros(v.dim());
        }
        let x = v.scale(T::one() / l);
        (self.pair.rho)(g, &x).scale(l * (self.pair.sigma)(g, &x))
    }
}

/// Builds the conic action of a pair after checking condition (1) and the
/// affinity of `σ` on `validation` at `tol`.
pub fn synthesize_action<T: Real, G: Group + 'static>(
    pair: &ConicPair<T, G>,
    validation: &[(G::Element, ConePoint<T>, ConePoint<T>, T)],
    tol: T,
) -> Result<SynthesizedAction<T, G>> {
    let report = verify_conic_pair(pair, validation, tol);
    if let Some((row, _)) = report.first_failure() {
        return Err(Error::ConditionViolated {
            sample: row.inputs.clone(),
            violation: row.violation,
        });
    }
    if validation.is_empty() {
        return Err(Error::Empty("validation samples"));
    }
    Ok(SynthesizedAction { pair: pair.clone() })
}

/// The homomorphism `a(g) = σ₂(g, x) / σ₁(g, x)` relating two multipliers
/// of the same action, evaluated at `points[0]`.
///
/// Fails if the ratio is not constant over `points` or if the two actions
/// disagree on `points`, both within relative `tol`.
pub fn multiplier_ratio<T, P1, P2>(pair1: &P1, pair2: &P2, g: &Elem<T, P1>, points: &[P1::Point], tol: T) -> Result<T>
where
    T: Real,
    P1: SemiConicPair<T>,
    P1::Point: ConvexDomain<T>,
    P2: SemiConicPair<T, Group = P1::Group, Point = P1::Point>,
{
    let first = points.first().ok_or(Error::Empty("ratio points"))?;
    let a = pair2.sigma(g, first) / pair1.sigma(g, first);
    let mut spread = T::zero();
    for x in points {
        let r = pair2.sigma(g, x) / pair1.sigma(g, x);
        spread = spread.max(relative_diff(r, a));
        let d = pair1.rho(g, x).discrepancy(&pair2.rho(g, x));
        if d > tol {
            return Err(Error::PairsDoNotShareRho { spread: to_f64(d) });
        }
    }
    if spread > tol {
        return Err(Error::PairsDoNotShareRho { spread: to_f64(spread) });
    }
    Ok(a)
}

/// `(ρ, a·σ)` for a positive homomorphism `a`, validated on `samples`:
/// `a(e) = 1`, `a > 0` and `a(gh) = a(g) a(h)` within relative `tol`.
pub fn scale_multiplier<T, G>(
    pair: &ConicPair<T, G>,
    hom: impl Fn(&G::Element) -> T + Send + Sync + 'static,
    samples: &[(G::Element, G::Element)],
    tol: T,
) -> Result<ConicPair<T, G>>
where
    T: Real,
    G: Group + 'static,
{
    let group = pair.group_arc();
    let at_identity = hom(&group.identity());
    if relative_diff(at_identity, T::one()) > tol {
        return Err(Error::NotHomomorphism(format!("a(e) = {at_identity}")));
    }
    for (g, h) in samples {
        let (ag, ah) = (hom(g), hom(h));
        if !(ag > T::zero()) || !(ah > T::zero()) {
            return Err(Error::NotHomomorphism(format!("nonpositive value {ag} or {ah}")));
        }
        let agh = hom(&group.compose(g, h));
        if relative_diff(agh, ag * ah) > tol {
            return Err(Error::NotHomomorphism(format!("a(gh) = {agh} but a(g) a(h) = {}", ag * ah)));
        }
    }
    Ok(pair.map_sigma(move |g, _, s| hom(g) * s))
}
