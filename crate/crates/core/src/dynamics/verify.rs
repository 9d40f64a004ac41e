//! Sampled verification of the multiplier identity, condition (1), and the
//! action axioms.

use crate::cone::{ConePoint, SectionFunctional};
use crate::dynamics::group::{Group, GroupModel, GroupWord};
use crate::dynamics::pair::{ConvexDomain, Elem, SemiConicPair};
use crate::report::{CheckReport, SampleRow};
use crate::scalar::{relative_diff, to_f64, Real};

/// Checks `σ(gγ, x) = σ(g, ρ_γ x) σ(γ, x)` on every word pair × point,
/// reporting the relative violation.
pub fn verify_multiplier<T, P>(pair: &P, word_pairs: &[(GroupWord, GroupWord)], points: &[P::Point], tol: T) -> CheckReport
where
    T: Real,
    P: SemiConicPair<T>,
{
    let group = pair.group();
    let mut report = CheckReport::new("multiplier", to_f64(tol));
    for (wg, wh) in word_pairs {
        let (g, h) = match (group.evaluate(wg), group.evaluate(wh)) {
            (Ok(g), Ok(h)) => (g, h),
            _ => {
                report.push(format!("{wg} | {wh}"), vec![], vec![], f64::INFINITY);
                continue;
            }
        };
        for (i, x) in points.iter().enumerate() {
            let (lhs, rhs) = cocycle_sides(pair, &g, &h, x);
            report.push(
                format!("g={wg} | gamma={wh} | x#{i}"),
                vec![to_f64(lhs)],
                vec![to_f64(rhs)],
                to_f64(relative_diff(lhs, rhs)),
            );
        }
    }
    report
}

/// As [`verify_multiplier`] with explicit `(g, γ, x)` triples.
pub fn verify_multiplier_elements<T, P>(pair: &P, triples: &[(Elem<T, P>, Elem<T, P>, P::Point)], tol: T) -> CheckReport
where
    T: Real,
    P: SemiConicPair<T>,
{
    let mut report = CheckReport::new("multiplier", to_f64(tol));
    for (i, (g, h, x)) in triples.iter().enumerate() {
        let (lhs, rhs) = cocycle_sides(pair, g, h, x);
        report.push(
            format!("triple#{i}"),
            vec![to_f64(lhs)],
            vec![to_f64(rhs)],
            to_f64(relative_diff(lhs, rhs)),
        );
    }
    report
}

fn cocycle_sides<T: Real, P: SemiConicPair<T>>(pair: &P, g: &Elem<T, P>, h: &Elem<T, P>, x: &P::Point) -> (T, T) {
    let gh = pair.group().compose(g, h);
    let lhs = pair.sigma(&gh, x);
    let rhs = pair.sigma(g, &pair.rho(h, x)) * pair.sigma(h, x);
    (lhs, rhs)
}

/// Outcome of [`verify_conic_pair`]: condition (1) and affinity of `σ(g,·)`.
#[derive(Debug, Clone)]
pub struct ConicPairReport {
    pub condition: CheckReport,
    pub affinity: CheckReport,
}

impl ConicPairReport {
    pub fn passed(&self) -> bool {
        self.condition.passed() && self.affinity.passed()
    }

    pub fn max_violation(&self) -> f64 {
        self.condition.max_violation().max(self.affinity.max_violation())
    }

    /// First failing row and the name of the check it belongs to.
    pub fn first_failure(&self) -> Option<(&SampleRow, &str)> {
        self.condition
            .first_failure()
            .map(|r| (r, "condition"))
            .or_else(|| self.affinity.first_failure().map(|r| (r, "affinity")))
    }
}

/// For each `(g, x₁, x₂, λ)`: with `x = λx₁ + (1−λ)x₂`, checks
///
/// * `ρ_g(x) = [λσ(g,x₁)ρ_g(x₁) + (1−λ)σ(g,x₂)ρ_g(x₂)] / σ(g,x)` (discrepancy
///   of the point type, per coordinate for vectors), and
/// * `σ(g,x) = λσ(g,x₁) + (1−λ)σ(g,x₂)` (relative).
pub fn verify_conic_pair<T, P>(pair: &P, samples: &[(Elem<T, P>, P::Point, P::Point, T)], tol: T) -> ConicPairReport
where
    T: Real,
    P: SemiConicPair<T>,
    P::Point: ConvexDomain<T>,
{
    let mut condition = CheckReport::new("condition-1", to_f64(tol));
    let mut affinity = CheckReport::new("sigma-affinity", to_f64(tol));
    for (i, (g, x1, x2, lambda)) in samples.iter().enumerate() {
        let lambda = *lambda;
        let mu = T::one() - lambda;
        let x = x1.combine(lambda, x2, mu);
        let (s1, s2, s) = (pair.sigma(g, x1), pair.sigma(g, x2), pair.sigma(g, &x));
        let lhs = pair.rho(g, &x);
        let rhs = pair.rho(g, x1).combine(lambda * s1 / s, &pair.rho(g, x2), mu * s2 / s);
        let label = format!("sample#{i} | lambda={lambda}");
        condition.push(label.clone(), lhs.report_values(), rhs.report_values(), to_f64(lhs.discrepancy(&rhs)));
        let affine = lambda * s1 + mu * s2;
        affinity.push(label, vec![to_f64(s)], vec![to_f64(affine)], to_f64(relative_diff(s, affine)));
    }
    ConicPairReport { condition, affinity }
}

/// Checks the action axioms on samples: `τ_e x = x`, `τ_{gh} x = τ_g τ_h x`
/// and `τ_g(ax + by) = aτ_g x + bτ_g y` for `a, b ≥ 0`. Violations are
/// relative to the size of the compared vectors.
pub fn verify_action_axioms<T, M>(model: &M, samples: &[(M::Element, M::Element, ConePoint<T>, ConePoint<T>)], tol: T) -> CheckReport
where
    T: Real,
    M: GroupModel<T>,
{
    let mut report = CheckReport::new("action-axioms", to_f64(tol));
    let e = model.identity();
    let rel = |a: &ConePoint<T>, b: &ConePoint<T>| {
        let scale = a.norm().max(b.norm()).max(T::min_positive_value());
        to_f64(a.distance(b) / scale)
    };
    let (a, b) = (crate::scalar::lit::<T>(0.3), crate::scalar::lit::<T>(1.7));
    for (i, (g, h, x, y)) in samples.iter().enumerate() {
        let ex = model.act(&e, x);
        report.push(format!("identity#{i}"), ex.to_f64_vec(), x.to_f64_vec(), rel(&ex, x));
        let lhs = model.act(&model.compose(g, h), x);
        let rhs = model.act(g, &model.act(h, x));
        report.push(format!("compose#{i}"), lhs.to_f64_vec(), rhs.to_f64_vec(), rel(&lhs, &rhs));
        let lin_l = model.act(g, &x.combine(a, y, b));
        let lin_r = model.act(g, x).combine(a, &model.act(g, y), b);
        report.push(format!("linear#{i}"), lin_l.to_f64_vec(), lin_r.to_f64_vec(), rel(&lin_l, &lin_r));
    }
    report
}

/// Whether `L(τ_g x) = L(x)` (relative `tol`) on every sample, i.e. whether
/// the section `L = 1` is invariant.
pub fn invariant_section_check<T, M>(model: &M, section: &SectionFunctional<T>, samples: &[(M::Element, ConePoint<T>)], tol: T) -> bool
where
    T: Real,
    M: GroupModel<T>,
{
    samples
        .iter()
        .all(|(g, x)| relative_diff(section.eval(&model.act(g, x)), section.eval(x)) <= tol)
}
