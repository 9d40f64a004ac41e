//! Finitely supported nonnegative measures and their resultant.

use std::cmp::Ordering;
use std::convert::Infallible;
use std::fmt;

use crate::cone::ConePoint;
use crate::error::{Error, Result};
use crate::scalar::{lit, pairwise_sum, to_f64, Real};

/// A point type that can carry an atom: it needs a metric (for coalescing)
/// and a coordinate encoding (for ordering and CSV).
pub trait SupportPoint<T: Real>: Clone + fmt::Debug + Send + Sync {
    fn distance(&self, other: &Self) -> T;
    fn coordinates(&self) -> Vec<T>;
    fn from_coordinates(coords: &[T]) -> Result<Self>;
}

impl<T: Real> SupportPoint<T> for ConePoint<T> {
    fn distance(&self, other: &Self) -> T {
        ConePoint::distance(self, other)
    }

    fn coordinates(&self) -> Vec<T> {
        self.coords().to_vec()
    }

    fn from_coordinates(coords: &[T]) -> Result<Self> {
        ConePoint::new(coords.to_vec())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Atom<T, P> {
    pub point: P,
    pub weight: T,
}

/// A finite list of weighted support points. Weights are strictly positive;
/// zero-weight atoms are dropped at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMeasure<T, P = ConePoint<T>> {
    atoms: Vec<Atom<T, P>>,
}

impl<T: Real, P: SupportPoint<T>> AtomicMeasure<T, P> {
    pub fn new(atoms: impl IntoIterator<Item = (P, T)>) -> Result<Self> {
        let mut out = Vec::new();
        let mut dim = None;
        for (point, weight) in atoms {
            if !weight.is_finite() || weight < T::zero() {
                return Err(Error::InvalidWeight(format!("{weight}")));
            }
            let d = point.coordinates().len();
            match dim {
                None => dim = Some(d),
                Some(e) if e != d => return Err(Error::DimensionMismatch { expected: e, got: d }),
                _ => {}
            }
            if weight > T::zero() {
                out.push(Atom { point, weight });
            }
        }
        Ok(Self { atoms: out })
    }

    pub fn dirac(point: P) -> Self {
        Self {
            atoms: vec![Atom {
                point,
                weight: T::one(),
            }],
        }
    }

    /// Uniform probability measure on `points`.
    pub fn uniform(points: Vec<P>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty("uniform measure support"));
        }
        let w = T::one() / lit(points.len() as f64);
        Self::new(points.into_iter().map(|p| (p, w)))
    }

    pub(crate) fn from_atoms_unchecked(atoms: Vec<Atom<T, P>>) -> Self {
        Self { atoms }
    }

    pub fn atoms(&self) -> &[Atom<T, P>] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> T {
        let w: Vec<T> = self.atoms.iter().map(|a| a.weight).collect();
        pairwise_sum(&w)
    }

    pub fn is_probability(&self, tol: T) -> bool {
        !self.is_empty() && (self.total_mass() - T::one()).abs() <= tol
    }

    pub fn scale(&self, c: T) -> Result<Self> {
        if !c.is_finite() || c < T::zero() {
            return Err(Error::InvalidWeight(format!("scale {c}")));
        }
        Self::new(self.atoms.iter().map(|a| (a.point.clone(), a.weight * c)))
    }

    /// `a * self + b * other` for `a, b >= 0`: the atom lists are
    /// concatenated.
    pub fn combine(&self, a: T, other: &Self, b: T) -> Result<Self> {
        if a < T::zero() || b < T::zero() {
            return Err(Error::InvalidWeight(format!("coefficients {a}, {b}")));
        }
        Self::new(
            self.atoms
                .iter()
                .map(|x| (x.point.clone(), x.weight * a))
                .chain(other.atoms.iter().map(|x| (x.point.clone(), x.weight * b))),
        )
    }

    /// `∫ f dμ`.
    pub fn integrate(&self, mut f: impl FnMut(&P) -> T) -> T {
        let terms: Vec<T> = self.atoms.iter().map(|a| a.weight * f(&a.point)).collect();
        pairwise_sum(&terms)
    }

    /// Moves every support point by `map`, keeping weights.
    pub fn try_pushforward<Q, E>(&self, mut map: impl FnMut(&P) -> std::result::Result<Q, E>) -> std::result::Result<AtomicMeasure<T, Q>, E>
    where
        Q: SupportPoint<T>,
    {
        let atoms = self
            .atoms
            .iter()
            .map(|a| {
                Ok(Atom {
                    point: map(&a.point)?,
                    weight: a.weight,
                })
            })
            .collect::<std::result::Result<Vec<_>, E>>()?;
        Ok(AtomicMeasure { atoms })
    }

    pub fn pushforward<Q: SupportPoint<T>>(&self, mut map: impl FnMut(&P) -> Q) -> AtomicMeasure<T, Q> {
        match self.try_pushforward(|p| Ok::<_, Infallible>(map(p))) {
            Ok(m) => m,
            Err(never) => match never {},
        }
    }

    /// Divides weights by the total mass.
    pub fn normalize(&self) -> Result<Self> {
        let mass = self.total_mass();
        if self.is_empty() || mass <= T::zero() {
            return Err(Error::Empty("measure has no mass"));
        }
        Ok(Self {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom {
                    point: a.point.clone(),
                    weight: a.weight / mass,
                })
                .collect(),
        })
    }

    /// Coalesces atoms within `tol` of an earlier representative (first
    /// visited wins), summing weights.
    pub fn merge_atoms(&self, tol: T) -> Self {
        let mut merged: Vec<Atom<T, P>> = Vec::new();
        for a in &self.atoms {
            match merged.iter_mut().find(|m| m.point.distance(&a.point) <= tol) {
                Some(m) => m.weight += a.weight,
                None => merged.push(a.clone()),
            }
        }
        Self { atoms: merged }
    }

    /// Atoms in lexicographic order of their coordinates.
    pub fn sorted(&self) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.sort_by(|a, b| {
            let (ca, cb) = (a.point.coordinates(), b.point.coordinates());
            lexicographic(&ca, &cb).then_with(|| a.weight.partial_cmp(&b.weight).unwrap_or(Ordering::Equal))
        });
        Self { atoms }
    }

    /// Total variation `Σ |μ(c) − κ(c)|` over clusters of support points
    /// within `tol` of each other.
    pub fn total_variation(&self, other: &Self, tol: T) -> T {
        let mut clusters: Vec<(P, T)> = Vec::new();
        let signed = self
            .atoms
            .iter()
            .map(|a| (&a.point, a.weight))
            .chain(other.atoms.iter().map(|a| (&a.point, -a.weight)));
        for (p, w) in signed {
            match clusters.iter_mut().find(|(q, _)| q.distance(p) <= tol) {
                Some((_, acc)) => *acc += w,
                None => clusters.push((p.clone(), w)),
            }
        }
        clusters.iter().map(|(_, w)| w.abs()).sum()
    }

    /// One row per atom, coordinates then weight, sorted lexicographically.
    pub fn to_csv(&self) -> String {
        let sorted = self.sorted();
        let dim = sorted.atoms.first().map_or(0, |a| a.point.coordinates().len());
        let mut out = String::new();
        let header: Vec<String> = (0..dim).map(|i| format!("x{i}")).chain(["weight".into()]).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for a in &sorted.atoms {
            let row: Vec<String> = a
                .point
                .coordinates()
                .into_iter()
                .chain([a.weight])
                .map(|v| to_f64(v).to_string())
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut atoms = Vec::new();
        for (line, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            let values = record
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .map(lit::<T>)
                        .map_err(|e| Error::Parse(format!("row {}: {e}", line + 1)))
                })
                .collect::<Result<Vec<T>>>()?;
            let (weight, coords) = values
                .split_last()
                .ok_or_else(|| Error::Parse(format!("row {} is empty", line + 1)))?;
            atoms.push((P::from_coordinates(coords)?, *weight));
        }
        Self::new(atoms)
    }
}

impl<T: Real> AtomicMeasure<T, ConePoint<T>> {
    /// `r(μ) = Σ w_i x_i`, without normalization.
    pub fn resultant(&self) -> Result<ConePoint<T>> {
        let first = self.atoms.first().ok_or(Error::Empty("measure"))?;
        let dim = first.point.dim();
        let coords = (0..dim)
            .map(|k| {
                let terms: Vec<T> = self.atoms.iter().map(|a| a.weight * a.point.coords()[k]).collect();
                pairwise_sum(&terms)
            })
            .collect();
        Ok(ConePoint::from_vec_unchecked(coords))
    }
}

/// Free-function form of [`AtomicMeasure::resultant`].
pub fn resultant<T: Real>(mu: &AtomicMeasure<T>) -> Result<ConePoint<T>> {
    mu.resultant()
}

fn lexicographic<T: Real>(a: &[T], b: &[T]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    a.len().cmp(&b.len())
}
