//! Finitely generated groups with linear actions on a cone.

use std::fmt;

use rand::Rng;

use crate::cone::ConePoint;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Real;

/// A group presented by explicit operations and a finite generating set.
pub trait Group: Send + Sync {
    type Element: Clone + fmt::Debug + Send + Sync;

    fn identity(&self) -> Self::Element;
    fn compose(&self, g: &Self::Element, h: &Self::Element) -> Self::Element;
    fn inverse(&self, g: &Self::Element) -> Self::Element;
    fn generators(&self) -> &[Self::Element];

    /// `l_1 · l_2 · … · l_k` for the word `l_1 l_2 … l_k`.
    fn evaluate(&self, word: &GroupWord) -> Result<Self::Element> {
        let gens = self.generators();
        let mut acc = self.identity();
        for letter in word.letters() {
            let g = gens.get(letter.generator).ok_or(Error::IndexOutOfBounds {
                index: letter.generator,
                len: gens.len(),
            })?;
            let g = if letter.inverse { self.inverse(g) } else { g.clone() };
            acc = self.compose(&acc, &g);
        }
        Ok(acc)
    }

    /// Generators followed by their inverses.
    fn symmetric_generators(&self) -> Vec<Self::Element> {
        let gens = self.generators();
        gens.iter()
            .cloned()
            .chain(gens.iter().map(|g| self.inverse(g)))
            .collect()
    }
}

/// A group acting on `R^dim` by maps that preserve nonnegative combinations.
pub trait GroupModel<T: Real>: Group {
    fn dim(&self) -> usize;
    fn act(&self, g: &Self::Element, x: &ConePoint<T>) -> ConePoint<T>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// A word in the generators and their inverses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// From `(generator index, exponent)` pairs with exponent `±1`.
    pub fn from_exponents(pairs: &[(usize, i8)]) -> Result<Self> {
        pairs
            .iter()
            .map(|&(generator, e)| match e {
                1 => Ok(Letter { generator, inverse: false }),
                -1 => Ok(Letter { generator, inverse: true }),
                _ => Err(Error::InvalidArgument(format!("exponent {e} not in {{+1, -1}}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Uniform length in `1..=max_len`, uniform letters.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, generators: usize, max_len: usize) -> Self {
        assert!(generators > 0 && max_len > 0);
        let len = rng.gen_range(1..=max_len);
        let letters = (0..len)
            .map(|_| Letter {
                generator: rng.gen_range(0..generators),
                inverse: rng.gen_bool(0.5),
            })
            .collect();
        Self { letters }
    }

    pub fn random_pairs<R: Rng + ?Sized>(rng: &mut R, generators: usize, max_len: usize, count: usize) -> Vec<(Self, Self)> {
        (0..count)
            .map(|_| (Self::random(rng, generators, max_len), Self::random(rng, generators, max_len)))
            .collect()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "g{}", l.generator)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// A group of invertible matrices acting on `R^d` by multiplication.
#[derive(Debug, Clone)]
pub struct MatrixGroup<T: Real> {
    dim: usize,
    generators: Vec<Matrix<T>>,
}

impl<T: Real> MatrixGroup<T> {
    pub fn new(generators: Vec<Matrix<T>>) -> Result<Self> {
        let dim = generators.first().ok_or(Error::Empty("group generators"))?.dim();
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: g.dim() });
            }
            g.inverse()?;
        }
        Ok(Self { dim, generators })
    }
}

impl<T: Real> Group for MatrixGroup<T> {
    type Element = Matrix<T>;

    fn identity(&self) -> Matrix<T> {
        Matrix::identity(self.dim)
    }

    fn compose(&self, g: &Matrix<T>, h: &Matrix<T>) -> Matrix<T> {
        g.mul(h)
    }

    fn inverse(&self, g: &Matrix<T>) -> Matrix<T> {
        g.inverse().expect("products of invertible generators are invertible")
    }

    fn generators(&self) -> &[Matrix<T>] {
        &self.generators
    }
}

impl<T: Real> GroupModel<T> for MatrixGroup<T> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn act(&self, g: &Matrix<T>, x: &ConePoint<T>) -> ConePoint<T> {
        ConePoint::from_vec_unchecked(g.apply(x.coords()))
    }
}
