//! Small dense linear algebra: square matrices for cone actions, Householder
//! least squares and Lawson–Hanson nonnegative least squares.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Square matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Real> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.dim).collect();
        write!(f, "Matrix{rows:?}")
    }
}

impl<T: Real> Matrix<T> {
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidMatrix("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::InvalidMatrix(format!(
                    "row of length {} in {dim}x{dim} matrix",
                    row.len()
                )));
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidMatrix("non-finite entry".into()));
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    /// Builds a `dim x dim` matrix from a row-major slice.
    pub fn from_row_major(dim: usize, data: &[T]) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::InvalidMatrix(format!(
                "{} entries for a {dim}x{dim} matrix",
                data.len()
            )));
        }
        let rows: Vec<Vec<T>> = data.chunks(dim).map(|c| c.to_vec()).collect();
        Self::from_rows(&rows)
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![T::zero(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = T::one();
        }
        Self { dim, data }
    }

    pub fn diagonal(diag: &[T]) -> Self {
        let dim = diag.len();
        let mut m = Self {
            dim,
            data: vec![T::zero(); dim * dim],
        };
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * dim + i] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.dim + j]
    }

    pub fn row_major(&self) -> &[T] {
        &self.data
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim;
        assert_eq!(n, other.dim, "matrix dimension mismatch");
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == T::zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Self { dim: n, data }
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        assert_eq!(self.dim, x.len(), "matrix/vector dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    pub fn scale(&self, c: T) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * c).collect(),
        }
    }

    /// Determinant by partial-pivot elimination.
    pub fn det(&self) -> T {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&r, &s| a[r * n + col].abs().partial_cmp(&a[s * n + col].abs()).unwrap())
                .unwrap();
            if a[pivot * n + col] == T::zero() {
                return T::zero();
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in col + 1..n {
                let f = a[r * n + col] / p;
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= f * v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        let scale = self.data.iter().fold(T::zero(), |m, x| m.max(x.abs()));
        let singular = T::epsilon() * scale * lit(n as f64);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&r, &s| a[r * n + col].abs().partial_cmp(&a[s * n + col].abs()).unwrap())
                .unwrap();
            if a[pivot * n + col].abs() <= singular {
                return Err(Error::InvalidMatrix("singular matrix".into()));
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[col * n + col];
            for j in 0..n {
                a[col * n + j] /= p;
                inv[col * n + j] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f == T::zero() {
                    continue;
                }
                for j in 0..n {
                    let av = a[col * n + j];
                    let iv = inv[col * n + j];
                    a[r * n + j] -= f * av;
                    inv[r * n + j] -= f * iv;
                }
            }
        }
        Ok(Self { dim: n, data: inv })
    }
}

pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub(crate) fn norm<T: Real>(a: &[T]) -> T {
    // scaled to avoid overflow on large generator products
    let m = a.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    if m == T::zero() || !m.is_finite() {
        return m;
    }
    let s: T = a.iter().map(|&x| (x / m) * (x / m)).sum();
    m * s.sqrt()
}

/// Least squares `min ‖A c − b‖` for the given columns of `A`, via
/// Householder QR. Columns whose pivot collapses below working precision
/// get coefficient zero.
pub fn least_squares<T: Real>(columns: &[&[T]], b: &[T]) -> Vec<T> {
    let m = b.len();
    let k = columns.len();
    if k == 0 {
        return Vec::new();
    }
    // column-major working copy
    let mut a: Vec<Vec<T>> = columns.iter().map(|c| c.to_vec()).collect();
    let mut rhs = b.to_vec();
    let scale = a
        .iter()
        .flat_map(|c| c.iter())
        .fold(T::zero(), |s, x| s.max(x.abs()));
    let tiny = T::epsilon() * lit(16.0) * scale.max(T::one()) * lit(m.max(k) as f64);
    let steps = k.min(m);
    let mut rank_ok = vec![false; k];
    for j in 0..steps {
        let alpha = norm(&a[j][j..]);
        if alpha <= tiny {
            continue;
        }
        rank_ok[j] = true;
        let sign = if a[j][j] >= T::zero() { T::one() } else { -T::one() };
        let mut v: Vec<T> = a[j][j..].to_vec();
        v[0] += sign * alpha;
        let vnorm2 = dot(&v, &v);
        if vnorm2 == T::zero() {
            continue;
        }
        let two = lit::<T>(2.0);
        for col in a.iter_mut().skip(j) {
            let proj = two * dot(&v, &col[j..]) / vnorm2;
            for (ci, &vi) in col[j..].iter_mut().zip(&v) {
                *ci -= proj * vi;
            }
        }
        let proj = two * dot(&v, &rhs[j..]) / vnorm2;
        for (ri, &vi) in rhs[j..].iter_mut().zip(&v) {
            *ri -= proj * vi;
        }
    }
    // back substitution on the upper triangle
    let mut c = vec![T::zero(); k];
    for j in (0..steps).rev() {
        if !rank_ok[j] {
            continue;
        }
        let mut s = rhs[j];
        for l in j + 1..steps {
            s -= a[l][j] * c[l];
        }
        c[j] = s / a[j][j];
    }
    c
}

/// Result of a nonnegative least squares solve.
#[derive(Debug, Clone)]
pub struct NnlsSolution<T> {
    pub coefficients: Vec<T>,
    pub residual: T,
}

/// Lawson–Hanson active-set NNLS: `min ‖Σ c_i g_i − b‖` over `c ≥ 0`.
pub fn nnls<T: Real>(columns: &[&[T]], b: &[T]) -> NnlsSolution<T> {
    let n = columns.len();
    let m = b.len();
    let residual_of = |c: &[T]| -> (Vec<T>, T) {
        let mut r = b.to_vec();
        for (col, &ci) in columns.iter().zip(c) {
            if ci != T::zero() {
                for (ri, &gi) in r.iter_mut().zip(col.iter()) {
                    *ri -= ci * gi;
                }
            }
        }
        let nr = norm(&r);
        (r, nr)
    };
    let mut x = vec![T::zero(); n];
    if n == 0 {
        return NnlsSolution {
            coefficients: x,
            residual: norm(b),
        };
    }
    let col_scale = columns.iter().map(|c| norm(c)).fold(T::zero(), T::max);
    let w_tol = T::epsilon() * lit(1e3) * col_scale.max(T::one()) * norm(b).max(T::one()) * lit(m.max(n) as f64);
    let mut passive = vec![false; n];
    let max_outer = 3 * n + 10;
    for _ in 0..max_outer {
        let (r, _) = residual_of(&x);
        let w: Vec<T> = columns.iter().map(|c| dot(c, &r)).collect();
        let candidate = (0..n)
            .filter(|&j| !passive[j] && w[j] > w_tol)
            .max_by(|&a, &b| w[a].partial_cmp(&w[b]).unwrap());
        let Some(j) = candidate else { break };
        passive[j] = true;
        let mut inner = 0;
        loop {
            inner += 1;
            let idx: Vec<usize> = (0..n).filter(|&i| passive[i]).collect();
            let cols: Vec<&[T]> = idx.iter().map(|&i| columns[i]).collect();
            let sol = least_squares(&cols, b);
            let mut s = vec![T::zero(); n];
            for (&i, &v) in idx.iter().zip(&sol) {
                s[i] = v;
            }
            if idx.iter().all(|&i| s[i] > T::zero()) || inner > 3 * n + 10 {
                x = s;
                for i in 0..n {
                    if x[i] < T::zero() {
                        x[i] = T::zero();
                        passive[i] = false;
                    }
                }
                break;
            }
            let mut alpha = T::one();
            for &i in &idx {
                if s[i] <= T::zero() {
                    let denom = x[i] - s[i];
                    if denom > T::zero() {
                        alpha = alpha.min(x[i] / denom);
                    } else {
                        alpha = T::zero();
                    }
                }
            }
            for i in 0..n {
                x[i] = x[i] + alpha * (s[i] - x[i]);
            }
            let drop_tol = T::epsilon() * lit(8.0);
            for &i in &idx {
                if x[i] <= drop_tol {
                    x[i] = T::zero();
                    passive[i] = false;
                }
            }
        }
    }
    let (_, residual) = residual_of(&x);
    NnlsSolution {
        coefficients: x,
        residual,
    }
}
