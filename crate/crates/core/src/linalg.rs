//! Dense square matrices over a [`Scalar`] field.
//!
//! Exact determinants go through fraction-free (Bareiss) elimination on an
//! integer matrix obtained by clearing each row's denominators; the row scale
//! factors are divided back out at the end. Float determinants use partial
//! pivoting.
//!
//! Indices are 0-based in this API. Documentation that writes `A_k` for the
//! k-th column means `column(k - 1)`.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Default dimension cap for [`leibniz_det`].
pub const LEIBNIZ_CAP: usize = 6;

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        Self { n, data }
    }

    pub fn diagonal(diag: &[T]) -> Self {
        Self::from_fn(diag.len(), |r, c| if r == c { diag[r].clone() } else { T::zero() })
    }

    /// Build from row vectors; every row must have as many entries as there are rows.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidArgument("matrix must have at least one row".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { n, data })
    }

    /// Assemble the matrix whose k-th column is `cols[k]`.
    pub fn from_columns(cols: &[Vec<T>]) -> Result<Self> {
        let n = cols.len();
        if n == 0 {
            return Err(Error::InvalidArgument("need at least one column".into()));
        }
        if let Some(bad) = cols.iter().find(|c| c.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        Ok(Self::from_fn(n, |r, c| cols[c][r].clone()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.n).map(|r| self.row(r).to_vec()).collect()
    }

    /// The `k`-th column (0-based).
    pub fn column(&self, k: usize) -> Vec<T> {
        (0..self.n).map(|r| self[(r, k)].clone()).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |r, c| self[(c, r)].clone())
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, k| acc + self[(k, k)].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Matrix { n: self.n, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(Matrix { n: self.n, data })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = T::zero();
                for k in 0..n {
                    let a = &self.data[r * n + k];
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc + a.clone() * other.data[k * n + c].clone();
                }
                data.push(acc);
            }
        }
        Ok(Matrix { n, data })
    }

    /// Exact-field commutation test; floats use the scale-aware tolerance.
    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        Ok(T::entries_agree(&ab.data, &ba.data))
    }

    pub fn det(&self) -> T {
        T::determinant(self.n, &self.data)
    }

    /// Gauss–Jordan inverse. Exact fields pivot on the first nonzero entry,
    /// floats on the largest magnitude.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for col in 0..n {
            let mut pivot = col;
            for r in col + 1..n {
                if T::better_pivot(&a[r * n + col], &a[pivot * n + col]) {
                    pivot = r;
                }
            }
            if a[pivot * n + col].is_zero() {
                return Err(self.singular());
            }
            if pivot != col {
                for c in 0..n {
                    a.swap(pivot * n + c, col * n + c);
                    inv.swap(pivot * n + c, col * n + c);
                }
            }
            let p = a[col * n + col].clone();
            for c in 0..n {
                a[col * n + c] = a[col * n + c].clone() / p.clone();
                inv[col * n + c] = inv[col * n + c].clone() / p.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col].clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    a[r * n + c] = a[r * n + c].clone() - f.clone() * a[col * n + c].clone();
                    inv[r * n + c] = inv[r * n + c].clone() - f.clone() * inv[col * n + c].clone();
                }
            }
        }
        Ok(Matrix { n, data: inv })
    }

    /// Signed power. `a^0 = I` for every `a`, singular or not.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        Ok(base.pow_unsigned(e.unsigned_abs()))
    }

    fn pow_unsigned(&self, mut k: u64) -> Self {
        let mut acc = Self::identity(self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same dimension");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same dimension");
            }
        }
        acc
    }

    fn singular(&self) -> Error {
        let det = if T::EXACT { self.det().to_rational().map(|d| d.to_string()) } else { None };
        Error::SingularMatrix { n: self.n, det }
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.n, found: other.n })
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.n + c]
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.n {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Determinant of the matrix whose columns are `cols`, in order.
pub fn det_columns<T: Scalar>(cols: &[Vec<T>]) -> Result<T> {
    Ok(Matrix::from_columns(cols)?.det())
}

/// Permutation-sum determinant. O(n!·n); only meant as an independent check.
pub fn leibniz_det<T: Scalar>(a: &Matrix<T>) -> Result<T> {
    leibniz_det_capped(a, LEIBNIZ_CAP)
}

pub fn leibniz_det_capped<T: Scalar>(a: &Matrix<T>, cap: usize) -> Result<T> {
    let n = a.dim();
    if n > cap {
        return Err(Error::LeibnizCap { n, cap });
    }
    let mut total = T::zero();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    leibniz_rec(a, &mut perm, &mut used, &mut total);
    Ok(total)
}

fn leibniz_rec<T: Scalar>(a: &Matrix<T>, perm: &mut Vec<usize>, used: &mut [bool], total: &mut T) {
    let n = a.dim();
    if perm.len() == n {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let term = perm.iter().enumerate().fold(T::one(), |acc, (r, &c)| acc * a[(r, c)].clone());
        *total = if inversions % 2 == 0 { total.clone() + term } else { total.clone() - term };
        return;
    }
    for c in 0..n {
        if !used[c] {
            used[c] = true;
            perm.push(c);
            leibniz_rec(a, perm, used, total);
            perm.pop();
            used[c] = false;
        }
    }
}

/// Pivot selection rule for fraction-free elimination. The determinant does not
/// depend on it; exposing it lets tests confirm that.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotOrder {
    FirstNonzero,
    LastNonzero,
}

/// Exact determinant of a row-major rational matrix.
pub fn bareiss_rational(n: usize, rows: &[Rational], order: PivotOrder) -> Rational {
    let mut ints = Vec::with_capacity(n * n);
    let mut scale = BigInt::one();
    for r in 0..n {
        let row = &rows[r * n..(r + 1) * n];
        let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        ints.extend(row.iter().map(|q| q.numer() * (&lcm / q.denom())));
        scale *= lcm;
    }
    Rational::new(bareiss_integer(n, ints, order), scale)
}

/// Fraction-free elimination over the integers.
pub fn bareiss_integer(n: usize, mut a: Vec<BigInt>, order: PivotOrder) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let mut candidates = (k..n).filter(|&r| !a[r * n + k].is_zero());
        let pivot = match order {
            PivotOrder::FirstNonzero => candidates.next(),
            PivotOrder::LastNonzero => candidates.next_back(),
        };
        let Some(p) = pivot else {
            return BigInt::zero();
        };
        if p != k {
            for c in 0..n {
                a.swap(p * n + c, k * n + c);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    let d = a[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Partially pivoted Gaussian elimination.
pub fn gauss_det_f64(n: usize, rows: &[f64]) -> f64 {
    let mut a = rows.to_vec();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| a[x * n + k].abs().total_cmp(&a[y * n + k].abs()))
            .expect("nonempty range");
        if a[p * n + k] == 0.0 {
            return 0.0;
        }
        if p != k {
            for c in 0..n {
                a.swap(p * n + c, k * n + c);
            }
            det = -det;
        }
        let piv = a[k * n + k];
        det *= piv;
        for i in k + 1..n {
            let f = a[i * n + k] / piv;
            if f == 0.0 {
                continue;
            }
            for j in k + 1..n {
                a[i * n + j] -= f * a[k * n + j];
            }
        }
    }
    det
}
