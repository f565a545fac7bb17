//! Companion matrices: symmetric functions of polynomial roots from coefficients.
//!
//! The companion matrix of `q(x) = xⁿ + c_{n-1}x^{n-1} + … + c_0` has ones on
//! the subdiagonal and `(-c_0, …, -c_{n-1})ᵀ` as its last column. Its
//! eigenvalues are the roots of `q`, so evaluating the determinant-side sum on
//! it writes any symmetric function of the roots in terms of the `c_k`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::family::MatrixFamily;
use crate::linalg::Matrix;
use crate::scalar::{Rational, Scalar};
use crate::sympoly::SymmetricCoefficients;

use super::symbolic::{PolyMatrix, SymbolicPolynomial};

/// Monic polynomial `xⁿ + c_{n-1}x^{n-1} + … + c_0`, stored as `c_0…c_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonicPolynomial {
    coeffs: Vec<Rational>,
}

impl MonicPolynomial {
    /// From the non-leading coefficients `c_0…c_{n-1}`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("companion matrix needs degree >= 1".into()));
        }
        Ok(Self { coeffs })
    }

    /// From all coefficients `a_0…a_n` of `Σ a_k x^k`, normalized by `a_n`.
    pub fn from_coefficients(all: &[Rational]) -> Result<Self> {
        let Some((lead, rest)) = all.split_last() else {
            return Err(Error::InvalidArgument("empty coefficient list".into()));
        };
        if lead.is_zero() {
            return Err(Error::InvalidArgument("leading coefficient must be nonzero".into()));
        }
        Self::new(rest.iter().map(|a| a / lead).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `q(x)` evaluated exactly.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::one(), |acc, c| acc * x + c)
    }
}

pub fn companion<T: Scalar>(q: &MonicPolynomial) -> Matrix<T> {
    let n = q.degree();
    Matrix::from_fn(n, |r, c| {
        if c == n - 1 {
            -T::from_rational(&q.coeffs[r])
        } else if r == c + 1 {
            T::one()
        } else {
            T::zero()
        }
    })
}

/// The companion matrix of a generic monic polynomial of degree `n`, in the
/// symbols `c0…c{n-1}`.
pub fn companion_symbolic(n: usize) -> Result<PolyMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("companion matrix needs degree >= 1".into()));
    }
    let vars: Vec<String> = (0..n).map(|k| format!("c{k}")).collect();
    Ok(PolyMatrix::from_fn(n, &vars, |r, c| {
        if c == n - 1 {
            SymbolicPolynomial::variable(&vars, r).neg()
        } else if r == c + 1 {
            SymbolicPolynomial::constant(&vars, Rational::one())
        } else {
            SymbolicPolynomial::zero(&vars)
        }
    }))
}

/// Value of a symmetric function on the roots of `q`, from its coefficients alone.
pub fn eval_on_roots(p: &SymmetricCoefficients, q: &MonicPolynomial) -> Result<Rational> {
    if p.m() != 1 {
        return Err(Error::ArityMismatch("root evaluation takes a univariate family".into()));
    }
    let fam = MatrixFamily::new(vec![companion::<Rational>(q)])?;
    super::eval_det(p, &fam)
}
