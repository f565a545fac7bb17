//! Evaluating a symmetric coefficient family on a matrix family.
//!
//! For symmetric coefficients `p_i` and a family `A^(g)`, the scalar
//!
//! ```text
//! [p(A)] = Σ_i p_i · det(A^(i₁)_1, …, A^(iₙ)_n)
//! ```
//!
//! (the k-th column of the k-th member, assembled into one matrix) is
//! independent of the basis the members are written in. When the generators
//! commute it also equals the eigenvalue sum `Σ_i p_i · a₁^(i₁)⋯aₙ^(iₙ)`.
//! [`eval_det`] computes the first form, [`eval_eigen`] the second.
//!
//! Cost of [`eval_det`]: one `n×n` determinant per element of the full support,
//! i.e. `Σ_r |orbit(r)|` determinants, plus one member matrix per distinct
//! exponent vector in the support.

mod companion;
mod symbolic;

pub use companion::{companion, companion_symbolic, eval_on_roots, MonicPolynomial};
pub use symbolic::{eval_symbolic, eval_symbolic_matrix, Naming, PolyMatrix, SymbolicPolynomial};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::family::{MatrixFamily, MemberSource, Transformed};
use crate::linalg::{det_columns, Matrix};
use crate::scalar::Scalar;
use crate::sympoly::{orbit, ExponentVector, SymmetricCoefficients};

/// Work counters for one [`eval_det_with_stats`] call.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalStats {
    pub determinants: u64,
    pub column_hits: u64,
    pub column_misses: u64,
}

/// Eigenvalues `a_k^(j)` of `m` simultaneously triangularized generators.
///
/// Row `k` lists the k-th eigenvalue of every generator; the same ordering of
/// `k` must be used for all generators.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueTable<T> {
    n: usize,
    m: usize,
    values: Vec<T>,
}

impl<T: Scalar> EigenvalueTable<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map(Vec::len).unwrap_or(0);
        if n == 0 || m == 0 {
            return Err(Error::InvalidArgument("eigenvalue table must be non-empty".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch { expected: m, found: r.len() });
        }
        Ok(Self { n, m, values: rows.into_iter().flatten().collect() })
    }

    /// Table for a single generator.
    pub fn univariate(values: Vec<T>) -> Result<Self> {
        Self::new(values.into_iter().map(|v| vec![v]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `a_k^(j)`, 0-based.
    pub fn get(&self, k: usize, j: usize) -> &T {
        &self.values[k * self.m + j]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.values.chunks(self.m).map(<[T]>::to_vec).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> EigenvalueTable<U> {
        EigenvalueTable { n: self.n, m: self.m, values: self.values.iter().map(f).collect() }
    }
}

fn check_shape(p: &SymmetricCoefficients, n: usize, m: usize) -> Result<()> {
    if p.n() != n {
        return Err(Error::ArityMismatch(format!("polynomial has {} variables, matrices are {n}x{n}", p.n())));
    }
    if p.m() != m {
        return Err(Error::ArityMismatch(format!(
            "polynomial indexes {} generators, family has {m}",
            p.m()
        )));
    }
    Ok(())
}

/// The determinant-side value `Σ_i p_i · det(A^(i₁)_1, …, A^(iₙ)_n)`.
///
/// Works for any family, commuting or not.
pub fn eval_det<T: Scalar, S: MemberSource<T>>(p: &SymmetricCoefficients, fam: &S) -> Result<T> {
    eval_det_with_stats(p, fam).map(|(v, _)| v)
}

/// [`eval_det`] plus work counters.
///
/// Representatives are visited in key order and orbit tuples in lexicographic
/// order, so float results are reproducible bit for bit.
pub fn eval_det_with_stats<T: Scalar, S: MemberSource<T>>(
    p: &SymmetricCoefficients,
    fam: &S,
) -> Result<(T, EvalStats)> {
    let n = fam.dim();
    check_shape(p, n, fam.generator_count())?;
    let mut stats = EvalStats::default();
    let mut columns: HashMap<(ExponentVector, usize), Vec<T>> = HashMap::new();
    let mut total = T::zero();
    for (rep, coeff) in p.terms() {
        let mut orbit_sum = T::zero();
        for tuple in orbit(rep) {
            let mut cols = Vec::with_capacity(n);
            for (k, g) in tuple.into_iter().enumerate() {
                let key = (g, k);
                if let Some(c) = columns.get(&key) {
                    stats.column_hits += 1;
                    cols.push(c.clone());
                } else {
                    stats.column_misses += 1;
                    let c = fam.member(&key.0)?.column(k);
                    cols.push(c.clone());
                    columns.insert(key, c);
                }
            }
            orbit_sum = orbit_sum + det_columns(&cols)?;
            stats.determinants += 1;
        }
        total = total + T::from_rational(coeff) * orbit_sum;
    }
    Ok((total, stats))
}

/// The eigenvalue-side value `Σ_i p_i · Π_k Π_j (a_k^(j))^{(i_k)_j}`.
pub fn eval_eigen<T: Scalar>(p: &SymmetricCoefficients, table: &EigenvalueTable<T>) -> Result<T> {
    check_shape(p, table.n(), table.m())?;
    let mut total = T::zero();
    for (rep, coeff) in p.terms() {
        let mut orbit_sum = T::zero();
        for tuple in orbit(rep) {
            let mut prod = T::one();
            for (k, g) in tuple.iter().enumerate() {
                for (j, &e) in g.as_slice().iter().enumerate() {
                    if e != 0 {
                        prod = prod * table.get(k, j).powi(e)?;
                    }
                }
            }
            orbit_sum = orbit_sum + prod;
        }
        total = total + T::from_rational(coeff) * orbit_sum;
    }
    Ok(total)
}

/// [`eval_eigen`] for eigenvalues claimed to belong to `fam`; refuses
/// non-commuting families, where the eigenvalue sum has no meaning.
pub fn eval_eigen_for<T: Scalar>(
    p: &SymmetricCoefficients,
    fam: &MatrixFamily<T>,
    table: &EigenvalueTable<T>,
) -> Result<T> {
    fam.require_commuting()?;
    if table.n() != fam.n() || table.m() != fam.m() {
        return Err(Error::ArityMismatch(format!(
            "eigenvalue table is {}x{}, family has n = {}, m = {}",
            table.n(),
            table.m(),
            fam.n(),
            fam.m()
        )));
    }
    eval_eigen(p, table)
}

/// Values before and after replacing every member `M` by `X·M·Y`.
///
/// The second value should equal `det(X)·det(Y)` times the first.
pub fn scaling_check<T: Scalar, S: MemberSource<T>>(
    p: &SymmetricCoefficients,
    fam: &S,
    x: &Matrix<T>,
    y: &Matrix<T>,
) -> Result<(T, T)> {
    let before = eval_det(p, fam)?;
    let transformed = Transformed::new(fam, x.clone(), y.clone())?;
    let after = eval_det(p, &transformed)?;
    Ok((before, after))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::leibniz_det;
    use crate::scalar::{parse_rational, Rational};

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
            .unwrap()
    }

    fn fam(gens: Vec<Matrix<Rational>>) -> MatrixFamily<Rational> {
        MatrixFamily::new(gens).unwrap()
    }

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn e1_is_trace_and_en_is_det() {
        let a = m(&[&[2, 7, 1], &[4, 5, 6], &[8, 9, 3]]);
        let f = fam(vec![a.clone()]);
        let e1 = SymmetricCoefficients::elementary(1, 3).unwrap();
        assert_eq!(eval_det(&e1, &f).unwrap(), q("10"));
        let e3 = SymmetricCoefficients::elementary(3, 3).unwrap();
        assert_eq!(eval_det(&e3, &f).unwrap(), leibniz_det(&a).unwrap());
    }

    #[test]
    fn m21_on_triangular() {
        // det([[2,5],[0,9]]) + det([[4,1],[0,3]]) = 18 + 12
        let f = fam(vec![m(&[&[2, 1], &[0, 3]])]);
        let p = SymmetricCoefficients::monomial_univariate(&[2, 1]).unwrap();
        let (v, stats) = eval_det_with_stats(&p, &f).unwrap();
        assert_eq!(v, q("30"));
        assert_eq!(stats.determinants, 2);
        let table = EigenvalueTable::univariate(vec![q("2"), q("3")]).unwrap();
        assert_eq!(eval_eigen(&p, &table).unwrap(), q("30"));
    }

    #[test]
    fn negative_power_monomial() {
        let f = fam(vec![m(&[&[2, 0], &[0, 3]])]);
        let p = SymmetricCoefficients::monomial_univariate(&[1, -1]).unwrap();
        assert_eq!(eval_det(&p, &f).unwrap(), q("13/6"));
        let table = EigenvalueTable::univariate(vec![q("2"), q("3")]).unwrap();
        assert_eq!(eval_eigen(&p, &table).unwrap(), q("13/6"));
    }

    #[test]
    fn multivariate_monomial_matches_column_formula() {
        // A = [[1,1],[0,2]], B = A² - A commute.
        let a = m(&[&[1, 1], &[0, 2]]);
        let b = a.pow(2).unwrap().sub(&a).unwrap();
        let f = fam(vec![a.clone(), b.clone()]);
        assert!(f.is_commuting());
        let p = SymmetricCoefficients::monomial(vec![ev(&[1, 1]), ev(&[2, 0])]).unwrap();
        let ab = a.mul(&b).unwrap();
        let a2 = a.pow(2).unwrap();
        let expected = det_columns(&[ab.column(0), a2.column(1)]).unwrap()
            + det_columns(&[a2.column(0), ab.column(1)]).unwrap();
        assert_eq!(eval_det(&p, &f).unwrap(), expected);
        // eigenvalues: a = (1, 2), b = (0, 2)  →  a1 b1 a2² + a1² a2 b2 = 0 + 4
        let table = EigenvalueTable::new(vec![vec![q("1"), q("0")], vec![q("2"), q("2")]]).unwrap();
        assert_eq!(eval_eigen(&p, &table).unwrap(), q("4"));
        assert_eq!(expected, q("4"));
    }

    #[test]
    fn eigen_identity_table_gives_binomials() {
        let ones = EigenvalueTable::univariate(vec![q("1"); 5]).unwrap();
        let binom = [1, 5, 10, 10, 5, 1];
        for (k, b) in binom.iter().enumerate() {
            let p = SymmetricCoefficients::elementary(k, 5).unwrap();
            assert_eq!(eval_eigen(&p, &ones).unwrap(), Rational::from_integer((*b).into()));
        }
    }

    #[test]
    fn eigen_errors() {
        let p = SymmetricCoefficients::power_sum(-1, 2).unwrap();
        let t = EigenvalueTable::univariate(vec![q("0"), q("3")]).unwrap();
        assert!(matches!(eval_eigen(&p, &t), Err(Error::DivisionByZero(_))));
        let t3 = EigenvalueTable::univariate(vec![q("1"); 3]).unwrap();
        assert!(matches!(eval_eigen(&p, &t3), Err(Error::ArityMismatch(_))));

        let nc = fam(vec![m(&[&[0, 1], &[0, 0]]), m(&[&[0, 0], &[1, 0]])]);
        let p2 = SymmetricCoefficients::monomial(vec![ev(&[1, 0]), ev(&[0, 1])]).unwrap();
        let t2 = EigenvalueTable::new(vec![vec![q("0"), q("0")], vec![q("0"), q("0")]]).unwrap();
        assert_eq!(eval_eigen_for(&p2, &nc, &t2), Err(Error::CommutationRequired));
        // determinant side still works: det(e-cols of X,Y mixed)
        assert!(eval_det(&p2, &nc).is_ok());
    }

    #[test]
    fn det_errors() {
        let f = fam(vec![m(&[&[0, 1], &[0, 0]])]);
        let p = SymmetricCoefficients::power_sum(-1, 2).unwrap();
        assert!(matches!(eval_det(&p, &f), Err(Error::SingularMatrix { .. })));
        let p3 = SymmetricCoefficients::elementary(1, 3).unwrap();
        assert!(matches!(eval_det(&p3, &f), Err(Error::ArityMismatch(_))));
        assert_eq!(eval_det(&SymmetricCoefficients::zero(2, 1), &f).unwrap(), q("0"));
    }

    #[test]
    fn scaling_examples() {
        let f = fam(vec![m(&[&[2, 1], &[0, 3]])]);
        let p = SymmetricCoefficients::monomial_univariate(&[2, 1]).unwrap();
        let id = Matrix::identity(2);
        let (a, b) = scaling_check(&p, &f, &id, &id).unwrap();
        assert_eq!(a, b);
        let two = id.scale(&q("2"));
        let (a, b) = scaling_check(&p, &f, &two, &id).unwrap();
        assert_eq!(b, a * q("4"));
    }

    #[test]
    fn float_mode_same_traversal() {
        let a = m(&[&[2, 1], &[0, 3]]);
        let f = MatrixFamily::new(vec![a.map(|x| x.to_f64())]).unwrap();
        let p = SymmetricCoefficients::monomial_univariate(&[2, 1]).unwrap();
        let v: f64 = eval_det(&p, &f).unwrap();
        assert!((v - 30.0).abs() < 1e-12);
    }
}
