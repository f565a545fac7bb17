//! Expansion of the determinant formula over a polynomial ring.
//!
//! With the matrix entries (or companion coefficients) taken as indeterminates,
//! the determinant-side sum becomes an explicit polynomial. Determinants use
//! cofactor expansion up to 4×4 and fraction-free elimination with exact
//! polynomial division above that.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Rational;
use crate::sympoly::{orbit, SymmetricCoefficients};

/// Largest dimension handled by cofactor expansion.
const COFACTOR_MAX: usize = 4;

/// Multivariate polynomial over ℚ in a fixed, ordered list of named variables.
///
/// A monomial is its dense exponent vector. Terms print in graded
/// lexicographic order: higher total degree first, ties broken by comparing
/// exponents of earlier variables first.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolicPolynomial {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl SymbolicPolynomial {
    pub fn zero(vars: &[String]) -> Self {
        Self { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn variable(vars: &[String], index: usize) -> Self {
        let mut mono = vec![0; vars.len()];
        mono[index] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(mono, Rational::one());
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `(exponents, coefficient)` pairs in graded-lex descending order.
    pub fn terms(&self) -> Vec<(&[u32], &Rational)> {
        let mut t: Vec<_> = self.terms.iter().map(|(k, v)| (k.as_slice(), v)).collect();
        t.sort_by(|a, b| grlex(b.0, a.0));
        t
    }

    fn leading(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    fn add_term(&mut self, mono: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials over different variable lists");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { vars: self.vars.clone(), terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self { vars: self.vars.clone(), terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = Self::zero(&self.vars);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let mono = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                out.add_term(mono, va * vb);
            }
        }
        out
    }

    /// Quotient of a division known to be exact.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_vars(divisor);
        let Some((dmono, dcoeff)) = divisor.leading() else {
            return Err(Error::DivisionByZero("polynomial division by zero".into()));
        };
        let (dmono, dcoeff) = (dmono.clone(), dcoeff.clone());
        let mut quotient = Self::zero(&self.vars);
        let mut rem = self.clone();
        while let Some((rmono, rcoeff)) = rem.leading() {
            if rmono.iter().zip(&dmono).any(|(r, d)| r < d) {
                return Err(Error::InvalidArgument("polynomial division is not exact".into()));
            }
            let mono: Vec<u32> = rmono.iter().zip(&dmono).map(|(r, d)| r - d).collect();
            let c = rcoeff / &dcoeff;
            let mut t = Self::zero(&self.vars);
            t.add_term(mono.clone(), c.clone());
            quotient.add_term(mono, c);
            rem = rem.sub(&t.mul(divisor));
        }
        Ok(quotient)
    }

    /// Substitute values for the variables, in variable order.
    pub fn evaluate(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.vars.len() {
            return Err(Error::DimensionMismatch { expected: self.vars.len(), found: values.len() });
        }
        let mut total = Rational::zero();
        for (mono, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(mono) {
                if e > 0 {
                    t *= num_traits::pow(v.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitute a numeric matrix for entry symbols `A[r,c]` (row-major).
    pub fn evaluate_matrix(&self, a: &Matrix<Rational>) -> Result<Rational> {
        self.evaluate(a.entries())
    }
}

impl fmt::Display for SymbolicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> = mono
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| if e == 1 { self.vars[k].clone() } else { format!("{}^{e}", self.vars[k]) })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Square matrix with polynomial entries.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    n: usize,
    vars: Vec<String>,
    data: Vec<SymbolicPolynomial>,
}

impl PolyMatrix {
    pub fn from_fn(n: usize, vars: &[String], mut f: impl FnMut(usize, usize) -> SymbolicPolynomial) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        Self { n, vars: vars.to_vec(), data }
    }

    pub fn identity(n: usize, vars: &[String]) -> Self {
        Self::from_fn(n, vars, |r, c| SymbolicPolynomial::constant(vars, Rational::from_integer(i64::from(r == c).into())))
    }

    /// The generic matrix whose `(r, c)` entry is the symbol `A[r+1,c+1]`.
    pub fn generic(n: usize) -> Self {
        let vars: Vec<String> =
            (0..n).flat_map(|r| (0..n).map(move |c| format!("A[{},{}]", r + 1, c + 1))).collect();
        Self::from_fn(n, &vars, |r, c| SymbolicPolynomial::variable(&vars, r * n + c))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn get(&self, r: usize, c: usize) -> &SymbolicPolynomial {
        &self.data[r * self.n + c]
    }

    pub fn column(&self, k: usize) -> Vec<SymbolicPolynomial> {
        (0..self.n).map(|r| self.get(r, k).clone()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        Self::from_fn(n, &self.vars, |r, c| {
            (0..n).fold(SymbolicPolynomial::zero(&self.vars), |acc, k| {
                acc.add(&self.get(r, k).mul(other.get(k, c)))
            })
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.n, &self.vars), |acc, _| acc.mul(self))
    }

    pub fn det(&self) -> Result<SymbolicPolynomial> {
        let rows: Vec<Vec<SymbolicPolynomial>> =
            (0..self.n).map(|r| self.data[r * self.n..(r + 1) * self.n].to_vec()).collect();
        poly_det(&self.vars, rows)
    }
}

fn poly_det(vars: &[String], rows: Vec<Vec<SymbolicPolynomial>>) -> Result<SymbolicPolynomial> {
    if rows.len() <= COFACTOR_MAX {
        Ok(cofactor_det(vars, &rows))
    } else {
        bareiss_poly_det(vars, rows)
    }
}

fn cofactor_det(vars: &[String], rows: &[Vec<SymbolicPolynomial>]) -> SymbolicPolynomial {
    let n = rows.len();
    match n {
        0 => SymbolicPolynomial::constant(vars, Rational::one()),
        1 => rows[0][0].clone(),
        _ => {
            let mut total = SymbolicPolynomial::zero(vars);
            for c in 0..n {
                if rows[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<_>> = rows[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = rows[0][c].mul(&cofactor_det(vars, &minor));
                total = if c % 2 == 0 { total.add(&term) } else { total.sub(&term) };
            }
            total
        }
    }
}

fn bareiss_poly_det(vars: &[String], mut a: Vec<Vec<SymbolicPolynomial>>) -> Result<SymbolicPolynomial> {
    let n = a.len();
    let mut negate = false;
    let mut prev = SymbolicPolynomial::constant(vars, Rational::one());
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(SymbolicPolynomial::zero(vars));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Which indeterminates the expansion is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Naming {
    /// Entry symbols `A[r,c]` of a generic matrix.
    Entries,
    /// Coefficients `c0…c{n-1}` of a monic polynomial, via its companion matrix.
    Companion,
}

/// Expand the determinant-side sum for a single generic `n×n` matrix.
pub fn eval_symbolic(p: &SymmetricCoefficients, n: usize, naming: Naming) -> Result<SymbolicPolynomial> {
    let matrix = match naming {
        Naming::Entries => PolyMatrix::generic(n),
        Naming::Companion => super::companion_symbolic(n)?,
    };
    eval_symbolic_matrix(p, &matrix)
}

/// Expand the determinant-side sum for the powers of a given polynomial matrix.
pub fn eval_symbolic_matrix(p: &SymmetricCoefficients, a: &PolyMatrix) -> Result<SymbolicPolynomial> {
    let n = a.dim();
    if p.m() != 1 {
        return Err(Error::UnsupportedSymbolic(format!(
            "symbolic expansion covers a single generator, got {}",
            p.m()
        )));
    }
    if p.n() != n {
        return Err(Error::ArityMismatch(format!("polynomial has {} variables, matrix is {n}x{n}", p.n())));
    }
    if p.has_negative_exponents() {
        return Err(Error::UnsupportedSymbolic("negative exponents need a symbolic inverse".into()));
    }
    let vars = a.vars().to_vec();
    let mut powers: HashMap<i64, PolyMatrix> = HashMap::new();
    let mut total = SymbolicPolynomial::zero(&vars);
    for (rep, coeff) in p.terms() {
        for e in rep.iter().map(|g| g.as_slice()[0]) {
            powers.entry(e).or_insert_with(|| a.pow(e as u32));
        }
        let mut orbit_sum = SymbolicPolynomial::zero(&vars);
        for tuple in orbit(rep) {
            let rows: Vec<Vec<SymbolicPolynomial>> = (0..n)
                .map(|r| (0..n).map(|k| powers[&tuple[k].as_slice()[0]].get(r, k).clone()).collect())
                .collect();
            orbit_sum = orbit_sum.add(&poly_det(&vars, rows)?);
        }
        total = total.add(&orbit_sum.scale(coeff));
    }
    Ok(total)
}
