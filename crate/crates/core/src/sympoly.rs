//! Finitely supported symmetric coefficient families.
//!
//! A family `p_i` is indexed by `n`-tuples `i = (g_1, …, g_n)` of exponent
//! vectors and is constant on permutation orbits of those tuples. Only one
//! representative per orbit is stored: the tuple sorted in descending order,
//! so `e_k` is keyed by `(1,…,1,0,…,0)` and `p_k` by `(k,0,…,0)`.
//!
//! With `m` generators an exponent vector `g` stands for the family member
//! `B₁^{g₁}⋯B_m^{g_m}`; the univariate case is `m = 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Signed exponents of the `m` generators, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(exps: Vec<i64>) -> Self {
        Self(exps)
    }

    pub fn zero(m: usize) -> Self {
        Self(vec![0; m])
    }

    pub fn unit(m: usize, k: usize) -> Self {
        let mut v = vec![0; m];
        v[k] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&e| e < 0)
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|e| -e).collect())
    }

    /// Total degree `Σ |g_k|`.
    pub fn abs_degree(&self) -> u64 {
        self.0.iter().map(|e| e.unsigned_abs()).sum()
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Sort a tuple into its orbit representative (descending order).
pub fn canonicalize(mut tuple: Vec<ExponentVector>) -> Vec<ExponentVector> {
    tuple.sort_unstable_by(|a, b| b.cmp(a));
    tuple
}

/// `n! / Π (multiplicity!)`: the number of distinct rearrangements of `tuple`.
pub fn orbit_size(tuple: &[ExponentVector]) -> u128 {
    let mut sorted = tuple.to_vec();
    sorted.sort_unstable();
    let mut size: u128 = 1;
    let mut placed: u128 = 0;
    let mut run: u128 = 0;
    for (k, g) in sorted.iter().enumerate() {
        run = if k > 0 && sorted[k - 1] == *g { run + 1 } else { 1 };
        placed += 1;
        // prefix multinomial: M_k = M_{k-1} * k / (count of g so far)
        size = size * placed / run;
    }
    size
}

/// Lazily enumerates every distinct permutation of a multiset tuple exactly
/// once, in ascending lexicographic order.
#[derive(Clone, Debug)]
pub struct Orbit {
    next: Option<Vec<ExponentVector>>,
}

impl Orbit {
    pub fn new(tuple: &[ExponentVector]) -> Self {
        let mut start = tuple.to_vec();
        start.sort_unstable();
        Self { next: Some(start) }
    }
}

impl Iterator for Orbit {
    type Item = Vec<ExponentVector>;

    fn next(&mut self) -> Option<Self::Item> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// Orbit of a representative: all distinct permutations, lexicographic.
pub fn orbit(rep: &[ExponentVector]) -> Orbit {
    Orbit::new(rep)
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A symmetric coefficient family over `n` variables and `m` generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricCoefficients {
    n: usize,
    m: usize,
    terms: BTreeMap<Vec<ExponentVector>, Rational>,
}

impl SymmetricCoefficients {
    pub fn zero(n: usize, m: usize) -> Self {
        Self { n, m, terms: BTreeMap::new() }
    }

    /// Canonicalize each tuple, sum colliding coefficients and drop zeros.
    pub fn from_terms<I>(n: usize, m: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<ExponentVector>, Rational)>,
    {
        let mut out = Self::zero(n, m);
        for (tuple, coeff) in terms {
            out.check_tuple(&tuple)?;
            out.accumulate(canonicalize(tuple), coeff);
        }
        Ok(out)
    }

    /// `e_k` in `n` variables.
    pub fn elementary(k: usize, n: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidArgument(format!("elementary e_{k} needs k <= n = {n}")));
        }
        let rep = (0..n).map(|i| ExponentVector::new(vec![i64::from(i < k)])).collect();
        Ok(Self::single(n, 1, rep))
    }

    /// `p_k = x₁ᵏ + … + xₙᵏ`; `k` may be negative.
    pub fn power_sum(k: i64, n: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("power sum p_0 is the constant n; use a constant".into()));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("arity must be positive".into()));
        }
        let rep = (0..n).map(|i| ExponentVector::new(vec![if i == 0 { k } else { 0 }])).collect();
        Self::from_terms(n, 1, [(rep, Rational::one())])
    }

    /// Monomial symmetric `m_λ`: coefficient 1 on the orbit of `lambda`.
    pub fn monomial(lambda: Vec<ExponentVector>) -> Result<Self> {
        let n = lambda.len();
        let m = lambda.first().map(ExponentVector::len).unwrap_or(1);
        Self::from_terms(n, m, [(lambda, Rational::one())])
    }

    /// Univariate `m_λ` from plain integer exponents.
    pub fn monomial_univariate(lambda: &[i64]) -> Result<Self> {
        Self::monomial(lambda.iter().map(|&e| ExponentVector::new(vec![e])).collect())
    }

    /// The constant family `c` (representative all zeros).
    pub fn constant(n: usize, m: usize, c: Rational) -> Self {
        let mut out = Self::zero(n, m);
        out.accumulate(vec![ExponentVector::zero(m); n], c);
        out
    }

    fn single(n: usize, m: usize, rep: Vec<ExponentVector>) -> Self {
        let mut out = Self::zero(n, m);
        out.accumulate(canonicalize(rep), Rational::one());
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Orbit representatives and their coefficients, in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&[ExponentVector], &Rational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// `p_i` for an arbitrary (not necessarily sorted) tuple.
    pub fn coefficient(&self, tuple: &[ExponentVector]) -> Rational {
        self.terms.get(&canonicalize(tuple.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().flatten().any(ExponentVector::has_negative)
    }

    /// Number of nonzero `p_i`, i.e. summed orbit sizes.
    pub fn full_support_size(&self) -> u128 {
        self.terms.keys().map(|k| orbit_size(k)).sum()
    }

    /// Distinct exponent vectors occurring in the support.
    pub fn alphabet(&self) -> Vec<ExponentVector> {
        let mut all: Vec<_> = self.terms.keys().flatten().cloned().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.accumulate(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n, self.m);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        }
        out
    }

    fn accumulate(&mut self, key: Vec<ExponentVector>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_tuple(&self, tuple: &[ExponentVector]) -> Result<()> {
        if tuple.len() != self.n {
            return Err(Error::ArityMismatch(format!(
                "index tuple has {} entries, expected {}",
                tuple.len(),
                self.n
            )));
        }
        if let Some(g) = tuple.iter().find(|g| g.len() != self.m) {
            return Err(Error::ArityMismatch(format!(
                "exponent vector {g} has length {}, expected {}",
                g.len(),
                self.m
            )));
        }
        Ok(())
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.m != other.m {
            return Err(Error::ArityMismatch(format!(
                "(n, m) = ({}, {}) vs ({}, {})",
                self.n, self.m, other.n, other.m
            )));
        }
        Ok(())
    }
}

impl fmt::Display for SymmetricCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (rep, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*m[")?;
            for (j, g) in rep.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                if self.m == 1 {
                    write!(f, "{}", g.as_slice()[0])?;
                } else {
                    write!(f, "{g}")?;
                }
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}
