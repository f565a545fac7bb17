//! Matrix families with known rational spectra, plus brute-force oracles.
//!
//! A fixture starts from an upper triangular `T` with chosen diagonal, applies
//! Laurent polynomials `q_j` to it (polynomials in one matrix always commute),
//! and hides the triangular structure behind a random unimodular conjugation
//! `S·q_j(T)·S⁻¹`. Because `q_j(T)` is triangular with diagonal `q_j(t_kk)`,
//! the eigenvalue table is `a_k^(j) = q_j(t_kk)` with `k` in diagonal order.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::evaluator::EigenvalueTable;
use crate::family::MatrixFamily;
use crate::linalg::Matrix;
use crate::scalar::Rational;
use crate::sympoly::{ExponentVector, SymmetricCoefficients};

/// `Σ c_e xᵉ` with integer (possibly negative) exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPolynomial {
    pub fn new(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { terms: map }
    }

    /// The polynomial `xᵉ`.
    pub fn power(e: i64) -> Self {
        Self::new([(e, Rational::one())])
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn has_negative(&self) -> bool {
        self.terms.keys().any(|&e| e < 0)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let mut total = Rational::zero();
        for (&e, c) in &self.terms {
            if e < 0 && x.is_zero() {
                return Err(Error::DivisionByZero(format!("x^{e} at x = 0")));
            }
            total += c * pow_rational(x, e);
        }
        Ok(total)
    }

    pub fn eval_matrix(&self, t: &Matrix<Rational>) -> Result<Matrix<Rational>> {
        let mut total = Matrix::zeros(t.dim());
        for (&e, c) in &self.terms {
            total = total.add(&t.pow(e)?.scale(c))?;
        }
        Ok(total)
    }
}

fn pow_rational(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// Description of a fixture family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureSpec {
    pub n: usize,
    /// Diagonal of the base triangular matrix, in eigenvalue order.
    pub diag: Vec<Rational>,
    /// Strictly upper entries, row-major (`n(n-1)/2` values); `None` means diagonal.
    pub strict_upper: Option<Vec<Rational>>,
    pub generator_polys: Vec<LaurentPolynomial>,
    pub conjugator_seed: u64,
}

impl FixtureSpec {
    /// Upper triangular base matrix `T`.
    pub fn base(&self) -> Result<Matrix<Rational>> {
        let n = self.n;
        if self.diag.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.diag.len() });
        }
        let upper_len = n * n.saturating_sub(1) / 2;
        if let Some(u) = &self.strict_upper {
            if u.len() != upper_len {
                return Err(Error::DimensionMismatch { expected: upper_len, found: u.len() });
            }
        }
        let mut upper = self.strict_upper.iter().flatten();
        let mut t = Matrix::diagonal(&self.diag).rows();
        for (r, row) in t.iter_mut().enumerate() {
            for entry in row.iter_mut().skip(r + 1) {
                if let Some(v) = upper.next() {
                    *entry = v.clone();
                }
            }
        }
        Matrix::from_rows(t)
    }

    /// `a_k^(j) = q_j(diag_k)`.
    pub fn eigenvalue_table(&self) -> Result<EigenvalueTable<Rational>> {
        let rows = self
            .diag
            .iter()
            .map(|d| self.generator_polys.iter().map(|q| q.eval(d)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        EigenvalueTable::new(rows)
    }
}

/// Build the conjugated family and its eigenvalue table.
pub fn make_fixture(spec: &FixtureSpec) -> Result<(MatrixFamily<Rational>, EigenvalueTable<Rational>)> {
    if spec.generator_polys.is_empty() {
        return Err(Error::InvalidArgument("fixture needs at least one generator polynomial".into()));
    }
    let t = spec.base()?;
    let table = spec.eigenvalue_table()?;
    let s = random_invertible(spec.n, spec.conjugator_seed);
    let s_inv = s.inverse()?;
    let generators = spec
        .generator_polys
        .iter()
        .map(|q| s.mul(&q.eval_matrix(&t)?)?.mul(&s_inv))
        .collect::<Result<Vec<_>>>()?;
    Ok((MatrixFamily::new(generators)?, table))
}

/// Integer matrix with determinant ±1, deterministic per seed.
///
/// Built from the identity by a few row additions with coefficient ±1, a row
/// permutation and an optional sign flip, which keeps entries small.
pub fn random_invertible(n: usize, seed: u64) -> Matrix<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
    if n > 1 {
        for _ in 0..2 * n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = if rng.gen_bool(0.5) { 1 } else { -1 };
            let src = rows[j].clone();
            for (x, y) in rows[i].iter_mut().zip(src) {
                *x += c * y;
            }
        }
        rows.shuffle(&mut rng);
    }
    if rng.gen_bool(0.5) {
        for x in rows[0].iter_mut() {
            *x = -*x;
        }
    }
    Matrix::from_rows(
        rows.into_iter().map(|r| r.into_iter().map(|x| Rational::from_integer(x.into())).collect()).collect(),
    )
    .expect("square by construction")
}

/// Eigenvalue sum computed without orbit enumeration: a depth-first walk over
/// every `n`-tuple of the support's exponent vectors, cutting off prefixes that
/// are not a sub-multiset of any representative. Each surviving tuple is
/// weighted by the coefficient of the representative it rearranges.
pub fn oracle_eval(p: &SymmetricCoefficients, table: &EigenvalueTable<Rational>) -> Result<Rational> {
    if p.n() != table.n() || p.m() != table.m() {
        return Err(Error::ArityMismatch(format!(
            "polynomial is (n, m) = ({}, {}), table is {}x{}",
            p.n(),
            p.m(),
            table.n(),
            table.m()
        )));
    }
    let alphabet = p.alphabet();
    if alphabet.is_empty() {
        return Ok(Rational::zero());
    }
    let n = p.n();
    // symbol counts of every representative
    let reps: Vec<(Vec<usize>, &Rational)> = p
        .terms()
        .map(|(rep, c)| {
            let mut counts = vec![0; alphabet.len()];
            for g in rep {
                counts[alphabet.iter().position(|a| a == g).expect("alphabet covers support")] += 1;
            }
            (counts, c)
        })
        .collect();
    // factor[k][d] = prod_j a[k][j]^(alphabet[d]_j)
    let mut factor = Vec::with_capacity(n);
    for k in 0..n {
        let mut row = Vec::with_capacity(alphabet.len());
        for g in &alphabet {
            let mut f = Rational::one();
            for (j, &e) in g.as_slice().iter().enumerate() {
                let a = table.get(k, j);
                if e < 0 && a.is_zero() {
                    return Err(Error::DivisionByZero(format!("eigenvalue a[{},{}] = 0 raised to {e}", k + 1, j + 1)));
                }
                for _ in 0..e.unsigned_abs() {
                    f = if e > 0 { f * a } else { f / a };
                }
            }
            row.push(f);
        }
        factor.push(row);
    }

    struct Walk<'a> {
        n: usize,
        reps: &'a [(Vec<usize>, &'a Rational)],
        factor: &'a [Vec<Rational>],
        counts: Vec<usize>,
        total: Rational,
    }

    impl Walk<'_> {
        fn visit(&mut self, k: usize, live: &[usize], partial: &Rational) {
            if k == self.n {
                // equal size and componentwise <= means equal counts
                for &r in live {
                    self.total += self.reps[r].1 * partial;
                }
                return;
            }
            for d in 0..self.counts.len() {
                self.counts[d] += 1;
                let still: Vec<usize> = live.iter().copied().filter(|&r| self.counts[d] <= self.reps[r].0[d]).collect();
                if !still.is_empty() {
                    let next = partial * &self.factor[k][d];
                    self.visit(k + 1, &still, &next);
                }
                self.counts[d] -= 1;
            }
        }
    }

    let mut walk = Walk { n, reps: &reps, factor: &factor, counts: vec![0; alphabet.len()], total: Rational::zero() };
    let all: Vec<usize> = (0..reps.len()).collect();
    walk.visit(0, &all, &Rational::one());
    Ok(walk.total)
}

/// Shape of the spectrum a random fixture is drawn with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumKind {
    Distinct,
    Repeated,
    /// Contains a zero eigenvalue; only nonnegative exponents apply.
    Singular,
    /// Repeated eigenvalue with a nonzero strictly-upper part (Jordan-like).
    Defective,
}

impl SpectrumKind {
    pub const ALL: [SpectrumKind; 4] =
        [SpectrumKind::Distinct, SpectrumKind::Repeated, SpectrumKind::Singular, SpectrumKind::Defective];
}

fn small(rng: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    Rational::from_integer(rng.gen_range(lo..=hi).into())
}

fn nonzero(rng: &mut impl Rng, bound: i64) -> Rational {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return Rational::from_integer(v.into());
        }
    }
}

/// A random fixture spec of the given spectrum kind with `m` generator polynomials.
pub fn random_fixture_spec(rng: &mut impl Rng, n: usize, m: usize, kind: SpectrumKind) -> FixtureSpec {
    let mut diag: Vec<Rational> = match kind {
        SpectrumKind::Distinct => {
            let mut pool: Vec<i64> = (-4..=4).filter(|&v| v != 0).collect();
            pool.shuffle(rng);
            let mut d: Vec<Rational> = pool.iter().take(n).map(|&v| Rational::from_integer(v.into())).collect();
            if n > pool.len() {
                d.extend((0..n - pool.len()).map(|k| Rational::new((2 * k as i64 + 1).into(), 2.into())));
            }
            d
        }
        SpectrumKind::Repeated | SpectrumKind::Defective => {
            let base = nonzero(rng, 3);
            (0..n).map(|k| if k % 2 == 0 || n == 1 { base.clone() } else { nonzero(rng, 3) }).collect()
        }
        SpectrumKind::Singular => (0..n).map(|_| small(rng, -3, 3)).collect(),
    };
    if kind == SpectrumKind::Singular {
        let z = rng.gen_range(0..n);
        diag[z] = Rational::zero();
    }
    let upper_len = n * n.saturating_sub(1) / 2;
    let strict_upper = match kind {
        SpectrumKind::Defective => Some(
            (0..upper_len).map(|k| if k == 0 { Rational::one() } else { small(rng, -2, 2) }).collect(),
        ),
        _ if rng.gen_bool(0.5) => Some((0..upper_len).map(|_| small(rng, -2, 2)).collect()),
        _ => None,
    };
    let invertible = diag.iter().all(|d| !d.is_zero());
    let generator_polys = (0..m).map(|_| random_laurent(rng, invertible)).collect();
    FixtureSpec { n, diag, strict_upper, generator_polys, conjugator_seed: rng.gen() }
}

/// One or two terms, exponents in `-1..=2` (nonnegative when `allow_negative` is false).
pub fn random_laurent(rng: &mut impl Rng, allow_negative: bool) -> LaurentPolynomial {
    let lo = if allow_negative { -1 } else { 0 };
    let terms = rng.gen_range(1..=2);
    loop {
        let q = LaurentPolynomial::new((0..terms).map(|_| (rng.gen_range(lo..=2), nonzero(rng, 2))));
        if !q.terms.is_empty() {
            return q;
        }
    }
}

/// Random symmetric coefficients with at most `max_orbits` representatives and
/// exponent entries bounded by `max_abs_exp`.
pub fn random_symmetric(
    rng: &mut impl Rng,
    n: usize,
    m: usize,
    max_orbits: usize,
    max_abs_exp: i64,
    allow_negative: bool,
) -> SymmetricCoefficients {
    let lo = if allow_negative { -max_abs_exp } else { 0 };
    let count = rng.gen_range(1..=max_orbits.max(1));
    let terms: Vec<_> = (0..count)
        .map(|_| {
            let tuple = (0..n)
                .map(|_| ExponentVector::new((0..m).map(|_| rng.gen_range(lo..=max_abs_exp)).collect()))
                .collect();
            let coeff = Rational::new(nonzero(rng, 5).to_integer(), rng.gen_range(1..=3i64).into());
            (tuple, coeff)
        })
        .collect();
    SymmetricCoefficients::from_terms(n, m, terms).expect("shapes are consistent")
}

/// Random integer matrix with entries in `-bound..=bound`.
pub fn random_integer_matrix(rng: &mut impl Rng, n: usize, bound: i64) -> Matrix<Rational> {
    Matrix::from_fn(n, |_, _| small(rng, -bound, bound))
}

/// Random rational matrix with small numerators and denominators.
pub fn random_rational_matrix(rng: &mut impl Rng, n: usize) -> Matrix<Rational> {
    Matrix::from_fn(n, |_, _| Rational::new(rng.gen_range(-6..=6i64).into(), rng.gen_range(1..=4i64).into()))
}

/// Random invertible rational matrix (resampled until the determinant is nonzero).
pub fn random_invertible_rational(rng: &mut impl Rng, n: usize) -> Matrix<Rational> {
    loop {
        let a = random_rational_matrix(rng, n);
        if !a.det().is_zero() {
            return a;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn spec(diag: &[&str], upper: Option<&[&str]>, polys: Vec<LaurentPolynomial>) -> FixtureSpec {
        FixtureSpec {
            n: diag.len(),
            diag: diag.iter().map(|s| q(s)).collect(),
            strict_upper: upper.map(|u| u.iter().map(|s| q(s)).collect()),
            generator_polys: polys,
            conjugator_seed: 11,
        }
    }

    #[test]
    fn identity_polynomial_fixture() {
        let s = spec(&["2", "3"], None, vec![LaurentPolynomial::power(1)]);
        let (fam, table) = make_fixture(&s).unwrap();
        assert!(fam.is_commuting());
        assert_eq!(table.rows(), vec![vec![q("2")], vec![q("3")]]);
        let g = &fam.generators()[0];
        assert_eq!(g.trace(), q("5"));
        assert_eq!(g.det(), q("6"));
    }

    #[test]
    fn inverse_polynomial_fixture() {
        let s = spec(&["2", "3"], None, vec![LaurentPolynomial::power(1), LaurentPolynomial::power(-1)]);
        let (fam, table) = make_fixture(&s).unwrap();
        assert!(fam.is_commuting());
        assert_eq!(table.rows(), vec![vec![q("2"), q("1/2")], vec![q("3"), q("1/3")]]);
        let prod = fam.generators()[0].mul(&fam.generators()[1]).unwrap();
        assert_eq!(prod, Matrix::identity(2));
    }

    #[test]
    fn jordan_block_fixture() {
        let s = spec(&["1", "1"], Some(&["1"]), vec![LaurentPolynomial::power(1)]);
        let (fam, table) = make_fixture(&s).unwrap();
        assert_eq!(table.rows(), vec![vec![q("1")], vec![q("1")]]);
        let g = &fam.generators()[0];
        assert_ne!(*g, Matrix::identity(2));
        assert_eq!(g.sub(&Matrix::identity(2)).unwrap().pow(2).unwrap(), Matrix::zeros(2));
    }

    #[test]
    fn zero_eigenvalue_with_negative_power() {
        let s = spec(&["0", "3"], None, vec![LaurentPolynomial::power(-1)]);
        assert!(matches!(make_fixture(&s), Err(Error::DivisionByZero(_))));
    }

    #[test]
    fn unimodular_conjugators() {
        for n in 1..=6 {
            for seed in 0..20 {
                let s = random_invertible(n, seed);
                let d = s.det();
                assert!(d == q("1") || d == q("-1"), "n={n} seed={seed} det={d}");
                assert_eq!(s, random_invertible(n, seed));
            }
        }
        let one = random_invertible(1, 5);
        assert!(one[(0, 0)] == q("1") || one[(0, 0)] == q("-1"));
    }

    #[test]
    fn oracle_examples() {
        let t3 = EigenvalueTable::univariate(vec![q("2"), q("-5"), q("7")]).unwrap();
        assert_eq!(oracle_eval(&SymmetricCoefficients::zero(3, 1), &t3).unwrap(), q("0"));
        assert_eq!(oracle_eval(&SymmetricCoefficients::elementary(1, 3).unwrap(), &t3).unwrap(), q("4"));
        let t2 = EigenvalueTable::univariate(vec![q("2"), q("3")]).unwrap();
        let m21 = SymmetricCoefficients::monomial_univariate(&[2, 1]).unwrap();
        assert_eq!(oracle_eval(&m21, &t2).unwrap(), q("30"));
    }

    #[test]
    fn random_specs_build() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=5 {
            for kind in SpectrumKind::ALL {
                let s = random_fixture_spec(&mut rng, n, 2, kind);
                let (fam, table) = make_fixture(&s).unwrap();
                assert!(fam.is_commuting());
                assert_eq!((table.n(), table.m()), (n, 2));
            }
        }
    }
}
