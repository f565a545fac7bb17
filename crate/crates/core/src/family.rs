//! Indexed matrix families `A^(g) = B₁^{g₁}⋯B_m^{g_m}`.
//!
//! A [`MatrixFamily`] holds `m` generator matrices and materializes members on
//! demand. Members and signed generator powers are cached behind locks, so a
//! family can be shared across threads once built; `member` is a pure function
//! of `(family, g)`.
//!
//! Generators need not commute for determinant-side evaluation. For
//! non-commuting generators the factors are multiplied in generator order
//! `1…m`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::sympoly::ExponentVector;

/// Anything that can hand out the member matrix for an exponent vector.
///
/// The evaluator is written against this trait so transformed families (for
/// example `X·A^(g)·Y`) can be evaluated without re-deriving generators.
pub trait MemberSource<T: Scalar> {
    fn dim(&self) -> usize;
    fn generator_count(&self) -> usize;
    fn member(&self, g: &ExponentVector) -> Result<Arc<Matrix<T>>>;
}

/// Cache counters, cumulative over the family's lifetime.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
}

impl CacheStats {
    pub fn hit_rate(&self) -> f64 {
        let total = self.hits + self.misses;
        if total == 0 {
            0.0
        } else {
            self.hits as f64 / total as f64
        }
    }
}

type MatrixCache<K, T> = RwLock<HashMap<K, Arc<Matrix<T>>>>;

pub struct MatrixFamily<T: Scalar> {
    n: usize,
    generators: Vec<Matrix<T>>,
    commuting: bool,
    members: MatrixCache<ExponentVector, T>,
    powers: MatrixCache<(usize, i64), T>,
    inverses: Vec<OnceLock<Result<Arc<Matrix<T>>>>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl<T: Scalar> MatrixFamily<T> {
    /// Build a family, checking commutation of every generator pair.
    pub fn new(generators: Vec<Matrix<T>>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidArgument("a family needs at least one generator".into()));
        };
        let n = first.dim();
        if let Some(bad) = generators.iter().find(|g| g.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.dim() });
        }
        let mut commuting = true;
        'outer: for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if !generators[i].commutes_with(&generators[j])? {
                    commuting = false;
                    break 'outer;
                }
            }
        }
        Ok(Self::assemble(generators, commuting))
    }

    fn assemble(generators: Vec<Matrix<T>>, commuting: bool) -> Self {
        let n = generators[0].dim();
        let m = generators.len();
        let mut members = HashMap::new();
        members.insert(ExponentVector::zero(m), Arc::new(Matrix::identity(n)));
        let mut powers = HashMap::new();
        for (k, g) in generators.iter().enumerate() {
            let g = Arc::new(g.clone());
            members.insert(ExponentVector::unit(m, k), Arc::clone(&g));
            powers.insert((k, 1), g);
        }
        Self {
            n,
            inverses: (0..m).map(|_| OnceLock::new()).collect(),
            generators,
            commuting,
            members: RwLock::new(members),
            powers: RwLock::new(powers),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Matrix<T>] {
        &self.generators
    }

    /// Whether every generator pair commutes (exactly, or within the float tolerance).
    pub fn is_commuting(&self) -> bool {
        self.commuting
    }

    /// `Err(CommutationRequired)` unless the generators commute.
    pub fn require_commuting(&self) -> Result<()> {
        if self.commuting {
            Ok(())
        } else {
            Err(Error::CommutationRequired)
        }
    }

    /// The `k`-th column (0-based) of `A^(g)`.
    pub fn column(&self, g: &ExponentVector, k: usize) -> Result<Vec<T>> {
        if k >= self.n {
            return Err(Error::InvalidArgument(format!("column {k} out of range for n = {}", self.n)));
        }
        Ok(self.member(g)?.column(k))
    }

    pub fn cache_stats(&self) -> CacheStats {
        CacheStats { hits: self.hits.load(Ordering::Relaxed), misses: self.misses.load(Ordering::Relaxed) }
    }

    /// Generators `S⁻¹·B_k·S`. Conjugation preserves commutators, so the
    /// commutation flag carries over.
    pub fn conjugate(&self, s: &Matrix<T>) -> Result<Self> {
        if s.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: s.dim() });
        }
        let s_inv = s.inverse()?;
        let generators = self
            .generators
            .iter()
            .map(|b| s_inv.mul(b)?.mul(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(generators, self.commuting))
    }

    fn inverse_of(&self, k: usize) -> Result<Arc<Matrix<T>>> {
        self.inverses[k].get_or_init(|| self.generators[k].inverse().map(Arc::new)).clone()
    }

    /// `B_k^e`, built by stepping from the nearest cached power toward `e`.
    fn power(&self, k: usize, e: i64) -> Result<Arc<Matrix<T>>> {
        if e == 0 {
            return Ok(Arc::new(Matrix::identity(self.n)));
        }
        if let Some(p) = self.powers.read().expect("power cache poisoned").get(&(k, e)) {
            return Ok(Arc::clone(p));
        }
        let (step, unit) = if e > 0 {
            (Arc::new(self.generators[k].clone()), 1)
        } else {
            (self.inverse_of(k)?, -1)
        };
        let mut start = unit;
        let mut acc = Arc::clone(&step);
        {
            let cache = self.powers.read().expect("power cache poisoned");
            let mut probe = e - unit;
            while probe != 0 {
                if let Some(p) = cache.get(&(k, probe)) {
                    start = probe;
                    acc = Arc::clone(p);
                    break;
                }
                probe -= unit;
            }
        }
        let mut cur = start;
        let mut fresh = Vec::new();
        while cur != e {
            acc = Arc::new(acc.mul(&step)?);
            cur += unit;
            fresh.push((cur, Arc::clone(&acc)));
        }
        let mut cache = self.powers.write().expect("power cache poisoned");
        cache.insert((k, unit), step);
        for (p, mat) in fresh {
            cache.entry((k, p)).or_insert(mat);
        }
        Ok(acc)
    }
}

impl<T: Scalar> MemberSource<T> for MatrixFamily<T> {
    fn dim(&self) -> usize {
        self.n
    }

    fn generator_count(&self) -> usize {
        self.generators.len()
    }

    fn member(&self, g: &ExponentVector) -> Result<Arc<Matrix<T>>> {
        if g.len() != self.m() {
            return Err(Error::ArityMismatch(format!(
                "exponent vector {g} has length {}, family has {} generators",
                g.len(),
                self.m()
            )));
        }
        if let Some(hit) = self.members.read().expect("member cache poisoned").get(g) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(Arc::clone(hit));
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let mut acc: Option<Matrix<T>> = None;
        for (k, &e) in g.as_slice().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = self.power(k, e)?;
            acc = Some(match acc {
                None => (*p).clone(),
                Some(a) => a.mul(&p)?,
            });
        }
        let mat = Arc::new(acc.unwrap_or_else(|| Matrix::identity(self.n)));
        let mut cache = self.members.write().expect("member cache poisoned");
        Ok(Arc::clone(cache.entry(g.clone()).or_insert(mat)))
    }
}

impl<T: Scalar> std::fmt::Debug for MatrixFamily<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MatrixFamily")
            .field("n", &self.n)
            .field("generators", &self.generators)
            .field("commuting", &self.commuting)
            .finish()
    }
}

impl<T: Scalar> Clone for MatrixFamily<T> {
    fn clone(&self) -> Self {
        Self::assemble(self.generators.clone(), self.commuting)
    }
}

/// Members `X·A^(g)·Y` of an underlying family.
pub struct Transformed<'a, T: Scalar, S: MemberSource<T>> {
    inner: &'a S,
    left: Matrix<T>,
    right: Matrix<T>,
    memo: MatrixCache<ExponentVector, T>,
}

impl<'a, T: Scalar, S: MemberSource<T>> Transformed<'a, T, S> {
    pub fn new(inner: &'a S, left: Matrix<T>, right: Matrix<T>) -> Result<Self> {
        for m in [&left, &right] {
            if m.dim() != inner.dim() {
                return Err(Error::DimensionMismatch { expected: inner.dim(), found: m.dim() });
            }
        }
        Ok(Self { inner, left, right, memo: RwLock::new(HashMap::new()) })
    }
}

impl<T: Scalar, S: MemberSource<T>> MemberSource<T> for Transformed<'_, T, S> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn generator_count(&self) -> usize {
        self.inner.generator_count()
    }

    fn member(&self, g: &ExponentVector) -> Result<Arc<Matrix<T>>> {
        if let Some(hit) = self.memo.read().expect("memo poisoned").get(g) {
            return Ok(Arc::clone(hit));
        }
        let m = Arc::new(self.left.mul(&*self.inner.member(g)?)?.mul(&self.right)?);
        self.memo.write().expect("memo poisoned").insert(g.clone(), Arc::clone(&m));
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_rational, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
            .unwrap()
    }

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn commutation_flag() {
        let a = m(&[&[2, 1], &[0, 3]]);
        assert!(MatrixFamily::new(vec![a.clone()]).unwrap().is_commuting());
        assert!(MatrixFamily::new(vec![Matrix::identity(2), a]).unwrap().is_commuting());
        let x = m(&[&[0, 1], &[0, 0]]);
        let y = m(&[&[0, 0], &[1, 0]]);
        // brute-force commutator: xy - yx = diag(1, -1)
        assert_eq!(x.mul(&y).unwrap().sub(&y.mul(&x).unwrap()).unwrap(), m(&[&[1, 0], &[0, -1]]));
        let fam = MatrixFamily::new(vec![x, y]).unwrap();
        assert!(!fam.is_commuting());
        assert_eq!(fam.require_commuting(), Err(Error::CommutationRequired));
    }

    #[test]
    fn build_rejects_mixed_dims() {
        let r = MatrixFamily::new(vec![Matrix::<Rational>::identity(2), Matrix::identity(3)]);
        assert!(matches!(r, Err(Error::DimensionMismatch { expected: 2, found: 3 })));
    }

    #[test]
    fn members_and_columns() {
        let a = m(&[&[2, 1], &[0, 3]]);
        let fam = MatrixFamily::new(vec![a.clone()]).unwrap();
        assert_eq!(*fam.member(&ev(&[0])).unwrap(), Matrix::identity(2));
        assert_eq!(*fam.member(&ev(&[2])).unwrap(), m(&[&[4, 5], &[0, 9]]));
        assert_eq!(fam.column(&ev(&[0]), 1).unwrap(), Matrix::<Rational>::identity(2).column(1));
        assert_eq!(fam.column(&ev(&[1]), 0).unwrap(), a.column(0));
        assert_eq!(fam.column(&ev(&[2]), 1).unwrap(), vec![Rational::from_integer(5.into()), Rational::from_integer(9.into())]);
        assert!(fam.column(&ev(&[1]), 2).is_err());

        let b = m(&[&[1, 1], &[0, 1]]);
        let fam2 = MatrixFamily::new(vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(*fam2.member(&ev(&[1, 1])).unwrap(), a.mul(&b).unwrap());
        assert!(matches!(fam2.member(&ev(&[1])), Err(Error::ArityMismatch(_))));
    }

    #[test]
    fn negative_powers() {
        let d = m(&[&[2, 0], &[0, 4]]);
        let fam = MatrixFamily::new(vec![d]).unwrap();
        let inv2 = fam.member(&ev(&[-2])).unwrap();
        assert_eq!(inv2[(0, 0)], parse_rational("1/4").unwrap());
        assert_eq!(inv2[(1, 1)], parse_rational("1/16").unwrap());
        let singular = MatrixFamily::new(vec![m(&[&[0, 1], &[0, 0]])]).unwrap();
        assert!(matches!(singular.member(&ev(&[-1])), Err(Error::SingularMatrix { .. })));
        assert_eq!(*singular.member(&ev(&[0])).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn powers_reuse_cache() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let fam = MatrixFamily::new(vec![a.clone()]).unwrap();
        for e in [3, 5, 4, -2, -3] {
            assert_eq!(*fam.member(&ev(&[e])).unwrap(), a.pow(e).unwrap());
        }
        fam.member(&ev(&[3])).unwrap();
        assert!(fam.cache_stats().hits >= 1);
    }

    #[test]
    fn conjugation_round_trip() {
        let a = m(&[&[2, 1], &[0, 3]]);
        let b = m(&[&[5, 2], &[0, 7]]);
        let fam = MatrixFamily::new(vec![a.clone(), a.pow(2).unwrap()]).unwrap();
        let same = fam.conjugate(&Matrix::identity(2)).unwrap();
        assert_eq!(same.generators(), fam.generators());
        let s = m(&[&[1, 2], &[1, 3]]);
        let conj = fam.conjugate(&s).unwrap();
        assert!(conj.is_commuting());
        let back = conj.conjugate(&s.inverse().unwrap()).unwrap();
        assert_eq!(back.generators(), fam.generators());
        let nc = MatrixFamily::new(vec![a, b.transpose()]).unwrap();
        assert!(!nc.conjugate(&s).unwrap().is_commuting());
        assert!(matches!(fam.conjugate(&m(&[&[1, 1], &[1, 1]])), Err(Error::SingularMatrix { .. })));
    }
}
