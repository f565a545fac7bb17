//! Field elements.
//!
//! Everything in this crate is generic over [`Scalar`], which has two
//! realizations: [`Rational`] (arbitrary-precision, always canonical) and
//! `f64`. Exact arithmetic is the correctness authority; `f64` exists so the
//! same traversal can be timed and compared against the exact answer.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// A field element usable by the linear algebra and evaluators.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic never rounds.
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    /// Whether `candidate` should replace `current` as elimination pivot.
    ///
    /// Exact fields take the first nonzero entry; floats take the largest magnitude.
    fn better_pivot(candidate: &Self, current: &Self) -> bool;

    /// Entrywise agreement of two equally sized slices: exact equality for
    /// exact fields, a scale-aware tolerance for floats.
    fn entries_agree(a: &[Self], b: &[Self]) -> bool;

    /// Determinant of a row-major `n`×`n` array.
    fn determinant(n: usize, rows: &[Self]) -> Self;

    /// The exact value, when the realization has one.
    fn to_rational(&self) -> Option<Rational>;

    fn to_f64(&self) -> f64;

    /// Integer power; negative exponents invert.
    fn powi(&self, e: i64) -> Result<Self> {
        if e < 0 && self.is_zero() {
            return Err(Error::DivisionByZero(format!("0^{e}")));
        }
        let mut base = if e < 0 { Self::one() / self.clone() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            k >>= 1;
            if k > 0 {
                base = base.clone() * base;
            }
        }
        Ok(acc)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn better_pivot(candidate: &Self, current: &Self) -> bool {
        current.is_zero() && !candidate.is_zero()
    }

    fn entries_agree(a: &[Self], b: &[Self]) -> bool {
        a == b
    }

    fn determinant(n: usize, rows: &[Self]) -> Self {
        crate::linalg::bareiss_rational(n, rows, crate::linalg::PivotOrder::FirstNonzero)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Float commutation / agreement tolerance factor.
pub const FLOAT_AGREEMENT_TOL: f64 = 1e-10;

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn better_pivot(candidate: &Self, current: &Self) -> bool {
        candidate.abs() > current.abs()
    }

    fn entries_agree(a: &[Self], b: &[Self]) -> bool {
        let scale = a
            .iter()
            .chain(b.iter())
            .fold(0.0f64, |acc, x| acc.max(x.abs()));
        let tol = FLOAT_AGREEMENT_TOL * (1.0 + scale);
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    fn determinant(n: usize, rows: &[Self]) -> Self {
        crate::linalg::gauss_det_f64(n, rows)
    }

    fn to_rational(&self) -> Option<Rational> {
        Rational::from_float(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Parse the `num/den` wire format (optional sign on `num`; `den` omitted for integers).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    if den.starts_with(['+', '-']) {
        return Err(bad());
    }
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero(format!("rational literal {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Render a rational in the wire format: `num/den`, or just `num` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Render a float with 17 significant digits in `%.17g` style.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    const SIG: i32 = 17;
    let sci = format!("{:.*e}", (SIG - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-4..SIG).contains(&exp) {
        let m = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (SIG - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Relative agreement used when comparing float evaluations with each other or
/// with an exact reference.
pub fn relative_error(approx: f64, exact: f64) -> f64 {
    if exact == 0.0 {
        approx.abs()
    } else {
        ((approx - exact) / exact).abs()
    }
}
