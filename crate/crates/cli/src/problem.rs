//! Problem files.
//!
//! ```json
//! {
//!   "version": 1,
//!   "field": "rational",
//!   "n": 2,
//!   "generators": [{ "name": "A", "entries": [[2, 1], [0, "3/1"]] }],
//!   "polynomial": { "basis": "m", "lambda": [2, 1] },
//!   "eigenvalues": [["2"], ["3"]]
//! }
//! ```
//!
//! `polynomial` is one of `{"basis": "e", "k": K}`, `{"basis": "p", "k": K}`,
//! `{"basis": "m", "lambda": [...]}` (integers, or exponent vectors for several
//! generators) or `{"terms": [{"exponents": [[..], ..], "coeff": "num/den"}]}`.
//! Instead of `generators` a file may give a `fixture` (triangular base with a
//! known spectrum, generator polynomials and a conjugator seed); the eigenvalue
//! table is then derived from it. Exact values travel as `"num/den"` strings.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use symdet::fixtures::{make_fixture, FixtureSpec, LaurentPolynomial};
use symdet::{
    parse_rational, EigenvalueTable, ExponentVector, Matrix, MatrixFamily, Rational, Scalar,
    SymmetricCoefficients,
};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldMode {
    #[default]
    #[serde(rename = "rational")]
    Rational,
    #[serde(rename = "float64")]
    Float64,
}

/// A matrix entry or eigenvalue as written in the file.
#[derive(Clone, Debug, PartialEq)]
pub enum Number {
    Exact(Rational),
    Float(f64),
}

impl Number {
    fn parse(v: &Value, field: FieldMode) -> Result<Self> {
        let bad = || CliError::Parse(format!("invalid {} number: {v}", field_name(field)));
        match (field, v) {
            (FieldMode::Rational, Value::Number(n)) => {
                let i = n.as_i64().ok_or_else(bad)?;
                Ok(Number::Exact(Rational::from_integer(i.into())))
            }
            (FieldMode::Rational, Value::String(s)) => {
                parse_rational(s).map(Number::Exact).map_err(|e| CliError::Parse(e.to_string()))
            }
            (FieldMode::Float64, Value::Number(n)) => n.as_f64().map(Number::Float).ok_or_else(bad),
            (FieldMode::Float64, Value::String(s)) => match parse_rational(s) {
                Ok(q) => Ok(Number::Float(q.to_f64())),
                Err(_) => s.trim().parse::<f64>().map(Number::Float).map_err(|_| bad()),
            },
            _ => Err(bad()),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Number::Exact(q) => Value::String(q.to_string()),
            Number::Float(x) => serde_json::Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null),
        }
    }

    fn rational(&self) -> Rational {
        match self {
            Number::Exact(q) => q.clone(),
            Number::Float(x) => Rational::from_float(*x).unwrap_or_default(),
        }
    }

    fn float(&self) -> f64 {
        match self {
            Number::Exact(q) => q.to_f64(),
            Number::Float(x) => *x,
        }
    }
}

fn field_name(f: FieldMode) -> &'static str {
    match f {
        FieldMode::Rational => "rational",
        FieldMode::Float64 => "float64",
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedMatrix {
    pub name: String,
    pub rows: Vec<Vec<Number>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PolySpec {
    Elementary(usize),
    PowerSum(i64),
    Monomial(Vec<ExponentVector>),
    Terms(Vec<(Vec<ExponentVector>, Rational)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub version: u32,
    pub field: FieldMode,
    pub n: usize,
    pub generators: Vec<NamedMatrix>,
    pub fixture: Option<FixtureSpec>,
    pub polynomial: PolySpec,
    pub eigenvalues: Option<Vec<Vec<Number>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    #[serde(default = "default_version")]
    version: u32,
    #[serde(default)]
    field: FieldMode,
    n: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    generators: Vec<RawGenerator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fixture: Option<RawFixture>,
    polynomial: RawPolynomial,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eigenvalues: Option<Vec<Vec<Value>>>,
}

fn default_version() -> u32 {
    SCHEMA_VERSION
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    name: String,
    entries: Vec<Vec<Value>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFixture {
    diag: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    strict_upper: Option<Vec<String>>,
    /// One polynomial per generator, as `[exponent, "coeff"]` pairs.
    polys: Vec<Vec<(i64, String)>>,
    seed: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawPolynomial {
    Terms {
        terms: Vec<RawTerm>,
    },
    Builtin {
        basis: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambda: Option<Value>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    exponents: Vec<Vec<i64>>,
    coeff: String,
}

fn parse_err(e: impl std::fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}

fn parse_lambda(v: &Value) -> Result<Vec<ExponentVector>> {
    let items = v.as_array().ok_or_else(|| parse_err("lambda must be an array"))?;
    items
        .iter()
        .map(|item| match item {
            Value::Number(n) => {
                n.as_i64().map(|e| ExponentVector::new(vec![e])).ok_or_else(|| parse_err("lambda entries must be integers"))
            }
            Value::Array(xs) => xs
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| parse_err("exponent vectors must hold integers")))
                .collect::<Result<Vec<_>>>()
                .map(ExponentVector::new),
            _ => Err(parse_err("lambda entries must be integers or integer arrays")),
        })
        .collect()
}

fn lambda_to_json(lambda: &[ExponentVector]) -> Value {
    let univariate = lambda.iter().all(|g| g.len() == 1);
    Value::Array(
        lambda
            .iter()
            .map(|g| {
                if univariate {
                    Value::from(g.as_slice()[0])
                } else {
                    Value::from(g.as_slice().to_vec())
                }
            })
            .collect(),
    )
}

impl Problem {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawProblem = serde_json::from_str(text).map_err(parse_err)?;
        Self::from_raw(raw)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn from_raw(raw: RawProblem) -> Result<Self> {
        if raw.version != SCHEMA_VERSION {
            return Err(parse_err(format!("unsupported schema version {}", raw.version)));
        }
        if raw.n == 0 {
            return Err(parse_err("n must be positive"));
        }
        let generators = raw
            .generators
            .into_iter()
            .map(|g| {
                let rows = g
                    .entries
                    .iter()
                    .map(|row| row.iter().map(|v| Number::parse(v, raw.field)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Ok(NamedMatrix { name: g.name, rows })
            })
            .collect::<Result<Vec<_>>>()?;
        let fixture = raw.fixture.map(|f| fixture_from_raw(f, raw.n)).transpose()?;
        if fixture.is_some() && !generators.is_empty() {
            return Err(parse_err("give either generators or a fixture, not both"));
        }
        let polynomial = match raw.polynomial {
            RawPolynomial::Terms { terms } => PolySpec::Terms(
                terms
                    .into_iter()
                    .map(|t| {
                        let coeff = parse_rational(&t.coeff).map_err(parse_err)?;
                        Ok((t.exponents.into_iter().map(ExponentVector::new).collect(), coeff))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            RawPolynomial::Builtin { basis, k, lambda } => match (basis.as_str(), k, lambda) {
                ("e", Some(k), None) => {
                    PolySpec::Elementary(usize::try_from(k).map_err(|_| parse_err("e_k needs k >= 0"))?)
                }
                ("p", Some(k), None) => PolySpec::PowerSum(k),
                ("m", None, Some(l)) => PolySpec::Monomial(parse_lambda(&l)?),
                (b, _, _) => {
                    return Err(parse_err(format!(
                        "polynomial basis {b:?}: expected e/p with \"k\" or m with \"lambda\""
                    )))
                }
            },
        };
        let eigenvalues = raw
            .eigenvalues
            .map(|rows| {
                rows.iter()
                    .map(|row| row.iter().map(|v| Number::parse(v, raw.field)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Ok(Problem { version: raw.version, field: raw.field, n: raw.n, generators, fixture, polynomial, eigenvalues })
    }

    pub fn to_json(&self) -> String {
        let raw = RawProblem {
            version: self.version,
            field: self.field,
            n: self.n,
            generators: self
                .generators
                .iter()
                .map(|g| RawGenerator {
                    name: g.name.clone(),
                    entries: g.rows.iter().map(|r| r.iter().map(Number::to_json).collect()).collect(),
                })
                .collect(),
            fixture: self.fixture.as_ref().map(fixture_to_raw),
            polynomial: match &self.polynomial {
                PolySpec::Elementary(k) => {
                    RawPolynomial::Builtin { basis: "e".into(), k: Some(*k as i64), lambda: None }
                }
                PolySpec::PowerSum(k) => RawPolynomial::Builtin { basis: "p".into(), k: Some(*k), lambda: None },
                PolySpec::Monomial(l) => {
                    RawPolynomial::Builtin { basis: "m".into(), k: None, lambda: Some(lambda_to_json(l)) }
                }
                PolySpec::Terms(ts) => RawPolynomial::Terms {
                    terms: ts
                        .iter()
                        .map(|(t, c)| RawTerm {
                            exponents: t.iter().map(|g| g.as_slice().to_vec()).collect(),
                            coeff: c.to_string(),
                        })
                        .collect(),
                },
            },
            eigenvalues: self
                .eigenvalues
                .as_ref()
                .map(|rows| rows.iter().map(|r| r.iter().map(Number::to_json).collect()).collect()),
        };
        serde_json::to_string_pretty(&raw).expect("problem serializes")
    }

    /// Number of generators `m`.
    pub fn generator_count(&self) -> usize {
        match &self.fixture {
            Some(f) => f.generator_polys.len(),
            None => self.generators.len().max(1),
        }
    }

    pub fn coefficients(&self) -> Result<SymmetricCoefficients> {
        let (n, m) = (self.n, self.generator_count());
        let builtin_univariate = |what: &str| {
            if m == 1 {
                Ok(())
            } else {
                Err(CliError::Core(symdet::Error::ArityMismatch(format!(
                    "{what} is univariate but the problem has {m} generators"
                ))))
            }
        };
        let p = match &self.polynomial {
            PolySpec::Elementary(k) => {
                builtin_univariate("e_k")?;
                if *k > n {
                    return Err(symdet::Error::ArityMismatch(format!("e_{k} needs k <= n = {n}")).into());
                }
                SymmetricCoefficients::elementary(*k, n)?
            }
            PolySpec::PowerSum(k) => {
                builtin_univariate("p_k")?;
                SymmetricCoefficients::power_sum(*k, n)?
            }
            PolySpec::Monomial(lambda) => {
                if lambda.len() != n {
                    return Err(symdet::Error::ArityMismatch(format!(
                        "lambda has {} parts, n = {n}",
                        lambda.len()
                    ))
                    .into());
                }
                SymmetricCoefficients::from_terms(n, m, [(lambda.clone(), Rational::from_integer(1.into()))])?
            }
            PolySpec::Terms(ts) => SymmetricCoefficients::from_terms(n, m, ts.iter().cloned())?,
        };
        Ok(p)
    }

    fn check_generators(&self) -> Result<()> {
        if self.generators.is_empty() && self.fixture.is_none() {
            return Err(parse_err("problem has no generators"));
        }
        self.validate()
    }

    /// Shape checks that do not need any arithmetic: every matrix is `n×n` and
    /// the eigenvalue table is `n×m`.
    pub fn validate(&self) -> Result<()> {
        for g in &self.generators {
            if g.rows.len() != self.n || g.rows.iter().any(|r| r.len() != self.n) {
                return Err(symdet::Error::ArityMismatch(format!("generator {} is not {n}x{n}", g.name, n = self.n)).into());
            }
        }
        if let Some(rows) = &self.eigenvalues {
            let m = self.generator_count();
            if rows.len() != self.n || rows.iter().any(|r| r.len() != m) {
                return Err(symdet::Error::ArityMismatch(format!(
                    "eigenvalue table must be {}x{m} (n rows, one column per generator)",
                    self.n
                ))
                .into());
            }
        }
        Ok(())
    }

    fn fixture_parts(&self) -> Result<Option<(MatrixFamily<Rational>, EigenvalueTable<Rational>)>> {
        match &self.fixture {
            Some(spec) => Ok(Some(make_fixture(spec)?)),
            None => Ok(None),
        }
    }

    pub fn family_rational(&self) -> Result<MatrixFamily<Rational>> {
        self.check_generators()?;
        if let Some((fam, _)) = self.fixture_parts()? {
            return Ok(fam);
        }
        let mats = self
            .generators
            .iter()
            .map(|g| Matrix::from_rows(g.rows.iter().map(|r| r.iter().map(Number::rational).collect()).collect()))
            .collect::<symdet::Result<Vec<_>>>()?;
        Ok(MatrixFamily::new(mats)?)
    }

    pub fn family_f64(&self) -> Result<MatrixFamily<f64>> {
        self.check_generators()?;
        if let Some((fam, _)) = self.fixture_parts()? {
            return Ok(MatrixFamily::new(fam.generators().iter().map(|g| g.map(Scalar::to_f64)).collect())?);
        }
        let mats = self
            .generators
            .iter()
            .map(|g| Matrix::from_rows(g.rows.iter().map(|r| r.iter().map(Number::float).collect()).collect()))
            .collect::<symdet::Result<Vec<_>>>()?;
        Ok(MatrixFamily::new(mats)?)
    }

    pub fn has_eigenvalues(&self) -> bool {
        self.eigenvalues.is_some() || self.fixture.is_some()
    }

    pub fn eigen_rational(&self) -> Result<EigenvalueTable<Rational>> {
        if let Some(rows) = &self.eigenvalues {
            return Ok(EigenvalueTable::new(rows.iter().map(|r| r.iter().map(Number::rational).collect()).collect())?);
        }
        match self.fixture_parts()? {
            Some((_, table)) => Ok(table),
            None => Err(parse_err("eigen mode needs an \"eigenvalues\" table or a fixture")),
        }
    }

    pub fn eigen_f64(&self) -> Result<EigenvalueTable<f64>> {
        if let Some(rows) = &self.eigenvalues {
            return Ok(EigenvalueTable::new(rows.iter().map(|r| r.iter().map(Number::float).collect()).collect())?);
        }
        Ok(self.eigen_rational()?.map(Scalar::to_f64))
    }
}

fn fixture_from_raw(f: RawFixture, n: usize) -> Result<FixtureSpec> {
    let parse_all = |xs: &[String]| xs.iter().map(|s| parse_rational(s).map_err(parse_err)).collect::<Result<Vec<_>>>();
    let polys = f
        .polys
        .iter()
        .map(|terms| {
            terms
                .iter()
                .map(|(e, c)| Ok((*e, parse_rational(c).map_err(parse_err)?)))
                .collect::<Result<Vec<_>>>()
                .map(LaurentPolynomial::new)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FixtureSpec {
        n,
        diag: parse_all(&f.diag)?,
        strict_upper: f.strict_upper.as_deref().map(parse_all).transpose()?,
        generator_polys: polys,
        conjugator_seed: f.seed,
    })
}

fn fixture_to_raw(spec: &FixtureSpec) -> RawFixture {
    RawFixture {
        diag: spec.diag.iter().map(ToString::to_string).collect(),
        strict_upper: spec.strict_upper.as_ref().map(|u| u.iter().map(ToString::to_string).collect()),
        polys: spec
            .generator_polys
            .iter()
            .map(|q| q.terms().map(|(e, c)| (e, c.to_string())).collect())
            .collect(),
        seed: spec.conjugator_seed,
    }
}

/// A problem file describing a fixture, for `eval --mode both` round trips.
pub fn fixture_problem(spec: &FixtureSpec, polynomial: PolySpec) -> Problem {
    Problem {
        version: SCHEMA_VERSION,
        field: FieldMode::Rational,
        n: spec.n,
        generators: Vec::new(),
        fixture: Some(spec.clone()),
        polynomial,
        eigenvalues: None,
    }
}
