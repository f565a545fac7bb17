use std::fmt::Write as _;

use symdet::scalar::{format_f64, relative_error};
use symdet::{eval_det, eval_eigen, eval_eigen_for, eval_symbolic, Naming, Rational};

use crate::error::Result;
use crate::problem::{FieldMode, Problem};

/// Relative tolerance for `MATCH` in float64 mode.
pub const FLOAT_MATCH_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum EvalMode {
    Det,
    Eigen,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ExpandTarget {
    Entries,
    Companion,
}

/// Text for stdout plus warnings for stderr.
#[derive(Debug, Default, PartialEq)]
pub struct Output {
    pub stdout: String,
    pub warnings: Vec<String>,
}

const NON_COMMUTING: &str = "warning: generators do not commute; the determinant sum is still defined but has no eigenvalue interpretation";

enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Exact(q) => q.to_string(),
            Value::Float(x) => format_f64(*x),
        }
    }
}

fn det_value(problem: &Problem, warnings: &mut Vec<String>) -> Result<Value> {
    let p = problem.coefficients()?;
    match problem.field {
        FieldMode::Rational => {
            let fam = problem.family_rational()?;
            if !fam.is_commuting() {
                warnings.push(NON_COMMUTING.into());
            }
            Ok(Value::Exact(eval_det(&p, &fam)?))
        }
        FieldMode::Float64 => {
            let fam = problem.family_f64()?;
            if !fam.is_commuting() {
                warnings.push(NON_COMMUTING.into());
            }
            Ok(Value::Float(eval_det(&p, &fam)?))
        }
    }
}

fn eigen_value(problem: &Problem) -> Result<Value> {
    let p = problem.coefficients()?;
    let standalone = problem.generators.is_empty() && problem.fixture.is_none();
    match problem.field {
        FieldMode::Rational => {
            let table = problem.eigen_rational()?;
            if standalone {
                return Ok(Value::Exact(eval_eigen(&p, &table)?));
            }
            Ok(Value::Exact(eval_eigen_for(&p, &problem.family_rational()?, &table)?))
        }
        FieldMode::Float64 => {
            let table = problem.eigen_f64()?;
            if standalone {
                return Ok(Value::Float(eval_eigen(&p, &table)?));
            }
            Ok(Value::Float(eval_eigen_for(&p, &problem.family_f64()?, &table)?))
        }
    }
}

/// `symdet eval`.
pub fn eval(problem: &Problem, mode: EvalMode) -> Result<Output> {
    problem.validate()?;
    let mut out = Output::default();
    match mode {
        EvalMode::Det => {
            let v = det_value(problem, &mut out.warnings)?;
            writeln!(out.stdout, "{}", v.render()).unwrap();
        }
        EvalMode::Eigen => {
            let v = eigen_value(problem)?;
            writeln!(out.stdout, "{}", v.render()).unwrap();
        }
        EvalMode::Both => {
            let d = det_value(problem, &mut out.warnings)?;
            let e = eigen_value(problem)?;
            let matched = match (&d, &e) {
                (Value::Exact(a), Value::Exact(b)) => a == b,
                (Value::Float(a), Value::Float(b)) => relative_error(*a, *b) <= FLOAT_MATCH_TOL,
                _ => false,
            };
            writeln!(out.stdout, "det:   {}", d.render()).unwrap();
            writeln!(out.stdout, "eigen: {}", e.render()).unwrap();
            writeln!(out.stdout, "{}", if matched { "MATCH" } else { "MISMATCH" }).unwrap();
        }
    }
    Ok(out)
}

/// `symdet expand`.
pub fn expand(problem: &Problem, target: ExpandTarget) -> Result<Output> {
    problem.validate()?;
    let m = problem.generator_count();
    if m != 1 {
        return Err(symdet::Error::ArityMismatch(format!("expand needs a single generator, the problem has {m}")).into());
    }
    let p = problem.coefficients()?;
    let naming = match target {
        ExpandTarget::Entries => Naming::Entries,
        ExpandTarget::Companion => Naming::Companion,
    };
    let poly = eval_symbolic(&p, problem.n, naming)?;
    Ok(Output { stdout: format!("{poly}\n"), warnings: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(poly: &str) -> Problem {
        Problem::from_json(&format!(
            r#"{{"n": 2, "generators": [{{"name": "A", "entries": [[1, 2], [3, 4]]}}], "polynomial": {poly}}}"#
        ))
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval(&problem(r#"{"basis": "e", "k": 2}"#), EvalMode::Det).unwrap().stdout, "-2\n");
        assert_eq!(eval(&problem(r#"{"basis": "e", "k": 1}"#), EvalMode::Det).unwrap().stdout, "5\n");
        assert_eq!(eval(&problem(r#"{"terms": []}"#), EvalMode::Det).unwrap().stdout, "0\n");
    }

    #[test]
    fn eigen_needs_table() {
        let err = eval(&problem(r#"{"basis": "e", "k": 1}"#), EvalMode::Eigen).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn expand_examples() {
        let p = problem(r#"{"basis": "m", "lambda": [2, 1]}"#);
        assert_eq!(expand(&p, ExpandTarget::Companion).unwrap().stdout, "-c0*c1\n");
        let p = problem(r#"{"basis": "e", "k": 2}"#);
        assert_eq!(expand(&p, ExpandTarget::Entries).unwrap().stdout, "A[1,1]*A[2,2] - A[1,2]*A[2,1]\n");
        let p = problem(r#"{"basis": "e", "k": 0}"#);
        assert_eq!(expand(&p, ExpandTarget::Entries).unwrap().stdout, "1\n");
        let p = problem(r#"{"basis": "p", "k": -1}"#);
        assert_eq!(expand(&p, ExpandTarget::Entries).unwrap_err().exit_code(), 5);
    }
}
