//! The `verify` property sweep.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symdet::fixtures::{
    make_fixture, oracle_eval, random_fixture_spec, random_integer_matrix, random_invertible,
    random_invertible_rational, random_rational_matrix, random_symmetric, SpectrumKind,
};
use symdet::linalg::LEIBNIZ_CAP;
use symdet::scalar::relative_error;
use symdet::{
    eval_det, eval_eigen, eval_symbolic, leibniz_det, scaling_check, Matrix, MatrixFamily, MemberSource, Naming,
    Rational, Scalar, SymmetricCoefficients,
};

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub max_n: usize,
    pub trials: usize,
    /// Test-only hook: adds 1 to every determinant-side evaluation.
    pub corrupt: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { seed: 0, max_n: 4, trials: 50, corrupt: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

type Trial = fn(&mut Ctx) -> Result<(), String>;

struct Ctx {
    rng: ChaCha8Rng,
    n: usize,
    trial: usize,
    corrupt: bool,
}

impl Ctx {
    fn det<S: MemberSource<Rational>>(&self, p: &SymmetricCoefficients, fam: &S) -> Result<Rational, String> {
        let v = eval_det(p, fam).map_err(|e| e.to_string())?;
        Ok(if self.corrupt { v + Rational::one() } else { v })
    }

    fn kind(&self) -> SpectrumKind {
        SpectrumKind::ALL[self.trial % SpectrumKind::ALL.len()]
    }
}

fn expect_eq(what: &str, a: &Rational, b: &Rational) -> Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what}: {a} != {b}"))
    }
}

fn e(err: symdet::Error) -> String {
    err.to_string()
}

fn one_generator(n: usize, a: Matrix<Rational>) -> Result<MatrixFamily<Rational>, String> {
    debug_assert_eq!(a.dim(), n);
    MatrixFamily::new(vec![a]).map_err(e)
}

fn trace_anchor(cx: &mut Ctx) -> Result<(), String> {
    let a = random_integer_matrix(&mut cx.rng, cx.n, 9);
    let p = SymmetricCoefficients::elementary(1, cx.n).map_err(e)?;
    let v = cx.det(&p, &one_generator(cx.n, a.clone())?)?;
    expect_eq("e1 vs trace", &v, &a.trace())
}

fn det_anchor(cx: &mut Ctx) -> Result<(), String> {
    let a = random_integer_matrix(&mut cx.rng, cx.n, 9);
    let p = SymmetricCoefficients::elementary(cx.n, cx.n).map_err(e)?;
    let v = cx.det(&p, &one_generator(cx.n, a.clone())?)?;
    let reference = if cx.n <= LEIBNIZ_CAP { leibniz_det(&a).map_err(e)? } else { a.det() };
    expect_eq("e_n vs determinant", &v, &reference)
}

fn power_sum_anchor(cx: &mut Ctx) -> Result<(), String> {
    let a = random_integer_matrix(&mut cx.rng, cx.n, 5);
    let k = cx.rng.gen_range(1..=3);
    let p = SymmetricCoefficients::power_sum(k, cx.n).map_err(e)?;
    let v = cx.det(&p, &one_generator(cx.n, a.clone())?)?;
    expect_eq("p_k vs trace(A^k)", &v, &a.pow(k).map_err(e)?.trace())
}

fn fixture_case(cx: &mut Ctx) -> Result<(SymmetricCoefficients, MatrixFamily<Rational>, Rational), String> {
    let m = 1 + cx.trial % 3;
    let kind = cx.kind();
    let spec = random_fixture_spec(&mut cx.rng, cx.n, m, kind);
    let (fam, table) = make_fixture(&spec).map_err(e)?;
    let invertible = table.rows().iter().flatten().all(|v| !v.is_zero());
    let p = random_symmetric(&mut cx.rng, cx.n, m, 5, 4, invertible);
    let oracle = oracle_eval(&p, &table).map_err(e)?;
    let eigen = eval_eigen(&p, &table).map_err(e)?;
    expect_eq("eigen side vs oracle", &eigen, &oracle)?;
    Ok((p, fam, oracle))
}

fn det_vs_oracle(cx: &mut Ctx) -> Result<(), String> {
    let (p, fam, oracle) = fixture_case(cx)?;
    let v = cx.det(&p, &fam)?;
    expect_eq("determinant side vs oracle", &v, &oracle)
}

fn eigen_vs_oracle(cx: &mut Ctx) -> Result<(), String> {
    fixture_case(cx).map(|_| ())
}

/// A commuting fixture family on even trials, unrelated invertible generators otherwise.
fn any_family(cx: &mut Ctx) -> Result<(MatrixFamily<Rational>, bool), String> {
    let m = 1 + cx.trial % 2;
    if cx.trial.is_multiple_of(2) {
        let spec = random_fixture_spec(&mut cx.rng, cx.n, m, SpectrumKind::Distinct);
        let (fam, table) = make_fixture(&spec).map_err(e)?;
        let invertible = table.rows().iter().flatten().all(|v| !v.is_zero());
        Ok((fam, invertible))
    } else {
        let gens = (0..m).map(|_| random_invertible_rational(&mut cx.rng, cx.n)).collect();
        Ok((MatrixFamily::new(gens).map_err(e)?, true))
    }
}

fn basis_invariance(cx: &mut Ctx) -> Result<(), String> {
    let (fam, invertible) = any_family(cx)?;
    let p = random_symmetric(&mut cx.rng, cx.n, fam.m(), 3, 2, invertible);
    let s = random_invertible(cx.n, cx.rng.gen());
    let before = cx.det(&p, &fam)?;
    let after = eval_det(&p, &fam.conjugate(&s).map_err(e)?).map_err(e)?;
    expect_eq("value under change of basis", &before, &after)
}

fn linearity(cx: &mut Ctx) -> Result<(), String> {
    let (fam, invertible) = any_family(cx)?;
    let m = fam.m();
    let p = random_symmetric(&mut cx.rng, cx.n, m, 3, 2, invertible);
    let q = random_symmetric(&mut cx.rng, cx.n, m, 3, 2, invertible);
    let a = Rational::new(cx.rng.gen_range(-5..=5i64).into(), cx.rng.gen_range(1..=3i64).into());
    let b = Rational::new(cx.rng.gen_range(-5..=5i64).into(), cx.rng.gen_range(1..=3i64).into());
    let combined = p.scale(&a).add(&q.scale(&b)).map_err(e)?;
    let lhs = cx.det(&combined, &fam)?;
    let rhs = a * eval_det(&p, &fam).map_err(e)? + b * eval_det(&q, &fam).map_err(e)?;
    expect_eq("linearity in p", &lhs, &rhs)
}

fn scaling_law(cx: &mut Ctx) -> Result<(), String> {
    let (fam, invertible) = any_family(cx)?;
    let p = random_symmetric(&mut cx.rng, cx.n, fam.m(), 3, 2, invertible);
    let x = random_rational_matrix(&mut cx.rng, cx.n);
    let y = random_rational_matrix(&mut cx.rng, cx.n);
    let (before, after) = scaling_check(&p, &fam, &x, &y).map_err(e)?;
    let before = if cx.corrupt { before + Rational::one() } else { before };
    expect_eq("scaled value", &after, &(x.det() * y.det() * before))
}

/// `p_{-1} · e_n = e_{n-1}` on invertible matrices.
fn negative_power(cx: &mut Ctx) -> Result<(), String> {
    let a = random_invertible_rational(&mut cx.rng, cx.n);
    let fam = one_generator(cx.n, a)?;
    let inv_sum = cx.det(&SymmetricCoefficients::power_sum(-1, cx.n).map_err(e)?, &fam)?;
    let en = eval_det(&SymmetricCoefficients::elementary(cx.n, cx.n).map_err(e)?, &fam).map_err(e)?;
    let en1 = eval_det(&SymmetricCoefficients::elementary(cx.n - 1, cx.n).map_err(e)?, &fam).map_err(e)?;
    expect_eq("p_-1 * e_n vs e_(n-1)", &(inv_sum * en), &en1)
}

fn symbolic_consistency(cx: &mut Ctx) -> Result<(), String> {
    let n = cx.n.min(3);
    let p = random_symmetric(&mut cx.rng, n, 1, 3, 3, false);
    let a = random_rational_matrix(&mut cx.rng, n);
    let poly = eval_symbolic(&p, n, Naming::Entries).map_err(e)?;
    let symbolic = poly.evaluate_matrix(&a).map_err(e)?;
    let numeric = cx.det(&p, &one_generator(n, a)?)?;
    expect_eq("symbolic vs numeric", &symbolic, &numeric)
}

fn float_agreement(cx: &mut Ctx) -> Result<(), String> {
    let n = cx.n.min(4);
    let a = random_integer_matrix(&mut cx.rng, n, 10);
    let p = random_symmetric(&mut cx.rng, n, 1, 3, 2, false);
    let exact = cx.det(&p, &one_generator(n, a.clone())?)?;
    let float: f64 = eval_det(&p, &MatrixFamily::new(vec![a.map(Scalar::to_f64)]).map_err(e)?).map_err(e)?;
    let err = relative_error(float, exact.to_f64());
    if err <= 1e-9 {
        Ok(())
    } else {
        Err(format!("float {float} vs exact {exact}: relative error {err:e}"))
    }
}

const PROPERTIES: [(&str, Trial); 11] = [
    ("trace anchor", trace_anchor),
    ("determinant anchor", det_anchor),
    ("power-sum anchor", power_sum_anchor),
    ("eigenvalue side vs oracle", eigen_vs_oracle),
    ("determinant side vs oracle", det_vs_oracle),
    ("basis invariance", basis_invariance),
    ("linearity", linearity),
    ("scaling law", scaling_law),
    ("negative powers", negative_power),
    ("symbolic vs numeric", symbolic_consistency),
    ("float vs exact", float_agreement),
];

/// Run every property for `trials` trials, cycling `n` through `1..=max_n`.
pub fn run(cfg: &VerifyConfig) -> Vec<PropertyReport> {
    let max_n = cfg.max_n.max(1);
    PROPERTIES
        .iter()
        .enumerate()
        .map(|(index, &(name, trial))| {
            let seed = cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64);
            let mut cx = Ctx { rng: ChaCha8Rng::seed_from_u64(seed), n: 1, trial: 0, corrupt: cfg.corrupt };
            let mut report = PropertyReport { name, passed: 0, failed: 0, first_failure: None };
            for t in 0..cfg.trials {
                cx.trial = t;
                cx.n = 1 + t % max_n;
                match trial(&mut cx) {
                    Ok(()) => report.passed += 1,
                    Err(msg) => {
                        report.failed += 1;
                        report.first_failure.get_or_insert(format!("n = {}, trial {t}: {msg}", cx.n));
                    }
                }
            }
            report
        })
        .collect()
}

pub fn failures(reports: &[PropertyReport]) -> usize {
    reports.iter().filter(|r| r.failed > 0).count()
}

pub fn render(cfg: &VerifyConfig, reports: &[PropertyReport]) -> String {
    let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    writeln!(out, "seed {}, n <= {}, {} trials per property", cfg.seed, cfg.max_n, cfg.trials).unwrap();
    for r in reports {
        let status = if r.failed == 0 { "ok" } else { "FAIL" };
        writeln!(out, "{:<width$}  {:>5} passed  {:>5} failed  {status}", r.name, r.passed, r.failed).unwrap();
        if let Some(msg) = &r.first_failure {
            writeln!(out, "{:<width$}  first failure: {msg}", "").unwrap();
        }
    }
    let passed: usize = reports.iter().map(|r| r.passed).sum();
    let failed: usize = reports.iter().map(|r| r.failed).sum();
    writeln!(out, "total: {passed} passed, {failed} failed").unwrap();
    out
}
