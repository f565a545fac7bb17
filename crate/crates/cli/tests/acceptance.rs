//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the test output.

mod common;

use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symdet::fixtures::{
    make_fixture, oracle_eval, random_fixture_spec, random_integer_matrix, random_invertible,
    random_invertible_rational, random_rational_matrix, random_symmetric, FixtureSpec, LaurentPolynomial,
    SpectrumKind,
};
use symdet::scalar::relative_error;
use symdet::{
    det_columns, eval_det, eval_on_roots, eval_symbolic, leibniz_det, scaling_check, EigenvalueTable,
    ExponentVector, MatrixFamily, MonicPolynomial, Naming, Rational, Scalar, SymmetricCoefficients,
};

type Outcome = Result<String, String>;

/// Name, check and optional time limit.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn ev(xs: &[i64]) -> ExponentVector {
    ExponentVector::new(xs.to_vec())
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: symdet::Error) -> String {
    e.to_string()
}

fn invertible_table(t: &EigenvalueTable<Rational>) -> bool {
    t.rows().iter().flatten().all(|v| !v.is_zero())
}

/// A fixture of the given kind whose eigenvalue table has no zero entry.
fn invertible_fixture(rng: &mut ChaCha8Rng, n: usize, m: usize, kind: SpectrumKind) -> FixtureSpec {
    loop {
        let spec = random_fixture_spec(rng, n, m, kind);
        if invertible_table(&spec.eigenvalue_table().unwrap()) {
            return spec;
        }
    }
}

fn anchors() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..200 {
        let n = 1 + i % 6;
        let a = random_integer_matrix(&mut rng, n, 9);
        let fam = MatrixFamily::new(vec![a.clone()]).map_err(err)?;
        let e1 = eval_det(&SymmetricCoefficients::elementary(1, n).map_err(err)?, &fam).map_err(err)?;
        let en = eval_det(&SymmetricCoefficients::elementary(n, n).map_err(err)?, &fam).map_err(err)?;
        check(e1 == a.trace(), || format!("e1 != trace for\n{a}"))?;
        check(en == leibniz_det(&a).map_err(err)?, || format!("e_n != leibniz_det for\n{a}"))?;
    }
    Ok("200 integer matrices, n in 1..=6".into())
}

fn theorem_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut kinds = [0usize; 4];
    for i in 0..100 {
        let n = 1 + i % 5;
        let m = 1 + (i / 5) % 3;
        let kind = SpectrumKind::ALL[i % 4];
        kinds[i % 4] += 1;
        let spec = random_fixture_spec(&mut rng, n, m, kind);
        let (fam, table) = make_fixture(&spec).map_err(err)?;
        let p = random_symmetric(&mut rng, n, m, 5, 4, invertible_table(&table));
        let det = eval_det(&p, &fam).map_err(err)?;
        let oracle = oracle_eval(&p, &table).map_err(err)?;
        check(det == oracle, || format!("fixture {i} ({kind:?}, n = {n}, m = {m}): {det} != {oracle}"))?;
    }
    Ok(format!(
        "100 fixtures (distinct {}, repeated {}, singular {}, defective {}), n <= 5, m <= 3",
        kinds[0], kinds[1], kinds[2], kinds[3]
    ))
}

fn basis_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut non_commuting = 0;
    for i in 0..100 {
        let n = 1 + i % 5;
        let m = 1 + i % 3;
        let (fam, invertible) = match i % 3 {
            0 => {
                let (fam, table) = make_fixture(&random_fixture_spec(&mut rng, n, m, SpectrumKind::ALL[i % 4]))
                    .map_err(err)?;
                (fam, invertible_table(&table))
            }
            1 => (MatrixFamily::new((0..m).map(|_| random_integer_matrix(&mut rng, n, 4)).collect()).map_err(err)?, false),
            _ => (MatrixFamily::new((0..m).map(|_| random_invertible_rational(&mut rng, n)).collect()).map_err(err)?, true),
        };
        if !fam.is_commuting() {
            non_commuting += 1;
        }
        let p = random_symmetric(&mut rng, n, m, 4, 3, invertible);
        let s = random_invertible(n, rng.gen());
        check(s.det() == q(1) || s.det() == q(-1), || "conjugator is not unimodular".into())?;
        let before = eval_det(&p, &fam).map_err(err)?;
        let after = eval_det(&p, &fam.conjugate(&s).map_err(err)?).map_err(err)?;
        check(before == after, || format!("trial {i}: {before} became {after}"))?;
    }
    Ok(format!("100 trials, {non_commuting} with non-commuting generators"))
}

fn abstract_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let m21 = SymmetricCoefficients::monomial_univariate(&[2, 1]).map_err(err)?;
    let neg = SymmetricCoefficients::monomial_univariate(&[1, -1]).map_err(err)?;
    let multi = SymmetricCoefficients::monomial(vec![ev(&[1, 1]), ev(&[2, 0])]).map_err(err)?;
    for i in 0..20 {
        let kind = SpectrumKind::ALL[i % 4];

        // a1 a2^2 + a1^2 a2 = det(A_1, A^2_2) + det(A^2_1, A_2)
        let (fam, t) = make_fixture(&random_fixture_spec(&mut rng, 2, 1, kind)).map_err(err)?;
        let a = &fam.generators()[0];
        let a2 = a.pow(2).map_err(err)?;
        let literal = det_columns(&[a.column(0), a2.column(1)]).map_err(err)?
            + det_columns(&[a2.column(0), a.column(1)]).map_err(err)?;
        let (x, y) = (t.get(0, 0), t.get(1, 0));
        let eigen = x * y * y + x * x * y;
        let value = eval_det(&m21, &fam).map_err(err)?;
        check(value == literal && value == eigen, || format!("m_(2,1), fixture {i}: {value}, {literal}, {eigen}"))?;

        // a1/a2 + a2/a1 = det(A_1, (A^-1)_2) + det((A^-1)_1, A_2)
        let kind = [SpectrumKind::Distinct, SpectrumKind::Repeated, SpectrumKind::Defective][i % 3];
        let (fam, t) = make_fixture(&invertible_fixture(&mut rng, 2, 1, kind)).map_err(err)?;
        let a = &fam.generators()[0];
        let inv = a.inverse().map_err(err)?;
        let literal = det_columns(&[a.column(0), inv.column(1)]).map_err(err)?
            + det_columns(&[inv.column(0), a.column(1)]).map_err(err)?;
        let (x, y) = (t.get(0, 0), t.get(1, 0));
        let eigen = x / y + y / x;
        let value = eval_det(&neg, &fam).map_err(err)?;
        check(value == literal && value == eigen, || format!("m_(1,-1), fixture {i}: {value}, {literal}, {eigen}"))?;

        // a1 b1 a2^2 + a1^2 a2 b2 = det(AB_1, A^2_2) + det(A^2_1, AB_2)
        let (fam, t) = make_fixture(&random_fixture_spec(&mut rng, 2, 2, SpectrumKind::ALL[i % 4])).map_err(err)?;
        let (a, b) = (&fam.generators()[0], &fam.generators()[1]);
        let ab = a.mul(b).map_err(err)?;
        let a2 = a.pow(2).map_err(err)?;
        let literal = det_columns(&[ab.column(0), a2.column(1)]).map_err(err)?
            + det_columns(&[a2.column(0), ab.column(1)]).map_err(err)?;
        let (a1, b1, a2e, b2) = (t.get(0, 0), t.get(0, 1), t.get(1, 0), t.get(1, 1));
        let eigen = a1 * b1 * a2e * a2e + a1 * a1 * a2e * b2;
        let value = eval_det(&multi, &fam).map_err(err)?;
        check(value == literal && value == eigen, || format!("multivariate, fixture {i}: {value}, {literal}, {eigen}"))?;
    }
    Ok("m_(2,1), negative-power and multivariate identities on 20 fixtures each".into())
}

fn three_term_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (ea, eb) = (ev(&[1, 0]), ev(&[0, 1]));
    let p = SymmetricCoefficients::monomial(vec![ea.clone(), ea, eb]).map_err(err)?;
    check(p.full_support_size() == 3, || "p_AAB should cover exactly three tuples".into())?;
    for i in 0..20 {
        let (fam, t) = make_fixture(&random_fixture_spec(&mut rng, 3, 2, SpectrumKind::ALL[i % 4])).map_err(err)?;
        check(fam.is_commuting(), || "fixture pair does not commute".into())?;
        let (a, b) = (&fam.generators()[0], &fam.generators()[1]);
        let literal = det_columns(&[a.column(0), a.column(1), b.column(2)]).map_err(err)?
            + det_columns(&[a.column(0), b.column(1), a.column(2)]).map_err(err)?
            + det_columns(&[b.column(0), a.column(1), a.column(2)]).map_err(err)?;
        let (av, bv) = (|k| t.get(k, 0).clone(), |k| t.get(k, 1).clone());
        let eigen = av(0) * av(1) * bv(2) + av(0) * bv(1) * av(2) + bv(0) * av(1) * av(2);
        let value = eval_det(&p, &fam).map_err(err)?;
        check(value == literal && value == eigen, || format!("pair {i}: {value}, {literal}, {eigen}"))?;
    }
    Ok("20 commuting 3x3 fixture pairs".into())
}

fn scaling_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..50 {
        let n = 1 + i % 4;
        let m = 1 + i % 2;
        let (fam, invertible) = if i % 2 == 0 {
            let (fam, table) = make_fixture(&random_fixture_spec(&mut rng, n, m, SpectrumKind::ALL[i % 4])).map_err(err)?;
            (fam, invertible_table(&table))
        } else {
            (MatrixFamily::new((0..m).map(|_| random_invertible_rational(&mut rng, n)).collect()).map_err(err)?, true)
        };
        let p = random_symmetric(&mut rng, n, m, 3, 3, invertible);
        let x = random_rational_matrix(&mut rng, n);
        let y = random_rational_matrix(&mut rng, n);
        let (before, after) = scaling_check(&p, &fam, &x, &y).map_err(err)?;
        let expected = x.det() * y.det() * before;
        check(after == expected, || format!("pair {i}: {after} != {expected}"))?;
    }
    Ok("50 random (X, Y), n <= 4".into())
}

fn vieta() -> Outcome {
    let m21 = SymmetricCoefficients::monomial_univariate(&[2, 1]).map_err(err)?;
    let text = eval_symbolic(&m21, 2, Naming::Companion).map_err(err)?.to_string();
    check(text == "-c0*c1", || format!("expansion printed {text:?}"))?;
    let poly = MonicPolynomial::from_coefficients(&[q(6), q(-5), q(1)]).map_err(err)?;
    let e1 = eval_on_roots(&SymmetricCoefficients::elementary(1, 2).map_err(err)?, &poly).map_err(err)?;
    let e2 = eval_on_roots(&SymmetricCoefficients::elementary(2, 2).map_err(err)?, &poly).map_err(err)?;
    let p2 = eval_on_roots(&SymmetricCoefficients::power_sum(2, 2).map_err(err)?, &poly).map_err(err)?;
    check((e1.clone(), e2.clone(), p2.clone()) == (q(5), q(6), q(13)), || format!("got {e1}, {e2}, {p2}"))?;
    Ok(format!("\"{text}\"; e1, e2, p2 on x^2 - 5x + 6 = {e1}, {e2}, {p2}"))
}

fn symbolic_numeric() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut comparisons = 0;
    for n in 1..=3 {
        for _ in 0..10 {
            let p = random_symmetric(&mut rng, n, 1, 3, 3, false);
            let poly = eval_symbolic(&p, n, Naming::Entries).map_err(err)?;
            for _ in 0..20 {
                let a = random_rational_matrix(&mut rng, n);
                let symbolic = poly.evaluate_matrix(&a).map_err(err)?;
                let numeric = eval_det(&p, &MatrixFamily::new(vec![a]).map_err(err)?).map_err(err)?;
                check(symbolic == numeric, || format!("n = {n}: {symbolic} != {numeric}"))?;
                comparisons += 1;
            }
        }
    }
    Ok(format!("{comparisons} comparisons, n in 1..=3, 10 polynomials x 20 matrices each"))
}

/// A commuting fixture pair whose members are integer matrices with entries in `-10..=10`.
fn small_entry_fixture(rng: &mut ChaCha8Rng, n: usize) -> (MatrixFamily<Rational>, FixtureSpec) {
    loop {
        let mut pool: Vec<i64> = (1..=5).flat_map(|v| [v, -v]).collect();
        rand::seq::SliceRandom::shuffle(&mut pool[..], rng);
        let spec = FixtureSpec {
            n,
            diag: pool[..n].iter().map(|&v| q(v)).collect(),
            strict_upper: Some((0..n * (n - 1) / 2).map(|_| q(rng.gen_range(-2..=2))).collect()),
            generator_polys: vec![LaurentPolynomial::power(1)],
            conjugator_seed: rng.gen(),
        };
        let (fam, _) = make_fixture(&spec).unwrap();
        let small = fam.generators()[0].entries().iter().all(|v| v.is_integer() && v.abs() <= q(10));
        if small {
            return (fam, spec);
        }
    }
}

fn float_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for i in 0..60 {
        let n = 1 + i % 4;
        let (fam, _) = small_entry_fixture(&mut rng, n);
        let p = random_symmetric(&mut rng, n, 1, 3, 3, true);
        let exact = eval_det(&p, &fam).map_err(err)?;
        let float_fam = MatrixFamily::new(vec![fam.generators()[0].map(Scalar::to_f64)]).map_err(err)?;
        let float: f64 = eval_det(&p, &float_fam).map_err(err)?;
        let rel = relative_error(float, exact.to_f64());
        worst = worst.max(rel);
        check(rel <= 1e-9, || format!("fixture {i}: float {float} vs exact {exact}, relative error {rel:e}"))?;
    }
    Ok(format!("60 fixtures, entries in -10..=10, n <= 4, worst relative error {worst:.1e}"))
}

fn cli() -> Outcome {
    let failures = common::check_cases(false);
    check(failures.is_empty(), || failures.join("; "))?;
    let (code, stdout, _) = common::run("verify");
    check(code == 0, || format!("verify exited {code}:\n{stdout}"))?;
    Ok(format!("{} golden cases; verify exits 0 ({})", common::CASES.len(), stdout.lines().last().unwrap_or("")))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("trace and determinant anchors", anchors, Some(Duration::from_secs(10))),
        ("determinant side equals eigenvalue oracle", theorem_agreement, Some(Duration::from_secs(60))),
        ("basis invariance", basis_invariance, Some(Duration::from_secs(30))),
        ("identities from the abstract", abstract_identities, None),
        ("three-term 3x3 identity", three_term_identity, None),
        ("scaling law", scaling_law, None),
        ("companion expansion and Vieta values", vieta, None),
        ("symbolic and numeric evaluation agree", symbolic_numeric, None),
        ("float mode within 1e-9 of exact", float_agreement, None),
        ("CLI golden files and verify", cli, None),
    ];
    let mut failed = 0;
    for (index, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > *limit => {
                Err(format!("took {:.2}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs()))
            }
            (o, _) => o,
        };
        let limit_note = limit.map(|l| format!(", limit {}s", l.as_secs())).unwrap_or_default();
        match outcome {
            Ok(detail) => {
                println!("PASS  {:>2}  {name}: {detail} [{:.2}s{limit_note}]", index + 1, elapsed.as_secs_f64())
            }
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}  {name}: {why} [{:.2}s{limit_note}]", index + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
