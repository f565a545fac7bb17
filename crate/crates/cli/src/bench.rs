//! The `bench` timing table.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use symdet::fixtures::{make_fixture, FixtureSpec, LaurentPolynomial};
use symdet::scalar::relative_error;
use symdet::{
    eval_det_with_stats, eval_eigen, ExponentVector, MatrixFamily, Rational, Scalar, SymmetricCoefficients,
};

use crate::error::Result;

const REPEATS: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub polynomial: String,
    pub orbits: usize,
    pub determinants: u64,
    pub exact: Duration,
    pub float: Duration,
    pub eigen: Duration,
    pub column_hit_rate: f64,
    pub member_hit_rate: f64,
    pub float_rel_error: f64,
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Fixture with spectrum `1..=n`, all-ones strict upper part and the single
/// generator `T` itself.
pub fn bench_fixture(n: usize) -> FixtureSpec {
    FixtureSpec {
        n,
        diag: (1..=n as i64).map(int).collect(),
        strict_upper: Some(vec![int(1); n * n.saturating_sub(1) / 2]),
        generator_polys: vec![LaurentPolynomial::power(1)],
        conjugator_seed: 1,
    }
}

/// Benchmark polynomials for size `n`: `e1`, `e_n`, `p_2`, the staircase
/// monomial `m_(n-1,…,1,0)` whose orbit has `n!` tuples, and their sum.
pub fn bench_polynomials(n: usize) -> Result<Vec<(String, SymmetricCoefficients)>> {
    let staircase: Vec<i64> = (0..n as i64).rev().collect();
    let label = staircase.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let staircase = SymmetricCoefficients::from_terms(
        n,
        1,
        [(staircase.iter().map(|&e| ExponentVector::new(vec![e])).collect(), int(1))],
    )?;
    let mut polys = vec![("e1".to_string(), SymmetricCoefficients::elementary(1, n)?)];
    if n > 1 {
        polys.push((format!("e{n}"), SymmetricCoefficients::elementary(n, n)?));
    }
    polys.push(("p2".to_string(), SymmetricCoefficients::power_sum(2, n)?));
    polys.push((format!("m({label})"), staircase));
    let mut sum = SymmetricCoefficients::zero(n, 1);
    for (_, p) in &polys {
        sum = sum.add(p)?;
    }
    polys.push(("sum of above".to_string(), sum));
    Ok(polys)
}

fn best_of<T>(mut f: impl FnMut() -> Result<T>) -> Result<(T, Duration)> {
    let mut best = Duration::MAX;
    let mut value = None;
    for _ in 0..REPEATS {
        let start = Instant::now();
        let v = f()?;
        best = best.min(start.elapsed());
        value = Some(v);
    }
    Ok((value.expect("at least one repeat"), best))
}

/// Measure one polynomial on a fixture family; every repeat starts from empty caches.
pub fn measure(
    n: usize,
    name: &str,
    p: &SymmetricCoefficients,
    fam: &MatrixFamily<Rational>,
    table: &symdet::EigenvalueTable<Rational>,
) -> Result<BenchRow> {
    let float_gens: Vec<_> = fam.generators().iter().map(|g| g.map(Scalar::to_f64)).collect();
    let ((exact_value, stats, member_hit_rate), exact) = best_of(|| {
        let fresh = fam.clone();
        let (v, stats) = eval_det_with_stats(p, &fresh)?;
        Ok((v, stats, fresh.cache_stats().hit_rate()))
    })?;
    let (float_value, float) = best_of(|| {
        let fresh = MatrixFamily::new(float_gens.clone())?;
        Ok(eval_det_with_stats::<f64, _>(p, &fresh)?.0)
    })?;
    let (_, eigen) = best_of(|| Ok(eval_eigen(p, table)?))?;
    let lookups = stats.column_hits + stats.column_misses;
    Ok(BenchRow {
        n,
        polynomial: name.to_string(),
        orbits: p.support_len(),
        determinants: stats.determinants,
        exact,
        float,
        eigen,
        column_hit_rate: if lookups == 0 { 0.0 } else { stats.column_hits as f64 / lookups as f64 },
        member_hit_rate,
        float_rel_error: relative_error(float_value, exact_value.to_f64()),
    })
}

pub fn run(max_n: usize) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for n in 1..=max_n.max(1) {
        let (fam, table) = make_fixture(&bench_fixture(n))?;
        for (name, p) in bench_polynomials(n)? {
            rows.push(measure(n, &name, &p, &fam, &table)?);
        }
    }
    Ok(rows)
}

fn micros(d: Duration) -> String {
    format!("{:.1}", d.as_secs_f64() * 1e6)
}

fn cells(r: &BenchRow) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.polynomial.clone(),
        r.orbits.to_string(),
        r.determinants.to_string(),
        micros(r.exact),
        micros(r.float),
        micros(r.eigen),
        format!("{:.3}", r.column_hit_rate),
        format!("{:.3}", r.member_hit_rate),
        format!("{:.1e}", r.float_rel_error),
    ]
}

const HEADER: [&str; 10] =
    ["n", "polynomial", "orbits", "dets", "exact_us", "float_us", "eigen_us", "col_hit", "member_hit", "float_err"];

/// Aligned text table; the polynomial column is left-aligned, numbers right-aligned.
pub fn render_table(rows: &[BenchRow]) -> String {
    let body: Vec<Vec<String>> = rows.iter().map(cells).collect();
    let widths: Vec<usize> = (0..HEADER.len())
        .map(|c| body.iter().map(|r| r[c].len()).chain([HEADER[c].len()]).max().unwrap_or(0))
        .collect();
    let line = |cols: Vec<&str>| {
        let parts: Vec<String> = cols
            .iter()
            .enumerate()
            .map(|(c, s)| if c == 1 { format!("{s:<w$}", w = widths[c]) } else { format!("{s:>w$}", w = widths[c]) })
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = String::new();
    writeln!(out, "{}", line(HEADER.to_vec())).unwrap();
    for r in &body {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect())).unwrap();
    }
    out
}

pub fn render_csv(rows: &[BenchRow]) -> String {
    let mut out = HEADER.join(",");
    out.push('\n');
    for r in rows {
        let mut c = cells(r);
        c[1] = format!("\"{}\"", c[1]);
        out.push_str(&c.join(","));
        out.push('\n');
    }
    out
}
