use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symdet::fixtures::{random_fixture_spec, random_symmetric, SpectrumKind};
use symdet::ExponentVector;
use symdet_cli::commands::{eval, EvalMode};
use symdet_cli::problem::{fixture_problem, FieldMode, NamedMatrix, Number, PolySpec, Problem, SCHEMA_VERSION};

fn random_problem(seed: u64) -> Problem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=4);
    let m = rng.gen_range(1..=2);
    let field = if rng.gen_bool(0.5) { FieldMode::Rational } else { FieldMode::Float64 };
    let number = |rng: &mut ChaCha8Rng| match field {
        FieldMode::Rational => {
            Number::Exact(symdet::Rational::new(rng.gen_range(-9..=9i64).into(), rng.gen_range(1..=5i64).into()))
        }
        FieldMode::Float64 => Number::Float(rng.gen_range(-1e3..1e3)),
    };
    let generators = (0..m)
        .map(|j| NamedMatrix {
            name: format!("G{j}"),
            rows: (0..n).map(|_| (0..n).map(|_| number(&mut rng)).collect()).collect(),
        })
        .collect();
    let polynomial = match rng.gen_range(0..4) {
        0 => PolySpec::Elementary(rng.gen_range(0..=n)),
        1 => PolySpec::PowerSum(rng.gen_range(-3..=3)),
        2 => PolySpec::Monomial((0..n).map(|_| ExponentVector::new((0..m).map(|_| rng.gen_range(-2..=3)).collect())).collect()),
        _ => PolySpec::Terms(random_symmetric(&mut rng, n, m, 3, 3, true).terms().map(|(t, c)| (t.to_vec(), c.clone())).collect()),
    };
    let eigenvalues = rng.gen_bool(0.5).then(|| (0..n).map(|_| (0..m).map(|_| number(&mut rng)).collect()).collect());
    Problem { version: SCHEMA_VERSION, field, n, generators, fixture: None, polynomial, eigenvalues }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parse_serialize_parse_is_identity(seed in any::<u64>()) {
        let p = random_problem(seed);
        let once = Problem::from_json(&p.to_json()).unwrap();
        prop_assert_eq!(&once, &p);
        prop_assert_eq!(Problem::from_json(&once.to_json()).unwrap(), once);
    }

    #[test]
    fn fixture_files_round_trip_and_match(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=3);
        let kind = SpectrumKind::ALL[rng.gen_range(0..4)];
        let spec = random_fixture_spec(&mut rng, n, m, kind);
        let table = spec.eigenvalue_table().unwrap();
        let invertible = table.rows().iter().flatten().all(|v| *v != symdet::Rational::from_integer(0.into()));
        let p = random_symmetric(&mut rng, n, m, 5, 4, invertible);
        let problem = fixture_problem(&spec, PolySpec::Terms(p.terms().map(|(t, c)| (t.to_vec(), c.clone())).collect()));
        let reparsed = Problem::from_json(&problem.to_json()).unwrap();
        prop_assert_eq!(&reparsed, &problem);
        let out = eval(&reparsed, EvalMode::Both).unwrap();
        prop_assert!(out.stdout.ends_with("MATCH\n") && !out.stdout.contains("MISMATCH"), "{}", out.stdout);
    }
}
