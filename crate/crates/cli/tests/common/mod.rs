#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

/// (case name, arguments with `@` standing for the golden directory, exit code)
pub const CASES: &[(&str, &str, i32)] = &[
    ("eval_e2", "eval @/e2_2x2.json", 0),
    ("eval_e1", "eval @/e1_2x2.json --mode det", 0),
    ("eval_zero", "eval @/zero_terms.json", 0),
    ("eval_m21_det", "eval @/m21_eigen.json", 0),
    ("eval_m21_eigen", "eval @/m21_eigen.json --mode eigen", 0),
    ("eval_m21_both", "eval @/m21_eigen.json --mode both", 0),
    ("eval_rational_entries", "eval @/rational_entries.json", 0),
    ("eval_two_generators_both", "eval @/two_generators.json --mode both", 0),
    ("eval_fixture_both", "eval @/fixture.json --mode both", 0),
    ("eval_float_det", "eval @/float_det.json", 0),
    ("eval_float_both", "eval @/float_both.json --mode both", 0),
    ("eval_non_commuting_det", "eval @/non_commuting.json", 0),
    ("expand_e2_entries", "expand @/e2_2x2.json --target entries", 0),
    ("expand_e3_entries", "expand @/e3_entries.json", 0),
    ("expand_m21_companion", "expand @/m21_companion.json --target companion", 0),
    ("expand_m21_entries", "expand @/m21_companion.json", 0),
    ("expand_p2_entries", "expand @/p2_3x3.json", 0),
    ("expand_p2_companion", "expand @/p2_3x3.json --target companion", 0),
    ("expand_constant", "expand @/constant_one.json", 0),
    ("expand_zero", "expand @/zero_terms.json", 0),
    ("err_bad_json", "eval @/bad_json.json", 1),
    ("err_bad_rational", "eval @/bad_rational.json", 1),
    ("err_missing_file", "eval @/does_not_exist.json", 1),
    ("err_no_table", "eval @/e1_2x2.json --mode eigen", 1),
    ("err_no_generators", "eval @/constant_one.json", 1),
    ("err_bad_mode", "eval @/e1_2x2.json --mode trace", 1),
    ("err_not_square", "eval @/not_square.json", 2),
    ("err_exponent_length", "eval @/exponent_length.json", 2),
    ("err_table_shape", "eval @/bad_eigen_table.json --mode eigen", 2),
    ("err_expand_two_generators", "expand @/two_generators.json", 2),
    ("err_singular", "eval @/singular_inverse.json", 3),
    ("err_singular_both", "eval @/singular_inverse.json --mode both", 3),
    ("err_non_commuting_eigen", "eval @/non_commuting.json --mode eigen", 4),
    ("err_non_commuting_both", "eval @/non_commuting.json --mode both", 4),
    ("err_negative_expand", "expand @/negative_expand.json", 5),
    ("err_negative_expand_companion", "expand @/rational_entries.json --target companion", 5),
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn run(args: &str) -> (i32, String, String) {
    let dir = golden_dir();
    let args: Vec<String> = args.split(' ').map(|a| a.replace('@', dir.to_str().unwrap())).collect();
    let out = Command::new(env!("CARGO_BIN_EXE_symdet")).args(&args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Compare every case against its golden output; with `bless` set, rewrite the
/// `.out` files instead. Returns one message per mismatch.
pub fn check_cases(bless: bool) -> Vec<String> {
    let mut failures = Vec::new();
    for &(name, args, code) in CASES {
        let (got_code, stdout, stderr) = run(args);
        if got_code != code {
            failures.push(format!("{name}: exit {got_code}, expected {code}; stderr: {stderr}"));
            continue;
        }
        if code != 0 {
            if !stdout.is_empty() {
                failures.push(format!("{name}: error path printed to stdout: {stdout:?}"));
            }
            let lines: Vec<&str> = stderr.lines().filter(|l| !l.trim().is_empty()).collect();
            let one_line = lines.len() == 1 && lines[0].starts_with("error");
            // clap's own usage errors carry a usage hint after the message
            if !one_line && !name.starts_with("err_bad_mode") {
                failures.push(format!("{name}: expected one diagnostic line, got {stderr:?}"));
            }
            continue;
        }
        let path = golden_dir().join(format!("{name}.out"));
        if bless {
            std::fs::write(&path, &stdout).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(expected) if expected == stdout => {}
            Ok(expected) => failures.push(format!("{name}: stdout {stdout:?}, golden {expected:?}")),
            Err(e) => failures.push(format!("{name}: cannot read {}: {e}", path.display())),
        }
    }
    failures
}

