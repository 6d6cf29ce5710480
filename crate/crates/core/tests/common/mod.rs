//! Shared fixture table for the golden and acceptance suites.

#![allow(dead_code)]

use std::path::{Path, PathBuf};

/// Golden name, subcommand, fixture stem and extra flags.
pub const CASES: &[(&str, &str, &str, &[&str])] = &[
    ("validate_terminal", "validate", "validate_terminal", &[]),
    ("validate_non_associative", "validate", "validate_non_associative", &[]),
    ("validate_non_functorial", "validate", "validate_non_functorial", &[]),
    ("conj_terminal", "conj", "conj_terminal", &[]),
    ("conj_bz3_inversion", "conj", "conj_bz3_inversion", &[]),
    ("conj_folded_pair", "conj", "conj_folded_pair", &[]),
    ("conj_folded_pair_y", "conj", "conj_folded_pair", &["--object", "(y,*)"]),
    ("conj_collapsing", "conj", "conj_collapsing", &[]),
    ("conj_collapsing_brute", "conj", "conj_collapsing", &["--method", "brute"]),
    ("descent_identity", "descent-check", "descent_identity", &[]),
    ("descent_lattice_product", "descent-check", "descent_lattice_product", &[]),
    ("descent_broken_cone", "descent-check", "descent_broken_cone", &[]),
    ("h1_z2_z2_trivial", "h1", "h1_z2_z2_trivial", &["--bridge"]),
    ("h1_z2_z3_inversion", "h1", "h1_z2_z3_inversion", &["--bridge"]),
    ("h1_z3_s3_trivial", "h1", "h1_z3_s3_trivial", &["--bridge"]),
    ("dcoset_s3_a3_transposition", "dcoset", "dcoset_s3_a3_transposition", &["--bridge"]),
    ("dcoset_z2_trivial", "dcoset", "dcoset_z2_trivial", &["--bridge"]),
    ("dcoset_full_subgroup", "dcoset", "dcoset_full_subgroup", &["--bridge"]),
    ("cech_circle_z2", "cech", "cech_circle_z2", &["--bridge"]),
    ("cech_circle_s3", "cech", "cech_circle_s3", &["--bridge"]),
    ("cech_circle_trivial", "cech", "cech_circle_trivial", &["--bridge"]),
    ("lim1_constant", "lim1", "lim1_constant", &["--bridge"]),
    ("lim1_z4_z2_z2", "lim1", "lim1_z4_z2_z2", &["--bridge"]),
    ("colim_discrete_pairs", "colim", "colim_discrete_pairs", &[]),
    ("colim_square_split", "colim", "colim_square_split", &[]),
    ("colim_single_piece", "colim", "colim_single_piece", &[]),
    ("lax_constant_arrow", "lax", "lax_constant_arrow", &[]),
    ("lax_terminal_index", "lax", "lax_terminal_index", &[]),
    ("groth_arrow_bz2", "groth", "groth_arrow_bz2", &[]),
    ("groth_bz3_inversion", "groth", "groth_bz3_inversion", &[]),
];

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Runs the command line in process; returns exit code, stdout and stderr.
pub fn run_cli(args: &[String]) -> (i32, Vec<u8>, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("descent".to_string()).chain(args.iter().cloned());
    let code = adjoint_descent::cli::run(argv, &mut out, &mut err);
    (code, out, err)
}

/// Arguments for one case, with or without `--json`.
pub fn case_args(command: &str, fixture: &str, extra: &[&str], json: bool) -> Vec<String> {
    let path = fixtures().join(format!("{fixture}.json"));
    let mut args = Vec::new();
    if json {
        args.push("--json".to_string());
    }
    args.push(command.to_string());
    args.push(path.display().to_string());
    args.extend(extra.iter().map(|s| s.to_string()));
    args
}

/// Golden outputs that differ from two fresh runs, or whose two runs
/// differ from each other. With `UPDATE_GOLDEN` set, rewrites them.
pub fn golden_mismatches() -> Vec<String> {
    let dir = fixtures().join("golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut bad = Vec::new();
    for &(name, command, fixture, extra) in CASES {
        for (json, ext) in [(true, "json"), (false, "txt")] {
            let args = case_args(command, fixture, extra, json);
            let (c1, first, _) = run_cli(&args);
            let (c2, second, _) = run_cli(&args);
            let mut bytes = format!("exit {c1}\n").into_bytes();
            bytes.extend_from_slice(&first);
            let path = dir.join(format!("{name}.{ext}"));
            if update {
                std::fs::write(&path, &bytes).expect("golden directory is writable");
            }
            if c1 != c2 || first != second {
                bad.push(format!("{name}.{ext}: two runs differ"));
            } else if std::fs::read(&path).ok().as_deref() != Some(bytes.as_slice()) {
                bad.push(format!("{name}.{ext}: differs from golden"));
            }
        }
    }
    bad
}
