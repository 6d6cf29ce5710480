use std::process::Command;

mod common;

fn descent() -> Command {
    Command::new(env!("CARGO_BIN_EXE_descent"))
}

fn fixture(name: &str) -> String {
    common::fixtures().join(format!("{name}.json")).display().to_string()
}

#[test]
fn binary_exit_codes() {
    let ok = descent().args(["h1", &fixture("h1_z2_z2_trivial"), "--bridge"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "H¹: 2 classes\ndescent data: 2 classes (agree)\n");

    let invalid = descent().args(["validate", &fixture("validate_non_associative")]).output().unwrap();
    assert_eq!(invalid.status.code(), Some(1));

    let missing = descent().args(["lax", "no/such/file.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8(missing.stderr).unwrap().starts_with("error: no/such/file.json"));
}

#[test]
fn size_guard_from_environment() {
    let out = descent()
        .env("DESCENT_MAX_CANDIDATES", "3")
        .args(["--json", "h1", &fixture("h1_z3_s3_trivial")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["ok"], false);
    assert!(report["error"].as_str().unwrap().contains("size guard"));

    // the flag wins over the environment
    let out = descent()
        .env("DESCENT_MAX_CANDIDATES", "3")
        .args(["h1", &fixture("h1_z3_s3_trivial"), "--max-candidates", "1000"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn timing_goes_to_stderr_only() {
    let args = ["--json", "--timing", "groth", &fixture("groth_arrow_bz2")];
    let a = descent().args(args).output().unwrap();
    let b = descent().args(args).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stderr).unwrap().starts_with("elapsed: "));
}

#[test]
fn parse_errors_carry_a_location() {
    let dir = std::env::temp_dir().join(format!("descent-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{\n  \"gamma\": {\"cyclic\": 2},\n  \"target\": \n}\n").unwrap();
    let (code, _, err) = common::run_cli(&["h1".into(), path.display().to_string()]);
    assert_eq!(code, 2);
    assert!(String::from_utf8(err).unwrap().contains("line 4"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn unknown_object_is_an_error() {
    let args = common::case_args("conj", "conj_terminal", &["--object", "{7}"], true);
    let (code, out, _) = common::run_cli(&args);
    assert_eq!(code, 2);
    let report: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert!(report["error"].as_str().unwrap().contains("{7}"));
}

#[test]
fn conj_methods() {
    let run = |method: &str| {
        let args = common::case_args("conj", "conj_folded_pair", &["--method", method], true);
        let (code, out, _) = common::run_cli(&args);
        assert_eq!(code, 0);
        serde_json::from_slice::<serde_json::Value>(&out).unwrap()["result"].clone()
    };
    let brute = run("brute");
    assert_eq!(brute["brute"]["count"], 2);
    assert!(brute.get("formula").is_none());
    let formula = run("formula");
    assert_eq!(formula["formula"]["count"], 2);
    assert_eq!(formula["formula"]["hypothesis_verified"], true);
    assert!(formula.get("agree").is_none());
    assert_eq!(run("both")["agree"], true);
}

#[test]
fn collapsing_cone_warns_instead_of_failing() {
    let args = common::case_args("conj", "conj_collapsing", &[], true);
    let (code, out, _) = common::run_cli(&args);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(report["warnings"][0], "formula hypothesis unverified");
    assert_eq!(report["result"]["agree"], false);
}

#[test]
fn validate_detects_each_schema() {
    for (name, schema) in [
        ("validate_terminal", "category"),
        ("groth_arrow_bz2", "diagram"),
        ("conj_terminal", "cone"),
        ("descent_identity", "levelwise adjunction"),
    ] {
        let (_, out, _) = common::run_cli(&common::case_args("validate", name, &[], true));
        let report: serde_json::Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(report["result"]["schema"], schema, "{name}");
        assert_eq!(report["result"]["valid"], true, "{name}");
    }
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = common::run_cli(&["--help".into()]);
    assert_eq!(code, 0);
    assert!(String::from_utf8(out).unwrap().contains("descent-check"));
}
