use std::process::Command as Process;

use clap::Parser;
use k3_arith::algebra::Gf;
use k3_arith::fixtures::{triple_iv_star, x_mod2, x_surface, x_twist, y_prime, y_surface};
use k3_arith::Error;
use k3_cli::surface::{load, FieldArg};
use k3_cli::verify::{load_golden, suite, Golden};
use k3_cli::{run, Cli, CliError, Report};
use serde_json::Value;

fn k3(args: &[&str]) -> Result<Report, CliError> {
    let mut full = vec!["k3"];
    full.extend_from_slice(args);
    run(&Cli::parse_from(full))
}

fn json(args: &[&str]) -> Value {
    k3(args).unwrap().json
}

fn binary(args: &[&str]) -> std::process::Output {
    Process::new(env!("CARGO_BIN_EXE_k3")).args(args).output().unwrap()
}

#[test]
fn builtin_surfaces_match_the_library_models() {
    assert_eq!(load("y-prime").unwrap().model_q().unwrap(), y_prime());
    assert_eq!(load("y").unwrap().model_q().unwrap(), y_surface());
    assert_eq!(load("x").unwrap().model_q().unwrap(), x_surface());
    assert_eq!(load("x-twist-2").unwrap().model_q().unwrap(), x_twist(2));
    assert_eq!(load("x-twist-3").unwrap().model_q().unwrap(), x_twist(3));
    assert_eq!(load("triple-iv-star").unwrap().model_q().unwrap(), triple_iv_star(1));
    let f4 = FieldArg::parse("2^2").unwrap();
    assert_eq!(load("x-mod-2").unwrap().model_over(&f4).unwrap(), x_mod2(&Gf::new(2, 2).unwrap()));
    assert!(load("x-mod-2").unwrap().model_over(&FieldArg::parse("3^1").unwrap()).is_err());
}

#[test]
fn surface_files_load_from_paths() {
    let dir = std::env::temp_dir().join(format!("k3-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("x.surface");
    std::fs::write(&good, "base = Q\nchi = 2\na1 = s^2\na2 = 2 s\na4 = s^2\n").unwrap();
    assert_eq!(json(&["count", good.to_str().unwrap(), "--field", "7^1"])["total"], 177);
    let bad = dir.join("bad.surface");
    std::fs::write(&bad, "base = Q\na1 = s^2\na2 = 2 s +\n").unwrap();
    let err = k3(&["count", bad.to_str().unwrap(), "--field", "7^1"]).unwrap_err();
    assert!(matches!(err, CliError::Core(Error::Parse { line: 3, .. })), "{}", err);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn counts_of_x() {
    assert_eq!(json(&["count", "x", "--field", "7^1"])["total"], 177);
    assert_eq!(json(&["count", "x", "--field", "2^1"])["total"], 45);
    let err = k3(&["count", "x", "--field", "3^1"]).unwrap_err();
    assert!(matches!(err, CliError::Core(Error::BadReduction { p: 3, .. })), "{}", err);
    assert!(err.to_string().contains("I3 at s = 2"), "{}", err);
    assert_eq!(err.exit_code(), 1);
    assert_eq!(json(&["count", "x", "--field", "3^1", "--resolve"])["total"], 70);
}

#[test]
fn trace_tables() {
    let expected = [(2, 0), (5, 0), (7, -13), (11, 0), (13, -1), (17, 0), (19, 11), (23, 0), (29, 0), (31, -46), (37, 47)];
    let t = json(&["traces", "x", "--bound", "37"]);
    let good: Vec<(i64, i64)> = t["traces"].as_array().unwrap().iter().filter(|r| !r["trace"].is_null()).map(|r| (r["p"].as_i64().unwrap(), r["trace"].as_i64().unwrap())).collect();
    assert_eq!(good, expected);
    let t = json(&["traces", "x", "--bound", "2"]);
    assert_eq!(t["traces"].as_array().unwrap().len(), 1);
    assert_eq!((t["traces"][0]["p"].as_i64(), t["traces"][0]["trace"].as_i64()), (Some(2), Some(0)));
    let t = json(&["traces", "x-twist-3", "--bound", "7"]);
    let row = t["traces"].as_array().unwrap().iter().find(|r| r["p"] == 7).unwrap();
    assert_eq!(row["trace"], 11);
}

#[test]
fn twist_and_newform_tables() {
    let t = json(&["twist", "--d", "3", "--bound", "20"]);
    assert_eq!(t["first_branch_matches"], true);
    let n = json(&["newform", "--bound", "7"]);
    let seven = n["coefficients"].as_array().unwrap().iter().find(|r| r["p"] == 7).unwrap().clone();
    assert_eq!(seven["a_p"], -13);
    assert_eq!(seven["euler_factor"], "1 + 13T + 49T^2");
    assert!(matches!(k3(&["newform", "--d", "8"]), Err(CliError::Usage(_))));
}

#[test]
fn lattices_and_heights() {
    assert_eq!(json(&["lattice"])["transcendental"], "[[2, 1], [1, 2]]");
    let two = json(&["lattice", "--field", "2^1"]);
    assert_eq!((two["complement"].as_str(), two["similarity"].as_str()), (Some("[[-12, -6], [-6, -4]]"), Some("2")));
    let three = json(&["lattice", "--field", "3^1"]);
    assert_eq!(three["similarity"], "1");
    let h = json(&["height", "Q", "R"]);
    assert_eq!(h["determinant"], "4/3");
}

#[test]
fn tate_reports_agree() {
    for (field, u) in [("2^1", 21), ("2^2", 22), ("7^1", 20), ("13^1", 20), ("3^1", 21), ("3^2", 22)] {
        let t = json(&["tate", "--field", field]);
        assert_eq!(t["u"], u, "{}", field);
        assert_eq!(t["verdict"], "OK", "{}", field);
    }
}

#[test]
fn output_is_deterministic() {
    for args in [&["fibers", "x"][..], &["zeta", "--field", "3^1"], &["verify-paper", "--section", "6"]] {
        assert_eq!(k3(args).unwrap().render(true), k3(args).unwrap().render(true));
        assert_eq!(k3(args).unwrap().render(false), k3(args).unwrap().render(false));
    }
}

#[test]
fn builtin_golden_file_passes() {
    let s = suite(None, &load_golden(None).unwrap());
    let failing: Vec<String> = s.checks.iter().filter(|c| !c.pass).map(|c| format!("{}: {} vs {}", c.anchor, c.computed, c.expected)).collect();
    assert!(failing.is_empty(), "{:?}", failing);
    assert!(s.checks.len() >= 70);
}

#[test]
fn verify_paper_binary() {
    let out = binary(&["verify-paper"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let out = binary(&["--json", "verify-paper", "--section", "7"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["section"] == 7));
}

#[test]
fn corrupted_golden_file_names_the_first_failing_anchor() {
    let mut golden: Golden = load_golden(None).unwrap();
    let target = golden.checks.iter().position(|c| c.anchor == "x.traces").unwrap();
    golden.checks[target].expected = golden.checks[target].expected.replace("-13", "-12");
    let path = std::env::temp_dir().join(format!("k3-corrupt-{}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string(&golden).unwrap()).unwrap();
    let out = binary(&["verify-paper", "--golden", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert!(!out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("first failing anchor: x.traces"), "{}", text);
}

#[test]
fn usage_errors_exit_with_two() {
    let out = binary(&["count", "x", "--field", "6^1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = binary(&["verify-paper", "--section", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = binary(&["count", "x", "--field", "3^1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad reduction"));
}
