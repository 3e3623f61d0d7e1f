use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use sipt_core::matfile::read_density;
use sipt_core::{analyze, make_state, sipt_test, spectrum, AnalyzeOptions, StateSpec, Tolerances, Verdict};

fn sipt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sipt"))
        .args(args)
        .env_remove("SIPT_TOL_PROFILE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sipt-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json_report(args: &[&str]) -> Value {
    let out = sipt(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

/// Numbers within `tol`, everything else equal; `state_id` is skipped.
fn assert_close(a: &Value, b: &Value, tol: f64, path: &str) {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            assert!((x - y).abs() <= tol, "{path}: {x} vs {y}");
        }
        (Value::Object(x), Value::Object(y)) => {
            assert_eq!(x.len(), y.len(), "{path}");
            for (k, v) in x {
                if k != "state_id" {
                    assert_close(v, &y[k], tol, &format!("{path}.{k}"));
                }
            }
        }
        (Value::Array(x), Value::Array(y)) => {
            assert_eq!(x.len(), y.len(), "{path}");
            for (i, (p, q)) in x.iter().zip(y).enumerate() {
                assert_close(p, q, tol, &format!("{path}[{i}]"));
            }
        }
        _ => assert_eq!(a, b, "{path}"),
    }
}

#[test]
fn analyze_max_entangled_three() {
    let r = json_report(&["analyze", "--family", "max-entangled", "--d", "3", "--format", "json"]);
    let bounds = &r["discord_bounds"];
    assert!((bounds["l_ppt"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert!((bounds["l_sipt"].as_f64().unwrap() - 11.0 / 24.0).abs() < 1e-9);
    let text = stdout(&sipt(&["analyze", "--family", "max-entangled", "--d", "3"]));
    assert!(text.contains("l_sipt       0.4583333333"), "{text}");
}

#[test]
fn analyze_classical_quantum_file() {
    let path = scratch("cq_state.json");
    let out = sipt(&[
        "generate", "--family", "random-cq", "--dims", "3,2", "--k", "2", "--seed", "9", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let r = json_report(&["analyze", "--file", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(r["criteria"]["sipt"]["verdict"], "Satisfied");
    for key in ["l_ppt", "l_ppt_prime", "l_sipt", "combined", "deficit_bound_bits"] {
        assert!(r["discord_bounds"][key].as_f64().unwrap() < 1e-12, "{key}");
    }
}

#[test]
fn analyze_werner_with_oracle() {
    let r = json_report(&[
        "analyze", "--family", "werner", "--p", "0.2", "--oracle", "gqd", "--format", "json",
    ]);
    assert_eq!(r["criteria"]["ppt"]["verdict"], "Satisfied");
    assert_eq!(r["criteria"]["sipt"]["verdict"], "Violated");
    assert!((r["criteria"]["sipt"]["witness_value"].as_f64().unwrap() - 0.04).abs() < 1e-9);
    assert!((r["discord_bounds"]["combined"].as_f64().unwrap() - 0.01).abs() < 1e-9);
    assert!((r["oracles"]["gqd"]["value"].as_f64().unwrap() - 0.02).abs() < 1e-4);
    assert!(r["oracles"]["deficit"].is_null());
}

#[test]
fn report_json_round_trips() {
    let out = sipt(&["analyze", "--family", "isotropic", "--d", "3", "--f", "0.6", "--format", "json"]);
    let text = stdout(&out);
    let report: sipt_core::CorrelationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
}

fn family_cases() -> Vec<(Vec<&'static str>, StateSpec)> {
    vec![
        (vec!["--family", "max-entangled", "--d", "3"], StateSpec::MaxEntangled { d: 3 }),
        (vec!["--family", "werner", "--p", "0.4"], StateSpec::Werner { p: 0.4 }),
        (vec!["--family", "isotropic", "--d", "3", "--f", "0.5"], StateSpec::Isotropic { d: 3, f: 0.5 }),
        (
            vec!["--family", "bell-diagonal", "--c1", "-0.5", "--c2", "0.3", "--c3", "0.2"],
            StateSpec::BellDiagonal { c1: -0.5, c2: 0.3, c3: 0.2 },
        ),
        (
            vec!["--family", "x-state", "--diag", "0.3,0.2,0.2,0.3", "--outer", "0.1,0.05", "--inner", "0.1,0.05"],
            StateSpec::XState {
                diag: [0.3, 0.2, 0.2, 0.3],
                outer: [0.1, 0.05],
                inner: [0.1, 0.05],
            },
        ),
        (
            vec!["--family", "random-ginibre", "--dims", "3,3", "--rank", "4", "--seed", "42"],
            StateSpec::RandomGinibre { dim_a: 3, dim_b: 3, rank: 4, seed: 42 },
        ),
        (
            vec!["--family", "random-cq", "--dims", "2x3", "--k", "2", "--seed", "7"],
            StateSpec::RandomCq { dim_a: 2, dim_b: 3, k: 2, seed: 7 },
        ),
        (
            vec!["--family", "random-separable", "--dims", "2,2", "--k", "3", "--seed", "1"],
            StateSpec::RandomSeparable { dim_a: 2, dim_b: 2, k: 3, seed: 1 },
        ),
        (
            vec!["--family", "product", "--dims", "3,2", "--seed", "5"],
            StateSpec::Product { dim_a: 3, dim_b: 2, seed: 5 },
        ),
    ]
}

#[test]
fn generate_then_analyze_matches_in_memory() {
    for (i, (flags, spec)) in family_cases().into_iter().enumerate() {
        let path = scratch(&format!("family-{i}.json"));
        let mut args = vec!["generate"];
        args.extend(&flags);
        args.extend(["--out", path.to_str().unwrap()]);
        assert!(sipt(&args).status.success(), "{spec:?}");

        let from_file = json_report(&["analyze", "--file", path.to_str().unwrap(), "--format", "json"]);
        let in_memory = analyze(&make_state(&spec).unwrap(), "mem", &AnalyzeOptions::default()).unwrap();
        assert_close(&from_file, &serde_json::to_value(&in_memory).unwrap(), 1e-12, spec.label().as_str());
    }
}

#[test]
fn generate_examples() {
    let me = stdout(&sipt(&["generate", "--family", "max-entangled", "--d", "2"]));
    let rho = read_density(&me, &Tolerances::default()).unwrap();
    let s = spectrum(&rho).unwrap();
    for (x, y) in s.values().iter().zip([1.0, 0.0, 0.0, 0.0]) {
        assert!((x - y).abs() < 1e-12);
    }

    let args = ["generate", "--family", "random-ginibre", "--dims", "3,3", "--rank", "4", "--seed", "42"];
    assert_eq!(sipt(&args).stdout, sipt(&args).stdout);

    let x = stdout(&sipt(&[
        "generate", "--family", "x-state", "--diag", "0.4,0.1,0.1,0.4", "--outer", "0.1,0", "--inner", "0.1,0",
    ]));
    let rho = read_density(&x, &Tolerances::default()).unwrap();
    assert_eq!(sipt_test(&rho).unwrap().verdict, Verdict::Satisfied);
}

fn sweep_rows(text: &str) -> (String, Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let comment = lines.next().unwrap().to_string();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (comment, header, rows)
}

#[test]
fn werner_sweep() {
    let out = sipt(&[
        "sweep", "--family", "werner", "--param", "p", "--from", "0", "--to", "1", "--step", "0.05", "--columns",
        "negativity,l_ppt,l_sipt,gqd_oracle", "--restarts", "2",
    ]);
    assert!(out.status.success());
    let (comment, header, rows) = sweep_rows(&stdout(&out));
    assert!(comment.starts_with("# seed=0, version="));
    assert_eq!(header, ["p", "negativity", "l_ppt", "l_sipt", "gqd_oracle"]);
    assert_eq!(rows.len(), 21);
    for r in &rows {
        let p = r[0];
        if p <= 1.0 / 3.0 {
            assert_eq!(r[1], 0.0, "p = {p}");
        }
        if p > 0.0 {
            assert!(r[3] > 0.0, "p = {p}");
        }
        assert!(r[2].max(r[3]) <= r[4] + 1e-6, "p = {p}");
    }
    let ps: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    assert!(ps.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn max_entangled_sweep() {
    let path = scratch("me.csv");
    let out = sipt(&[
        "sweep", "--family", "max-entangled", "--param", "d", "--from", "2", "--to", "5", "--step", "1",
        "--columns", "l_ppt,l_sipt,exact_gqd", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let (_, _, rows) = sweep_rows(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(rows.len(), 4);
    for r in rows {
        let d = r[0];
        assert!((r[3] - (1.0 - 1.0 / d)).abs() < 1e-15);
        if d >= 3.0 {
            assert!(r[1] > r[2]);
        } else {
            assert!((r[1] - r[2]).abs() < 1e-9);
        }
    }
}

#[test]
fn empty_sweep_is_header_only() {
    let out = sipt(&["sweep", "--family", "werner", "--param", "p", "--from", "1", "--to", "0", "--step", "0.1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 7] = [
        (&["analyze", "--family", "werner", "--p", "0.3"], 0),
        (&["analyze", "--file", "/definitely/missing.json"], 2),
        (&["analyze", "--family", "werner", "--p", "1.5"], 2),
        (&["analyze", "--family", "werner"], 2),
        (&["analyze", "--family", "werner", "--p", "0.3", "--tol-profile", "nope"], 2),
        (&["sweep", "--family", "werner", "--param", "p", "--from", "0", "--to", "1", "--step", "-1"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, code) in cases {
        assert_eq!(sipt(args).status.code(), Some(code), "{args:?}");
    }
}

#[test]
fn file_diagnostics_name_the_problem() {
    let path = scratch("bad.json");
    std::fs::write(&path, "{\n  \"dims\": [2, 2],\n  \"matrix\": [[[1, 0]]]\n}\n").unwrap();
    let out = sipt(&["analyze", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("matrix"));

    std::fs::write(&path, "{\n  \"dims\": [2, 2],\n  \"matrix\": oops\n}\n").unwrap();
    let out = sipt(&["analyze", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn tolerance_profile_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_sipt"))
        .args(["analyze", "--family", "werner", "--p", "0.3", "--format", "json"])
        .env("SIPT_TOL_PROFILE", "strict")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["tolerances"]["psd"].as_f64(), Some(1e-11));

    let out = sipt(&["analyze", "--family", "werner", "--p", "0.3", "--tol-psd", "1e-4", "--format", "json"]);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["tolerances"]["psd"].as_f64(), Some(1e-4));
}
