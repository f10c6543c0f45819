use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symcover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

#[test]
fn bounds_rows() {
    let o = run(&["bounds", "--from", "3", "--to", "12", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0][0], "n");
    let row = |n: &str| rows.iter().find(|r| r[0] == n).unwrap().clone();
    assert_eq!((row("3")[7], row("3")[8]), ("2", "2"));
    let seven = row("7");
    assert_eq!(
        (seven[1], seven[2], seven[7], seven[8]),
        ("3", "5", "3", "3")
    );
    let twelve = row("12");
    assert_eq!((twelve[1], twelve[2], twelve[3]), ("4", "7", "4"));
}

#[test]
fn bounds_json_is_one_report_per_line() {
    let o = run(&["bounds", "--from", "40", "--to", "42", "--format", "json"]);
    let reports: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(reports.len(), 3);
    assert_eq!(reports[2]["n"], 42);
    assert_eq!(reports[2]["r_offset"], serde_json::json!([0, 1]));
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "14", "--set", "deltaE"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("basic: yes"));
    assert!(stdout(&o).contains("special: yes"));

    let o = run(&["verify", "9", "--set", "A"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness [1⁷,2]"));

    let o = run(&["verify", "10", "--set", "delta2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("n odd"));

    let o = run(&[
        "verify",
        "8",
        "--set",
        "P_1,P_3,S_4wrS_2",
        "--special",
        "--oracle",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[1²,6]"));

    let o = run(&["verify", "8", "--set", r#"[{"kind":"intransitive","x":1}"#]);
    assert_eq!(code(&o), 2);
}

#[test]
fn search_and_certify() {
    let cert = json(&["search", "9"]);
    assert_eq!(cert["size"], 4);
    assert_eq!(cert["schema"], "symcover.certificate/1");

    let cert = json(&["search", "10", "--force-in", "P_2", "--max-size", "3"]);
    assert_eq!(cert["status"], "infeasible");

    let o = run(&["certify", "10"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o).lines().next(),
        Some("γ(S_10)=3; no size-3 cover contains P_2")
    );
    assert_eq!(code(&run(&["certify", "12"])), 2);
}

#[test]
fn search_is_independent_of_worker_count() {
    let one = run(&["search", "16", "--format", "json", "--jobs", "1"]);
    let four = run(&["search", "16", "--format", "json", "--jobs", "4"]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn resource_and_usage_errors() {
    let o = run(&["search", "70"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--force"));
    assert_eq!(code(&run(&["bounds", "--from", "9", "--to", "4"])), 2);
    assert_eq!(code(&run(&["search", "9", "--force-in", "Q_2"])), 2);
    assert_eq!(code(&run(&["compare-gh", "--primes", "3"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn compare_gh() {
    let o = run(&["compare-gh", "--from", "6", "--to", "22", "--format", "csv"]);
    for line in stdout(&o).lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        if f[0].parse::<u64>().unwrap() % 2 == 0 {
            assert_eq!(f[3], "less", "{line}");
        }
    }
    let c = json(&["compare-gh", "--primes", "11,13"]);
    assert!(c["h"].as_u64() < c["g"].as_u64());
    assert_eq!(c["g"], c["g_recount"]);
}

fn cached_runs(dir: &Path, args: &[&str]) -> (Vec<u8>, Vec<u8>, Vec<u8>) {
    let cold = run(args).stdout;
    let mut with_cache = args.to_vec();
    with_cache.extend(["--cache-dir", dir.to_str().unwrap()]);
    let first = run(&with_cache).stdout;
    let second = run(&with_cache).stdout;
    (cold, first, second)
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["human", "csv", "json"] {
        for args in [
            vec!["bounds", "--from", "3", "--to", "16"],
            vec!["certify", "14"],
            vec!["search", "12", "--pool", "augmented"],
            vec!["verify", "12", "--set", "deltaE"],
            vec!["shapes", "10", "--set", "twoP"],
            vec!["compare-gh", "--primes", "11,13"],
        ] {
            let mut args = args.clone();
            args.extend(["--format", format]);
            let (cold, first, second) = cached_runs(dir.path(), &args);
            assert!(!cold.is_empty());
            assert_eq!(cold, first, "{args:?}");
            assert_eq!(cold, second, "{args:?}");
        }
    }
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 6);
}

#[test]
fn stale_cache_entries_are_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "search",
        "9",
        "--format",
        "json",
        "--cache-dir",
        dir.path().to_str().unwrap(),
    ];
    let fresh = run(&args).stdout;
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        let mut v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
        v["version"] = "0.0.0-stale".into();
        v["payload"]["data"]["size"] = 99.into();
        std::fs::write(&path, serde_json::to_vec(&v).unwrap()).unwrap();
    }
    assert_eq!(run(&args).stdout, fresh);
}

#[test]
fn check_certificate_rejects_assignment_mutations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();
    assert_eq!(
        code(&run(&["search", "10", "--pool", "augmented", "--out", p])),
        0
    );
    assert_eq!(code(&run(&["check-certificate", p])), 0);

    let original: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let pool = original["pool"].as_array().unwrap().clone();
    let count = original["assignment"].as_array().unwrap().len();
    for i in (0..count).step_by(5) {
        let mut v = original.clone();
        let current = v["assignment"][i]["component"].clone();
        let other = pool.iter().find(|c| **c != current).unwrap().clone();
        v["assignment"][i]["component"] = other;
        std::fs::write(&path, serde_json::to_vec(&v).unwrap()).unwrap();
        assert_eq!(code(&run(&["check-certificate", p])), 1, "entry {i}");
    }

    let degree = dir.path().join("degree.json");
    let d = degree.to_str().unwrap();
    assert_eq!(code(&run(&["certify", "10", "--out", d])), 0);
    assert_eq!(code(&run(&["check-certificate", d])), 0);
    let mut v: Value = serde_json::from_slice(&std::fs::read(&degree).unwrap()).unwrap();
    v["p2_free"] = false.into();
    std::fs::write(&degree, serde_json::to_vec(&v).unwrap()).unwrap();
    assert_eq!(code(&run(&["check-certificate", d])), 1);
}

#[test]
fn shapes_listing() {
    let v = json(&["shapes", "8"]);
    assert_eq!(v["shapes"].as_array().unwrap().len(), 7);
    let o = run(&["shapes", "8", "--set", "deltaE"]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).contains("uncovered"));
}
