use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use blotto_cli::commands::{bands_report, centralized, construct, verify};
use blotto_cli::strategy::{read_strategy, write_strategy};
use blotto_cli::sweep::{read_csv, sweep};
use blotto_core::rational::{int, rat};
use blotto_core::{centralized_value_int, AtomicStrategy, Reading, SolverConfig};

fn blotto(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blotto"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn bands_for_42_50() {
    let out = blotto(&["bands", "--b", "42", "--e", "50"]);
    assert!(out.status.success());
    let v = json(&out);
    let pairs: Vec<(String, String)> = v["bands"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| {
            (
                b["lo"].as_str().unwrap().into(),
                b["hi"].as_str().unwrap().into(),
            )
        })
        .collect();
    let expected = [("0", "2"), ("8", "10"), ("16", "18")];
    assert_eq!(pairs, expected.map(|(a, b)| (a.to_string(), b.to_string())));
    assert_eq!(bands_report(int(42), int(50)).unwrap().bands.len(), 3);
}

#[test]
fn centralized_formula_and_lp() {
    let out = blotto(&["centralized", "--b", "36", "--e", "50"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["formula"], "2/3");
    assert_eq!(
        v["lp"],
        centralized_value_int(36, 50).unwrap().0.to_string()
    );
    let frac = centralized(rat(7, 2), int(5)).unwrap();
    assert_eq!(frac.lp, None);
}

#[test]
fn verify_files() {
    let dir = tempfile::tempdir().unwrap();
    let comb = write(
        dir.path(),
        "comb.json",
        r#"{"budget": "36", "atoms": [{"x": "0", "w": "1/3"}, {"x": "14", "w": "1/3"}, {"x": "28", "w": "1/3"}]}"#,
    );
    let out = blotto(&["verify", "--b", "36", "--e", "50", "--strategy", &comb]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["ss1_ok"], true);
    assert_eq!(v["ss2_ok"], true);
    assert_eq!(v["value"], "2/3");
    assert_eq!(v["reading"], "closed");

    let strict = blotto(&[
        "verify",
        "--b",
        "36",
        "--e",
        "50",
        "--strategy",
        &comb,
        "--ss2-reading",
        "strict",
    ]);
    let v = json(&strict);
    assert_eq!(v["reading"], "strict");
    assert_eq!(v["ss1_ok"], false);
    assert_eq!(v["is_security_strategy"], false);
    assert_eq!(v["value"], "2/3");

    let dirac = write(
        dir.path(),
        "dirac.json",
        r#"{"budget": "36", "atoms": [{"x": "18", "w": "1"}]}"#,
    );
    let v = json(&blotto(&[
        "verify",
        "--b",
        "36",
        "--e",
        "50",
        "--strategy",
        &dirac,
    ]));
    assert_eq!(v["ss1_ok"], false);
    assert_eq!(v["is_security_strategy"], false);

    let bad = write(
        dir.path(),
        "bad.json",
        "{\n  \"budget\": \"36\",\n  \"atoms\": [{\"x\": \"0\", \"w\": \"9/10\"}]\n}\n",
    );
    let out = blotto(&["verify", "--b", "36", "--e", "50", "--strategy", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("weights sum to 1"), "{err}");
    assert!(err.contains("line 3"), "{err}");

    let missing = dir.path().join("missing.json").display().to_string();
    let out = blotto(&["verify", "--b", "36", "--e", "50", "--strategy", &missing]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.json"));
}

#[test]
fn construct_writes_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().display().to_string();
    let out = blotto(&[
        "construct",
        "--b",
        "42",
        "--e",
        "50",
        "--k1",
        "2",
        "--b1",
        "9",
        "--out",
        &d,
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["value"], "5/6");
    let f1 = read_strategy(&dir.path().join("f1.json")).unwrap();
    let f2 = read_strategy(&dir.path().join("f2.json")).unwrap();
    let (_, g1, g2) = construct(int(42), int(50), 2, int(9)).unwrap();
    assert_eq!((f1, f2), (g1, g2));
}

#[test]
fn exit_codes() {
    let infeasible = blotto(&[
        "construct",
        "--b",
        "42",
        "--e",
        "50",
        "--k1",
        "4",
        "--b1",
        "9",
    ]);
    assert_eq!(infeasible.status.code(), Some(3));
    let outside = blotto(&[
        "construct",
        "--b",
        "42",
        "--e",
        "50",
        "--k1",
        "2",
        "--b1",
        "5",
    ]);
    assert_eq!(outside.status.code(), Some(3));
    let usage = blotto(&["sweep", "--b", "10"]);
    assert_eq!(usage.status.code(), Some(2));
    let bad_rational = blotto(&["bands", "--b", "0.5", "--e", "2"]);
    assert_eq!(bad_rational.status.code(), Some(2));
    let too_far = blotto(&["sweep", "--b", "10", "--e", "13", "--b1-max", "6"]);
    assert_eq!(too_far.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let unwritable = dir.path().join("no/such/dir/out.csv").display().to_string();
    let out = blotto(&[
        "sweep",
        "--b",
        "4",
        "--e",
        "6",
        "--b1-max",
        "1",
        "--starts",
        "1",
        "--out",
        &unwritable,
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("out.csv"));
}

#[test]
fn verify_report_matches_library() {
    let f = AtomicStrategy::new(
        int(36),
        vec![
            (int(0), rat(1, 3)),
            (int(14), rat(1, 3)),
            (int(28), rat(1, 3)),
        ],
    )
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    write_strategy(&path, &f).unwrap();
    let report = verify(
        int(36),
        int(50),
        &read_strategy(&path).unwrap(),
        Reading::Closed,
    )
    .unwrap();
    assert!(report.is_security_strategy && report.conditions_agree_with_value);
    assert_eq!(report.ss1_masses, vec!["1/3"; 3]);
}

#[test]
fn sweep_is_deterministic_and_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let p = path.display().to_string();
        let out = blotto(&[
            "sweep", "--b", "12", "--e", "17", "--b1-max", "6", "--starts", "3", "--seed", "5",
            "--out", &p,
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        fs::read(path).unwrap()
    };
    let first = run("a.csv");
    assert_eq!(first, run("b.csv"));
    let records = read_csv(first.as_slice()).unwrap();
    assert_eq!(records.len(), 7);
    assert!(records.windows(2).all(|w| w[0].b1 < w[1].b1));
    assert_eq!(records[0].lower_bound, records[0].centralized);
    let cfg = SolverConfig {
        starts: 3,
        seed: 5,
        ..SolverConfig::default()
    };
    assert_eq!(records, sweep(12, 17, 6, &cfg).unwrap());
}

#[test]
fn sweep_36_50_band_rows() {
    let cfg = SolverConfig {
        starts: 2,
        ..SolverConfig::default()
    };
    let records = sweep(36, 50, 18, &cfg).unwrap();
    assert_eq!(records.len(), 19);
    assert_eq!(records[0].lower_bound, records[0].centralized);
    for r in &records {
        assert!(r.lower_bound <= r.centralized);
    }
}

#[test]
fn sweep_42_50_marks_bands() {
    let cfg = SolverConfig {
        starts: 1,
        ..SolverConfig::default()
    };
    let records = sweep(42, 50, 18, &cfg).unwrap();
    let in_band: Vec<u64> = records.iter().filter(|r| r.in_band).map(|r| r.b1).collect();
    assert_eq!(in_band, vec![0, 1, 2, 8, 9, 10, 16, 17, 18]);
    for r in records.iter().filter(|r| r.in_band) {
        assert_eq!(r.comb_value, Some(rat(5, 6)));
        assert_eq!(r.lower_bound, rat(5, 6));
    }
}
