use std::fs;
use std::process::{Command, Output};

use tempfile::tempdir;

fn dpgm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpgm"))
        .args(args)
        .output()
        .expect("spawn dpgm")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

#[test]
fn sweep_exact_row() {
    let o = dpgm(&["sweep", "--N", "2", "--k", "1..1", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "N,k,nu,p,stderr,method\n2,1,1,0.75,0,EXACT\n");
}

#[test]
fn sweep_range_rows() {
    let o = dpgm(&["sweep", "--N", "64", "--k", "2..12", "--samples", "10000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[0], "N,k,nu,p,stderr,method");
    assert!(lines[1].ends_with(",EXACT"));
    assert!(lines[11].starts_with("64,12,") && lines[11].ends_with(",MC"));
    assert!(!out.contains('\r'));
}

#[test]
fn sweep_rejects_k_zero() {
    let o = dpgm(&["sweep", "--N", "64", "--k", "0..3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("k must be at least 1"));
}

#[test]
fn sweep_json_parses() {
    let o = dpgm(&["sweep", "--N", "4", "--k", "1..3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[0]["method"], "EXACT");
}

#[test]
fn same_seed_gives_identical_files() {
    let dir = tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (path, threads) in [(&a, "1"), (&b, "4")] {
        let o = dpgm(&[
            "sweep", "--N", "32", "--k", "3..6", "--samples", "3000", "--seed", "11", "--threads", threads,
            "--output", path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let la = dir.path().join("la.csv");
    let lb = dir.path().join("lb.csv");
    for (path, threads) in [(&la, "1"), (&lb, "3")] {
        let o = dpgm(&[
            "simulate", "--N", "8", "--k", "4", "--hidden", "3", "--samples", "3000", "--threads", threads,
            "--log", path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&la).unwrap(), fs::read(&lb).unwrap());
}

#[test]
fn verify_passes_at_oracle_scale() {
    let o = dpgm(&["verify", "--N", "4", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().skip(1).all(|l| l.ends_with(",pass")));
    assert!(out.contains("closed_form.dominance_min_eigenvalue"));
    assert!(out.contains("lsb.lagrangian_hermiticity"));
}

#[test]
fn verify_guard_exit() {
    let o = dpgm(&["verify", "--N", "9", "--k", "4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_perturbed_fails_dominance() {
    let o = dpgm(&["verify", "--N", "4", "--k", "1", "--perturb"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let line = out
        .lines()
        .find(|l| l.starts_with("closed_form.dominance_min_eigenvalue"))
        .unwrap();
    assert!(line.ends_with(",fail"));
}

#[test]
fn subsetsum_unique_solution() {
    let dir = tempdir().unwrap();
    let file = dir.path().join("inst.txt");
    fs::write(&file, "4 2 3 1 2\n").unwrap();
    let o = dpgm(&["subsetsum", "--file", file.to_str().unwrap(), "--samples", "100", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 100);
    assert!(out.lines().all(|l| l == "11"));
}

#[test]
fn subsetsum_quantum_sample() {
    let dir = tempdir().unwrap();
    let file = dir.path().join("inst.txt");
    // N = 4, x = (1, 3): η_0 = 2 from b = 00 and 11.
    fs::write(&file, "# comment\n4 2 0 1 3\n").unwrap();
    let o = dpgm(&["subsetsum", "--file", file.to_str().unwrap(), "--quantum"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<Vec<f64>> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][1], rows[1][1]), (0.0, 3.0));
    for r in &rows {
        assert!((r[2] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }
}

#[test]
fn subsetsum_malformed_line() {
    let dir = tempdir().unwrap();
    let file = dir.path().join("bad.txt");
    fs::write(&file, "4 2 3 1 2\n\n4 2 9 1\n").unwrap();
    let o = dpgm(&["subsetsum", "--file", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn subsetsum_missing_file() {
    let o = dpgm(&["subsetsum", "--file", "/nonexistent/instances.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn infobound_row() {
    let o = dpgm(&["infobound", "--N", "1024", "--p", "0.125"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "N,p,k_min\n1024,0.125,1\n");
}

#[test]
fn lsb_odd_modulus() {
    let o = dpgm(&["lsb", "--N", "3", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("N must be even"));
}

#[test]
fn lsb_exact_at_small_scale() {
    let o = dpgm(&["lsb", "--N", "2", "--k", "1", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "N,k,p,stderr,method,bound,pass\n2,1,0.75,0,EXACT,3.25,true\n");
}

#[test]
fn simulate_summary_and_log() {
    let dir = tempdir().unwrap();
    let log = dir.path().join("trials.csv");
    let o = dpgm(&[
        "simulate", "--N", "8", "--k", "7", "--hidden", "trivial", "--samples", "500", "--log",
        log.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["hidden"], "trivial");
    assert_eq!(v["trials"], 500);
    assert!(v["rate"].as_f64().unwrap() > 0.8);
    let text = fs::read_to_string(&log).unwrap();
    assert_eq!(text.lines().next(), Some("trial,hidden,outcome,correct"));
    assert_eq!(text.lines().count(), 501);

    let o = dpgm(&["simulate", "--N", "8", "--k", "2", "--hidden", "8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_and_unknown_flags() {
    for (cmd, flags) in [
        ("sweep", &["--N", "--k", "--samples", "--seed", "--exact", "--output", "--format", "--threads"][..]),
        ("verify", &["--N", "--k", "--perturb"][..]),
        ("simulate", &["--hidden", "--log", "--samples"][..]),
        ("subsetsum", &["--file", "--quantum"][..]),
        ("lsb", &["--N", "--k", "--exact"][..]),
        ("infobound", &["--N", "--p"][..]),
    ] {
        let o = dpgm(&[cmd, "--help"]);
        assert_eq!(o.status.code(), Some(0));
        let help = stdout(&o);
        for f in flags {
            assert!(help.contains(f), "{cmd} --help lacks {f}");
        }
        let o = dpgm(&[cmd, "--no-such-flag"]);
        assert_eq!(o.status.code(), Some(2));
    }
}
