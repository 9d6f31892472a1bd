//! End-to-end runs of the binary: golden outputs, exit codes, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coarse-embed"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(data("golden").join(name)).unwrap()
}

fn path5() -> String {
    data("data/path5.edges").display().to_string()
}

#[test]
fn embed_matches_golden() {
    let o = run(&["embed", "--input", &path5(), "--depth", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("embed_path5_depth4.json"));
}

#[test]
fn verify_lemma2_matches_golden() {
    let o = run(&["verify", "--suite", "lemma2", "--input", &path5()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("verify_lemma2_path5.json"));
}

#[test]
fn disconnected_input_is_exit_two() {
    let input = data("data/disconnected.edges").display().to_string();
    let o = run(&["embed", "--input", &input]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert_eq!(String::from_utf8(o.stderr).unwrap(), golden("embed_disconnected.stderr"));
}

/// Recomputes the P_5 report by hand: `d(i, j) = |i − j|`, tents on the
/// integers, exponents from the closed form, norms by direct summation.
#[test]
fn golden_embed_agrees_with_direct_formula() {
    let report: serde_json::Value = serde_json::from_str(&golden("embed_path5_depth4.json")).unwrap();
    let depth = 4usize;
    let ball = |n: usize| (2 * n + 1).min(5) as f64;
    let exps: Vec<u32> = (1..=depth)
        .map(|n| (2.0 * ball(n)).ln() / (1.0 + 1.0 / n as f64).ln())
        .map(|x| x.ceil() as u32)
        .scan(1, |run, p| {
            *run = p.max(*run);
            Some(*run)
        })
        .collect();
    assert_eq!(exps, [3, 6, 9, 11]);
    let exps_json: Vec<u64> = report["exponents"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert_eq!(exps_json, exps.iter().map(|&p| u64::from(p)).collect::<Vec<_>>());

    let tent = |x: i64, n: usize, y: i64| (1.0 - (x - y).abs() as f64 / n as f64).max(0.0);
    let dist = |x: i64, y: i64| -> f64 {
        (1..=depth)
            .map(|n| {
                let p = f64::from(exps[n - 1]);
                let s: f64 = (0..5).map(|z| (tent(x, n, z) - tent(y, n, z)).abs().powf(p)).sum();
                s.powf(2.0 / p)
            })
            .sum::<f64>()
            .sqrt()
    };
    for (i, sample) in report["samples"].as_array().unwrap().iter().enumerate() {
        let r = (i + 1) as i64;
        let ds: Vec<f64> = (0..5).flat_map(|x| (0..5).map(move |y| (x, y))).filter(|(x, y)| y - x == r).map(|(x, y)| dist(x, y)).collect();
        let far: Vec<f64> = (0..5).flat_map(|x| (0..5).map(move |y| (x, y))).filter(|(x, y)| y - x >= r).map(|(x, y)| dist(x, y)).collect();
        let hi = ds.iter().copied().fold(0.0, f64::max);
        let lo = far.iter().copied().fold(f64::INFINITY, f64::min);
        assert!((sample["rho_plus"].as_f64().unwrap() - hi).abs() < 1e-12);
        assert!((sample["rho_minus"].as_f64().unwrap() - lo).abs() < 1e-12);
        assert_eq!(sample["pairs"].as_u64().unwrap(), ds.len() as u64);
    }
    for (x, v) in report["image_norms"].as_array().unwrap().iter().enumerate() {
        assert!((v.as_f64().unwrap() - dist(0, x as i64)).abs() < 1e-12);
    }
}

#[test]
fn every_command_is_deterministic() {
    let p5 = path5();
    let cases: Vec<Vec<&str>> = vec![
        vec!["gen", "--kind", "regular", "--n", "30", "--d", "3", "--seed", "9"],
        vec!["gen", "--kind", "grid", "--rows", "3", "--cols", "4"],
        vec!["embed", "--input", &p5, "--format", "csv"],
        vec!["embed", "--input", &p5, "--depth", "3", "--basepoint", "2"],
        vec!["group", "--group", "free:2", "--depth", "2", "--samples", "50", "--seed", "3"],
        vec!["expander", "--n", "40", "--d", "3", "--seed", "5"],
        vec!["verify", "--suite", "lemma1", "--samples", "200"],
    ];
    for args in cases {
        let a = run(&args);
        let b = bin().args(&args).env("COARSE_EMBED_THREADS", "1").output().unwrap();
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn config_errors_are_exit_two_with_json() {
    for (args, kind) in [
        (vec!["group", "--group", "heisenberg:3"], "Config"),
        (vec!["embed", "--input", "/nonexistent/file.edges"], "Io"),
        (vec!["embed", "--input", &path5(), "--basepoint", "9"], "InvalidVertexId"),
        (vec!["gen", "--kind", "regular", "--n", "5", "--d", "3"], "InfeasibleDegree"),
        (vec!["embed"], "Config"),
        (vec!["frobnicate"], "Config"),
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err: serde_json::Value = serde_json::from_slice(&o.stderr).expect("stderr is JSON");
        assert_eq!(err["error"]["kind"], kind, "{args:?}");
    }
    let o = bin().args(["gen", "--kind", "path", "--n", "3"]).env("COARSE_EMBED_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certificate_failure_is_exit_one() {
    // a negative slack asks for more than any bound can give
    let o = run(&["embed", "--input", &path5(), "--tolerance=-10"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["certificates"]["upper"], false);
    // a 1-regular graph is a perfect matching, never connected
    let o = run(&["expander", "--n", "10", "--d", "1", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["connected"], false);
    assert!(report["pipeline"].is_null());
}

#[test]
fn matrix_input_and_output_file() {
    let dir = std::env::temp_dir().join(format!("coarse-embed-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("square.csv");
    std::fs::write(&csv, "0,1,2,1\n1,0,1,2\n2,1,0,1\n1,2,1,0\n").unwrap();
    let out = dir.join("report.json");
    let o = run(&["embed", "--matrix", csv.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["points"], 4);
    std::fs::write(&csv, "0,1,5\n1,0,1\n5,1,0\n").unwrap();
    let o = run(&["embed", "--matrix", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "MetricViolation");
    std::fs::remove_dir_all(&dir).unwrap();
}
