use std::fs;
use std::path::Path;
use std::process::Command;

use otband::rng::StreamKey;
use otband::simulation::{GammaParameter, ReferenceDistribution};
use tempfile::TempDir;

fn run(args: &[String], threads: usize) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_otband"))
        .args(args)
        .env("OTBAND_THREADS", threads.to_string())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn write(dir: &Path, name: &str, values: &[f64]) -> String {
    let path = dir.join(name);
    fs::write(&path, values.iter().map(|v| format!("{v}\n")).collect::<String>()).unwrap();
    path.to_str().unwrap().to_string()
}

fn inputs(dir: &Path) -> (String, String) {
    let mut rng = StreamKey::root(99).stream(0);
    let x = ReferenceDistribution::standard_normal().sample_n(600, &mut rng);
    let y = ReferenceDistribution::gamma(5.0, 0.5, GammaParameter::Rate).unwrap().sample_n(150, &mut rng);
    (write(dir, "x.csv", &x), write(dir, "y.csv", &y))
}

fn args(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn same_bytes_everywhere(cmd: Vec<String>) {
    let a = run(&cmd, 1);
    let b = run(&cmd, 1);
    let c = run(&cmd, 3);
    assert!(!a.is_empty());
    assert_eq!(a, b, "two runs differ");
    assert_eq!(a, c, "worker count changes the output");
}

#[test]
fn fit_band_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let (x, y) = inputs(dir.path());
    same_bytes_everywhere(args(&[
        "fit-band", "--x-file", &x, "--y-file", &y, "--replicates", "500", "--alpha", "0.1", "--alpha", "0.05", "--seed", "17",
    ]));
}

#[test]
fn pointwise_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let (x, y) = inputs(dir.path());
    same_bytes_everywhere(args(&["pointwise", "--x-file", &x, "--y-file", &y, "--replicates", "500", "--seed", "17"]));
}

#[test]
fn simulate_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.json");
    let cmd = args(&[
        "simulate", "--iterations", "3", "--replicates", "100", "--n", "200", "--grid-points", "24", "--seed", "5",
        "--out", out.to_str().unwrap(),
    ]);
    run(&cmd, 1);
    let a = fs::read(&out).unwrap();
    run(&cmd, 4);
    assert_eq!(a, fs::read(&out).unwrap());
}

#[test]
fn seed_changes_the_output() {
    let dir = TempDir::new().unwrap();
    let (x, y) = inputs(dir.path());
    let base = ["pointwise", "--x-file", &x, "--y-file", &y, "--replicates", "200", "--seed"];
    let mut one = args(&base);
    one.push("1".into());
    let mut two = args(&base);
    two.push("2".into());
    assert_ne!(run(&one, 2), run(&two, 2));
}
