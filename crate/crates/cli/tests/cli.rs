use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const REGULAR: &str = r#"{"m": 1, "n": 2, "e_p": 3, "punctured": [], "matrix": [[3, 3]]}"#;

fn tbp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tbp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn file(dir: &TempDir, name: &str, contents: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, contents).unwrap();
    p.to_str().unwrap().to_owned()
}

fn csv_column(path: &Path, column: &str) -> Vec<String> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let idx = lines.next().unwrap().split(',').position(|c| c == column).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().to_owned()).collect()
}

#[test]
fn threshold_of_regular_protomatrix() {
    let dir = TempDir::new().unwrap();
    let b = file(&dir, "b.json", REGULAR);
    let out = dir.path().join("out");
    let run = tbp(&["threshold", "--protomatrix", &b, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let t: f64 = csv_column(&out.join("threshold.csv"), "eb_n0_db_star")[0].parse().unwrap();
    assert!((t - 1.10).abs() <= 0.05, "{t}");
    assert!(out.join("manifest.json").exists());
}

#[test]
fn lifting_below_the_largest_entry_is_rejected() {
    let dir = TempDir::new().unwrap();
    let b = file(&dir, "b.json", REGULAR);
    let out = dir.path().join("out");
    let run = tbp(&["lift-pcm", "--protomatrix", &b, "--q", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 2);
}

#[test]
fn zero_h_is_rejected() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let run = tbp(&["optimize", "--preset", "ldgm-family", "--h", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 2);
}

#[test]
// two punctured nodes on one check never learn anything
fn undecodable_protomatrix_exits_three() {
    let dir = TempDir::new().unwrap();
    let b = file(&dir, "b.json", r#"{"m": 1, "n": 3, "e_p": 1, "punctured": [0, 1], "matrix": [[1, 1, 1]]}"#);
    let out = dir.path().join("out");
    let run = tbp(&["threshold", "--protomatrix", &b, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 3, "{}", String::from_utf8_lossy(&run.stderr));
}

#[test]
fn full_frame_loss_leaves_no_key() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let run = tbp(&[
        "skr", "--fer", "1", "--beta", "0.95", "--i-ab", "0.02", "--chi-be", "0.018", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&run), 0);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("skr.json")).unwrap()).unwrap();
    assert_eq!(doc["skr"].as_f64(), Some(0.0));
}

#[test]
fn config_file_overrides_defaults() {
    let dir = TempDir::new().unwrap();
    let b = file(&dir, "b.json", REGULAR);
    let cfg = file(&dir, "cfg.json", r#"{"search": {"precision_db": 0.05}}"#);
    let out = dir.path().join("out");
    let run = tbp(&["threshold", "--protomatrix", &b, "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["search"]["precision_db"].as_f64(), Some(0.05));

    let bad = file(&dir, "bad.json", r#"{"serch": {}}"#);
    let run = tbp(&["threshold", "--protomatrix", &b, "--config", &bad, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 2);
}

#[test]
fn optimize_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str, threads: &str| {
        let out = dir.path().join(name);
        let r = tbp(&[
            "optimize", "--preset", "ldgm-family", "--h", "4", "--np", "6", "--generations", "3", "--seed", "5",
            "--threads", threads, "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
        out
    };
    let (a, b) = (run("a", "1"), run("b", "2"));
    for f in ["history.csv", "best_assignment.json", "best_protomatrix.json"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn simulate_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let b = file(&dir, "b.json", REGULAR);
    let run = |name: &str, threads: &str| {
        let out = dir.path().join(name);
        let r = tbp(&[
            "simulate", "--protomatrix", &b, "--q", "40", "--snr", "1:1:3", "--eb", "--max-frames", "300",
            "--seed", "9", "--threads", threads, "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
        out
    };
    let (a, c) = (run("a", "1"), run("c", "3"));
    assert_eq!(fs::read(a.join("results.csv")).unwrap(), fs::read(c.join("results.csv")).unwrap());
    let fer: Vec<f64> = csv_column(&a.join("results.csv"), "fer").iter().map(|x| x.parse().unwrap()).collect();
    assert_eq!(fer.len(), 3);
}

#[test]
fn lift_then_simulate_from_alist() {
    let dir = TempDir::new().unwrap();
    let b = file(&dir, "b.json", REGULAR);
    let lift = dir.path().join("lift");
    let r = tbp(&["lift-pcm", "--protomatrix", &b, "--q", "50", "--seed", "1", "--out", lift.to_str().unwrap()]);
    assert_eq!(code(&r), 0);
    let alist = lift.join("pcm.alist");
    let meta = lift.join("pcm_meta.json");
    let sim = dir.path().join("sim");
    let r = tbp(&[
        "simulate", "--alist", alist.to_str().unwrap(), "--meta", meta.to_str().unwrap(), "--snr", "4", "--eb",
        "--max-frames", "50", "--out", sim.to_str().unwrap(),
    ]);
    assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
    assert_eq!(csv_column(&sim.join("results.csv"), "frames"), vec!["50"]);
}
