use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use craftbench::env::record::EpisodeRecord;

fn craftbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_craftbench")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn records(dir: &Path) -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "crtr"))
        .collect();
    out.sort();
    out
}

#[test]
fn run_score_replay_happy_path() {
    let dir = tempfile::tempdir().unwrap();
    let runs = dir.path().join("random");
    let out = craftbench(&["run", "--policy", "random", "--seed", "1", "--seed", "2", "--steps", "600",
        "--record-video-every", "1", "--out", s(&runs)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for seed in ["seed-1", "seed-2"] {
        let d = runs.join(seed);
        assert!(d.join("stats.jsonl").is_file());
        assert!(d.join("summary.json").is_file());
        assert!(!records(&d).is_empty());
    }

    let report = dir.path().join("report");
    let out = craftbench(&["score", "--in", s(&runs), "--out", s(&report)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["scores.txt", "spectrum.png", "rewards.png", "summary.json"] {
        assert!(report.join(f).is_file(), "{f}");
    }
    assert!(String::from_utf8_lossy(&out.stdout).contains("Collect Wood"));

    let rec = &records(&runs.join("seed-1"))[0];
    let replay_dir = dir.path().join("replay");
    let out = craftbench(&["replay", "--episode", s(rec), "--out", s(&replay_dir)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(replay_dir.join("replay.json").is_file());
    assert!(replay_dir.join("final.png").is_file());

    let mut tampered = EpisodeRecord::load(rec).unwrap();
    tampered.rewards[0] += 1.0;
    let bad_dir = dir.path().join("bad");
    std::fs::create_dir(&bad_dir).unwrap();
    let bad = tampered.save(&bad_dir).unwrap();
    let out = craftbench(&["replay", "--episode", s(&bad), "--out", s(&dir.path().join("r2"))]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn run_is_deterministic_across_processes() {
    let dir = tempfile::tempdir().unwrap();
    let stats = |name: &str| {
        let out_dir = dir.path().join(name);
        let out = craftbench(&["run", "--policy", "random", "--seed", "5", "--steps", "500", "--out", s(&out_dir)]);
        assert!(out.status.success());
        std::fs::read(out_dir.join("seed-5/stats.jsonl")).unwrap()
    };
    assert_eq!(stats("a"), stats("b"));
}

#[test]
fn gen_is_deterministic_across_processes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.png");
    let b = dir.path().join("b.png");
    for p in [&a, &b] {
        let out = craftbench(&["gen", "--seed", "7", "--out", s(p)]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let meta: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("a.json")).unwrap()).unwrap();
    assert_eq!(meta["run_seed"], 7);
    assert_eq!(meta["semantic"].as_array().unwrap().len(), 64);
}

#[test]
fn script_policy_runs_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let script = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/data/golden_seed0_ep0.txt");
    let out = craftbench(&["run", "--policy", &format!("script:{script}"), "--seed", "0", "--steps", "1",
        "--out", s(dir.path())]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("seed-0/summary.json")).unwrap()).unwrap();
    assert_eq!(summary["score"], 100.0);
}

#[test]
fn bad_arguments_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 5] = [
        &["run", "--policy", "greedy", "--seed", "1", "--out", s(dir.path())],
        &["run", "--policy", "random", "--seed", "1", "--steps", "0", "--out", s(dir.path())],
        &["run", "--policy", "random", "--out", s(dir.path())],
        &["gen", "--seed", "x", "--out", "m.png"],
        &["replay", "--episode", "/nonexistent.crtr", "--out", s(dir.path())],
    ];
    for args in cases {
        assert_eq!(craftbench(args).status.code(), Some(2), "{args:?}");
    }
}
