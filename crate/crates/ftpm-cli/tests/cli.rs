//! End-to-end tests that drive the compiled `ftpm` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ftpm"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn gen_dataset(dir: &Path, name: &str, extra: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut args = vec![
        "gen",
        "--seed",
        "11",
        "--records",
        "14",
        "--variables",
        "2",
        "--alphabet",
        "3",
        "--intervals",
        "8",
        "--plant",
        "<v0=L,v1=N|c>",
        "--plant-rate",
        "0.9",
        "--output",
    ];
    let p = path.to_str().unwrap().to_owned();
    args.push(&p);
    args.extend_from_slice(extra);
    let out = run(&args);
    assert!(out.status.success(), "gen failed: {}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn pipeline_gen_mine_diff_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let data = gen_dataset(dir.path(), "d.json", &[]);
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");

    let out = run(&[
        "mine",
        "--input",
        data.to_str().unwrap(),
        "--theta",
        "0.5",
        "--algorithm",
        "ftpm",
        "--output",
        a.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = run(&[
        "mine",
        "--input",
        data.to_str().unwrap(),
        "--theta",
        "0.5",
        "--algorithm",
        "evl",
        "--output",
        b.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = run(&["diff", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict: identical"));

    // The planted pattern must be frequent in the listing.
    let listing = fs::read_to_string(&a).unwrap();
    assert!(
        listing.lines().any(|l| l.starts_with("<v0=L,v1=N|c>\t")),
        "planted pattern missing from:\n{listing}"
    );
}

#[test]
fn differential_mode_reports_identical_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let data = gen_dataset(dir.path(), "d.json", &[]);
    let out = run(&["mine", "--input", data.to_str().unwrap(), "--theta", "0.4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("[ftpm]"));
    assert!(text.contains("[evl]"));
    assert!(text.contains("verdict: identical"));
}

#[test]
fn mining_is_deterministic_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let data = gen_dataset(dir.path(), "d.json", &[]);
    let mut listings = Vec::new();
    let mut stats = Vec::new();
    for i in 0..2 {
        let pat = dir.path().join(format!("p{i}.txt"));
        let st = dir.path().join(format!("s{i}.json"));
        let out = run(&[
            "mine",
            "--input",
            data.to_str().unwrap(),
            "--theta",
            "0.4",
            "--output",
            pat.to_str().unwrap(),
            "--stats",
            st.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        listings.push(fs::read(&pat).unwrap());
        stats.push(fs::read_to_string(&st).unwrap());
    }
    assert_eq!(listings[0], listings[1], "pattern listings must be byte-identical");

    let mut values: Vec<serde_json::Value> =
        stats.iter().map(|s| serde_json::from_str(s).unwrap()).collect();
    for v in &mut values {
        for side in ["baseline", "evl"] {
            v[side].as_object_mut().unwrap().remove("timing");
        }
    }
    assert_eq!(values[0], values[1], "stats must match once timing is set aside");
}

#[test]
fn gen_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = gen_dataset(dir.path(), "a.json", &[]);
    let b = gen_dataset(dir.path(), "b.json", &[]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let c = dir.path().join("c.json");
    let out = run(&["gen", "--seed", "12", "--output", c.to_str().unwrap()]);
    assert!(out.status.success());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn bad_theta_exits_with_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let data = gen_dataset(dir.path(), "d.json", &[]);
    let out = run(&["mine", "--input", data.to_str().unwrap(), "--theta", "1.1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("theta"));
}

#[test]
fn zero_theta_without_bounds_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let data = gen_dataset(dir.path(), "d.json", &[]);
    let out = run(&["mine", "--input", data.to_str().unwrap(), "--theta", "0"]);
    assert_eq!(out.status.code(), Some(2));
    // Bounded zero-theta runs are fine.
    let out = run(&[
        "mine",
        "--input",
        data.to_str().unwrap(),
        "--theta",
        "0",
        "--max-k",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn diff_flags_differences_and_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    fs::write(&a, "<v0=L|>\tc0:3,c1:1\n<v0=N|>\tc0:2,c1:2\n").unwrap();
    fs::write(&b, "<v0=L|>\tc0:3,c1:1\n<v0=H|>\tc0:2,c1:2\n").unwrap();
    let out = run(&["diff", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("verdict: different"));
    assert!(text.contains("<v0=N|>"));
    assert!(text.contains("<v0=H|>"));
}

#[test]
fn ucr_text_input_is_abstracted_and_mined() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("series.txt");
    let mut rows = String::new();
    for i in 0..6 {
        // Two shapes: rising then falling vs. flat low.
        if i % 2 == 0 {
            rows.push_str("1\t1.0\t5.0\t9.0\t5.0\t1.0\n");
        } else {
            rows.push_str("2\t2.0\t2.1\t2.0\t2.1\t2.0\n");
        }
    }
    fs::write(&data, rows).unwrap();
    let out = run(&[
        "mine",
        "--input",
        data.to_str().unwrap(),
        "--theta",
        "0.5",
        "--abstraction",
        "value,trend",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("loaded 6 records, 2 classes"));
    assert!(text.contains("verdict: identical"));
}

#[test]
fn partial_runs_under_time_limit_stay_honest() {
    let dir = tempfile::tempdir().unwrap();
    let data = gen_dataset(dir.path(), "d.json", &[]);
    let st = dir.path().join("s.json");
    let out = run(&[
        "mine",
        "--input",
        data.to_str().unwrap(),
        "--theta",
        "0.3",
        "--time-limit-s",
        "0",
        "--stats",
        st.to_str().unwrap(),
    ]);
    // Zero budget: the single-state scan still runs, then both miners stop
    // before extending it, and they agree on that shared level.
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&st).unwrap()).unwrap();
    assert_eq!(v["baseline"]["completion"], "time_limit");
    assert_eq!(v["evl"]["completion"], "time_limit");
    assert_eq!(v["compared_through_size"], 1);
}
