use std::path::Path;
use std::process::{Command, Output};

fn lowpm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lowpm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn without_elapsed(s: &str) -> String {
    s.lines()
        .filter(|l| !l.contains("elapsed_ms"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn gen_prop2_then_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p2.sk");
    let o = lowpm(&["gen", "prop2", "--k", "2", "-o", path(&file)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("signed-k 1\norder 8\n"));

    let o = lowpm(&["oracle", path(&file)]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("min_weight 2"));
    assert!(out.lines().any(|l| l.starts_with("matching ")));
}

#[test]
fn gen_to_stdout_matches_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.sk");
    let a = lowpm(&["gen", "clique", "--n", "2", "--k", "1"]);
    lowpm(&["gen", "clique", "--n", "2", "--k", "1", "--output", path(&file)]);
    assert_eq!(stdout(&a), std::fs::read_to_string(&file).unwrap());
}

#[test]
fn solve_with_oracle_check() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("r.sk");
    let o = lowpm(&["gen", "random", "--order", "12", "--imbalance", "-6", "--seed", "3", "-o", path(&file)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let o = lowpm(&["solve", path(&file), "--seed", "1", "--check-oracle"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("oracle_agreement true"), "{out}");
    let final_w: i64 = out
        .lines()
        .find_map(|l| l.strip_prefix("final_weight "))
        .unwrap()
        .parse()
        .unwrap();
    let oracle_w: i64 = out
        .lines()
        .find_map(|l| l.strip_prefix("oracle_min_weight "))
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(final_w.abs(), oracle_w);
}

#[test]
fn solve_from_given_start() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k8.sk");
    let start = dir.path().join("m.txt");
    lowpm(&["gen", "random", "--order", "8", "--imbalance", "0", "--seed", "9", "-o", path(&file)]);
    std::fs::write(&start, "matching 0-1 2-3 4-5 6-7\n").unwrap();
    let o = lowpm(&["solve", path(&file), "--start", path(&start), "--rule", "best", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["final_weight"], 0);
}

#[test]
fn verify_thm1_passes() {
    let o = lowpm(&["verify", "thm1", "--n", "2", "--samples", "200", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = lowpm(&["verify", "thm1", "--n", "1", "--exhaustive", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tested"], 20);
    assert_eq!(v["passed"], 20);
}

#[test]
fn verify_other_theorems() {
    for args in [
        &["verify", "prop2", "--k", "2"][..],
        &["verify", "tight", "--n", "2", "--k", "2"],
        &["verify", "eg", "--n", "2", "--k", "1", "--samples", "100"],
        &["verify", "thm2", "--n", "2", "--k", "2", "--samples", "3"],
    ] {
        let o = lowpm(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&lowpm(&["verify", "thm1"])), 2);
    assert_eq!(code(&lowpm(&["frobnicate"])), 2);
    assert_eq!(code(&lowpm(&["solve", "/no/such/file.sk"])), 2);
    assert_eq!(code(&lowpm(&["gen", "prop2", "--k", "3"])), 2);
    assert_eq!(code(&lowpm(&["gen", "random", "--order", "8", "--imbalance", "1"])), 2);
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.sk");
    std::fs::write(&file, "signed-k 1\norder 4\nsigns ++-\n").unwrap();
    let o = lowpm(&["oracle", path(&file)]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn oracle_limit_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("big.sk");
    lowpm(&["gen", "random", "--order", "18", "--imbalance", "1", "-o", path(&file)]);
    assert_ne!(code(&lowpm(&["oracle", path(&file)])), 0);
    assert_eq!(code(&lowpm(&["oracle", path(&file), "--oracle-limit", "22"])), 2);
}

#[test]
fn reports_are_byte_identical() {
    for format in ["json", "csv"] {
        let args = ["verify", "thm2", "--n", "2", "--k", "2", "--samples", "2", "--seed", "11", "--format", format];
        let a = lowpm(&args);
        let b = lowpm(&args);
        assert_eq!(code(&a), 0);
        assert_eq!(without_elapsed(&stdout(&a)), without_elapsed(&stdout(&b)));
    }
    let a = stdout(&lowpm(&["verify", "thm1", "--n", "2", "--samples", "20", "--format", "csv"]));
    assert!(a.starts_with("n,k,s,seed,min_weight,bound,pass\n"));
    assert_eq!(a.lines().count(), 21);
}

#[test]
fn sweep_is_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.csv");
    let four = dir.path().join("four.csv");
    let base = ["sweep", "--theorem", "thm1", "--n", "1..2", "--samples", "30", "--seed", "5"];
    let o = lowpm(&[&base[..], &["--jobs", "1", "-o", path(&one)]].concat());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = lowpm(&[&base[..], &["--jobs", "4", "-o", path(&four)]].concat());
    assert_eq!(code(&o), 0);
    let a = std::fs::read_to_string(&one).unwrap();
    assert_eq!(a, std::fs::read_to_string(&four).unwrap());
    assert_eq!(a.lines().count(), 1 + 30 + 30);
}
