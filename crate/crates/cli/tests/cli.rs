use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(store: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_axialforge")).arg("--store").arg(store).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn report_json(store: &Path) -> Value {
    let o = run(store, &["--format", "json", "report"]);
    assert!(o.status.success());
    serde_json::from_slice(&o.stdout).unwrap()
}

fn record_file(store: &Path) -> std::path::PathBuf {
    let dir = std::fs::read_dir(store.join("cases")).unwrap().next().unwrap().unwrap().path();
    dir.join("record.json")
}

#[test]
fn enumerate_lists_counts_per_row() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(tmp.path(), &["--format", "csv", "enumerate", "--group", "S3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for row in ["S3,1+3,4", "S3,1+3+3,3", "S3,3+3+3,1"] {
        assert!(text.lines().any(|l| l == row), "{row} missing from\n{text}");
    }
    let o = run(tmp.path(), &["--format", "csv", "enumerate", "--group", "1"]);
    assert!(stdout(&o).lines().any(|l| l == "1,1+1+1,4"));
}

#[test]
fn unknown_group_is_a_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(run(tmp.path(), &["enumerate", "--group", "nosuch"]).status.code(), Some(2));
    assert_eq!(run(tmp.path(), &["construct", "--case", "nosuch/1/2A"]).status.code(), Some(2));
    assert_eq!(run(tmp.path(), &["construct", "--case", "S3/1+3"]).status.code(), Some(2));
    assert_eq!(run(tmp.path(), &["construct"]).status.code(), Some(2));
    assert_eq!(run(tmp.path(), &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn construct_single_cases() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(
        tmp.path(),
        &["construct", "--case", "1/1+1+1/(2B)^3", "--case", "D10/1+5/5A 2B", "--case", "D10/1+5/5A 2A"],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("[(2B)^3]: Completed dim 3 m 1 form pos primitive true"), "{text}");
    assert!(text.contains("[5A 2B]: Completed dim 7 m 2 form pos primitive true"), "{text}");
    assert!(text.contains("[5A 2A]: Collapsed"), "{text}");
    assert!(tmp.path().join("index.json").exists());
    let index: Value = serde_json::from_slice(&std::fs::read(tmp.path().join("index.json")).unwrap()).unwrap();
    assert_eq!(index.as_object().unwrap().len(), 3);
}

#[test]
fn empty_store_gives_empty_tables() {
    let tmp = tempfile::tempdir().unwrap();
    let r = report_json(&tmp.path().join("absent"));
    assert_eq!(r["algebras"].as_array().unwrap().len(), 0);
    assert_eq!(r["summary"].as_array().unwrap().len(), 0);
    assert_eq!(r["diff"].as_array().unwrap().len(), 0);
}

#[test]
fn report_flags_a_wrong_dimension() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(run(tmp.path(), &["construct", "--case", "D10/1+5/5A 2B"]).status.success());
    assert_eq!(report_json(tmp.path())["diff"].as_array().unwrap().len(), 0);
    let path = record_file(tmp.path());
    let mut rec: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    rec["dim"] = Value::from(8);
    std::fs::write(&path, serde_json::to_vec(&rec).unwrap()).unwrap();
    let diff = report_json(tmp.path())["diff"].as_array().unwrap().clone();
    assert_eq!(diff.len(), 1, "{diff:?}");
    assert_eq!(diff[0]["shape"], "5A 2B");
    assert!(diff[0]["found"].as_str().unwrap().contains("dim 8"));
}

#[test]
fn verify_passes_then_catches_a_corrupted_constant() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(run(tmp.path(), &["construct", "--case", "S3/1+3/3A 2B"]).status.success());
    let o = run(tmp.path(), &["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("S3/1+3/3A 2B: pass"), "{}", stdout(&o));
    let path = record_file(tmp.path());
    let mut rec: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    // The product of the first axis with itself stops being that axis.
    let second = rec["algebra"]["algebra"]["products"][1].clone();
    rec["algebra"]["algebra"]["products"][0] = second;
    std::fs::write(&path, serde_json::to_vec(&rec).unwrap()).unwrap();
    let o = run(tmp.path(), &["verify"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn incomplete_runs_checkpoint_and_resume() {
    let tmp = tempfile::tempdir().unwrap();
    let case = "S3/1+3+3/6A 2A 2B";
    let o = run(tmp.path(), &["construct", "--case", case, "--budget-expansions", "1"]);
    assert!(stdout(&o).contains("Incomplete"), "{}", stdout(&o));
    let rec: Value = serde_json::from_slice(&std::fs::read(record_file(tmp.path())).unwrap()).unwrap();
    let cp = rec["checkpoint"].as_str().unwrap();
    assert!(tmp.path().join(cp).exists());
    let v = run(tmp.path(), &["verify"]);
    assert!(v.status.success());
    assert!(stdout(&v).contains("skipped (incomplete)"));
    let o = run(tmp.path(), &["construct", "--case", case]);
    let text = stdout(&o);
    assert!(text.contains("Completed dim 13 m 3 form pos") && text.contains("resumed"), "{text}");
    let rec: Value = serde_json::from_slice(&std::fs::read(record_file(tmp.path())).unwrap()).unwrap();
    assert!(rec["checkpoint"].is_null());
}

#[test]
fn reports_are_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for s in [a.path(), b.path()] {
        assert!(run(s, &["construct", "--group", "S3", "--jobs", "2"]).status.success());
    }
    for fmt in ["md", "csv", "json"] {
        let ra = run(a.path(), &["--format", fmt, "report"]);
        let rb = run(b.path(), &["--format", fmt, "report"]);
        assert_eq!(ra.stdout, rb.stdout, "{fmt}");
    }
}

/// Summary rows for the small groups. Rows that need non-linear solving (the
/// 2^2 2+2+2 `4A` family over Q[t] and the trivial group's two algebras on
/// `(2A)^3`) stay incomplete here, and the published counts are shifted to match.
#[test]
fn small_group_summary_matches_published_counts() {
    let tmp = tempfile::tempdir().unwrap();
    for g in ["1", "2^2", "S3", "D10", "D12"] {
        let o = run(tmp.path(), &["construct", "--group", g]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let r = report_json(tmp.path());
    let published = axialforge::expected::expected();
    let mut rows = 0;
    for s in r["summary"].as_array().unwrap() {
        let (g, a) = (s["group"].as_str().unwrap(), s["axes"].as_str().unwrap());
        let want = published.summary.iter().find(|p| p.group == g && p.axes == a).unwrap();
        let shift = published
            .algebras
            .iter()
            .filter(|p| p.group == g && p.axes == a && p.needs_nonlinear() && !p.dim.contains('?'))
            .count();
        let counts = |k: &str| s[k].as_u64().unwrap() as usize;
        assert_eq!(counts("shapes"), want.shapes, "{g} {a}");
        assert_eq!(counts("collapsing"), want.collapsing, "{g} {a}");
        assert_eq!(counts("nontrivial"), want.nontrivial - shift, "{g} {a}");
        assert_eq!(counts("incomplete"), want.incomplete + shift, "{g} {a}");
        rows += 1;
    }
    assert_eq!(rows, 12);
}
