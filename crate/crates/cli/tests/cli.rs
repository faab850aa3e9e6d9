use std::process::{Command, Output};

fn qrat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrat"))
        .args(args)
        .env_remove("QRAT_OUT_DIR")
        .output()
        .expect("spawn qrat")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn iota_prints_bare_polynomial() {
    let o = qrat(&["iota", "--frac", "12/5", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 + q^3\n");
}

#[test]
fn right_infinity() {
    let o = qrat(&["qrat", "--frac", "1/0", "--side", "right"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "num: 1\nden: 0\n");
}

#[test]
fn left_eleven_eighths_csv() {
    let o = qrat(&["qrat", "--frac", "11/8", "--side", "left", "--format", "csv"]);
    assert_eq!(stdout(&o), "label,lowest_exp,coeffs\nnum,0,1 1 2 2 2 2 1\nden,0,1 1 2 1 2 1\n");
}

#[test]
fn closure_table_counts() {
    let o = qrat(&["closure", "--quiver", "flat:1,2,0", "--table"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let counts: Vec<&str> = text.lines().skip(1).map(|l| l.split_whitespace().last().unwrap()).collect();
    assert_eq!(counts, ["1", "1", "1", "2", "1", "1"]);
    assert!(text.contains("{1,4,5}, {3,4,5}"));
}

#[test]
fn closure_methods_agree() {
    let dp = qrat(&["closure", "--quiver", "circ:2,1,3,1"]);
    let brute = qrat(&["closure", "--quiver", "circ:2,1,3,1", "--method", "brute"]);
    assert_eq!(dp.status.code(), Some(0));
    assert_eq!(stdout(&dp), stdout(&brute));
}

#[test]
fn json_output_parses() {
    let o = qrat(&["jones", "--frac", "12/5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("json");
    assert_eq!(v["alpha"], "12/5");
    let o = qrat(&["matrix", "--word", "R^-1 L^2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("json");
    assert_eq!(v["word"], "R^-1 L^2");
}

#[test]
fn trace_type_of_word() {
    let o = qrat(&["trace", "--word", "R^2"]);
    assert!(stdout(&o).contains("type: "));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_all_passes() {
    let o = qrat(&["verify", "--suite", "all", "--max-den", "30", "--max-sum", "9", "--words", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 9);
}

#[test]
fn usage_and_domain_errors_exit_two() {
    for args in [
        &["bogus"][..],
        &["iota"],
        &["iota", "--frac", "1/2"],
        &["iota", "--frac", "3/0x"],
        &["qrat", "--frac", "2/1", "--side", "left", "--route", "negative"],
        &["closure", "--quiver", "fence:"],
        &["matrix", "--word", "X^2"],
        &["scan", "--kind", "oguz", "--jobs", "0"],
        &["--format", "yaml", "cf", "--frac", "3/2"],
    ] {
        let o = qrat(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(qrat(&["--help"]).status.code(), Some(0));
    assert_eq!(qrat(&["--version"]).status.code(), Some(0));
    assert_eq!(qrat(&["scan", "--help"]).status.code(), Some(0));
}

#[test]
fn scan_bytes_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    for (jobs, name) in [("1", "r1.jsonl"), ("8", "r8.jsonl")] {
        let o = qrat(&["scan", "--kind", "oguz", "--max-sum", "12", "--jobs", jobs, "--out", &path(name)]);
        assert_eq!(o.status.code(), Some(0));
    }
    let a = std::fs::read(path("r1.jsonl")).unwrap();
    let b = std::fs::read(path("r8.jsonl")).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn scan_append_and_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["scan", "--kind", "iota", "--max-r", "8", "--out", "i.jsonl"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_qrat"))
            .args(&args)
            .env("QRAT_OUT_DIR", dir.path())
            .output()
            .unwrap()
    };
    assert_eq!(run(&[]).status.code(), Some(0));
    let once = std::fs::read_to_string(dir.path().join("i.jsonl")).unwrap();
    assert_eq!(run(&["--append"]).status.code(), Some(0));
    let twice = std::fs::read_to_string(dir.path().join("i.jsonl")).unwrap();
    assert_eq!(twice, format!("{once}{once}"));
    assert_eq!(run(&[]).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(dir.path().join("i.jsonl")).unwrap(), once);
}

#[test]
fn scan_records_are_json_lines() {
    let o = qrat(&["scan", "--kind", "iota", "--max-r", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    for l in &lines {
        serde_json::from_str::<serde_json::Value>(l).expect("json line");
    }
    let summary: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(summary["records"].as_u64().unwrap() as usize, lines.len() - 1);
}
