//! End-to-end checks of the command-line surface: exit codes, output
//! formats, the config file, and report re-rendering.

use std::process::{Command, Output};

fn eiscoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eiscoh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn analyze_agree_false_exits_zero() {
    let out = eiscoh(&["analyze", "[1,0]", "[3]"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict: AGREE_FALSE"));
}

#[test]
fn analyze_rejects_even_second_block() {
    let out = eiscoh(&["analyze", "[1,0]", "[1,0]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("second block size 2"));
}

#[test]
fn analyze_reports_offending_token() {
    let out = eiscoh(&["analyze", "[1,oops]", "[2]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("[1,oops]"));

    let out = eiscoh(&["analyze", "[0,0]", "[2]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not regular"));
}

#[test]
fn analyze_json_is_parseable() {
    let out = eiscoh(&["analyze", "[1,0]", "[2]", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "AGREE_TRUE");
    assert_eq!(v["witness"]["w"], "[1,3,2]");
    assert_eq!(v["witness"]["mu_tilde"], "[1,1,1]");
    assert_eq!(v["derived"]["a_mu"], "-3/2");
    assert_eq!(v["derived"]["ratio_statements"][0]["epsilon_m"], "+1");
}

#[test]
fn analyze_hypothesis_fail_is_reported_not_crashed() {
    let out = eiscoh(&["analyze", "[3,0]", "[2,1,0]"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("verdict: HYPOTHESIS_FAIL"));
    assert!(text.contains("middle Hodge number nonzero"));
}

#[test]
fn kostant_lists_and_cross_checks() {
    let out = eiscoh(&["kostant", "2", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(
        text.lines()
            .filter(|l| l.starts_with('[') && l.contains("  length "))
            .count(),
        10
    );
    assert!(text.contains("1 + q + 2q^2 + 2q^3 + 2q^4 + q^5 + q^6"));
    assert!(text.contains("cross-check: OK"));

    let out = eiscoh(&["kostant", "2", "1", "--length", "1"]);
    let text = stdout(&out);
    assert!(text.contains("[1,3,2]  length 1"));
    assert!(text.contains("count at length 1: 1"));

    // general blocks are allowed here, including n odd
    let out = eiscoh(&["kostant", "3", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("cross-check: OK"));

    let out = eiscoh(&["kostant", "0", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_rejects_bad_configs() {
    assert_eq!(
        eiscoh(&["sweep", "--blocks", "2x1", "--bound", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(eiscoh(&["sweep", "--bound", "4"]).status.code(), Some(2));
    assert_eq!(
        eiscoh(&["sweep", "--blocks", "3x1", "--bound", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        eiscoh(&["sweep", "--blocks", "2x1", "--bound", "4", "--twists", "5..1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        eiscoh(&["sweep", "--blocks", "2z1", "--bound", "4"])
            .status
            .code(),
        Some(2)
    );
    // bound too small to admit any GL_4 canonical weight
    assert_eq!(
        eiscoh(&["sweep", "--blocks", "4x1", "--bound", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn sweep_prints_one_summary_line_per_block_pair() {
    let out = eiscoh(&[
        "sweep", "--blocks", "2x1,2x3", "--bound", "3", "--format", "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("(2,1):")).count(), 2); // summary + report echo
    assert!(text.lines().any(|l| l.starts_with("(2,3):")));
}

#[test]
fn sweep_explicit_twists() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = eiscoh(&[
        "sweep",
        "--blocks",
        "2x1",
        "--bound",
        "1",
        "--twists",
        "-1..1",
        "--verbosity",
        "full",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = eiscoh::report::sweep_from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let instances = report.instances.unwrap();
    // one orbit (gaps (2)), twists -1, 0, 1 applied to canonical [1,0]
    let lambdas: Vec<String> = instances.iter().map(|r| r.lambda.to_string()).collect();
    assert_eq!(lambdas, vec!["[2,1]", "[1,0]", "[0,-1]"]);
}

#[test]
fn config_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.conf");
    let out_a = dir.path().join("a.json");
    let out_b = dir.path().join("b.json");
    std::fs::write(
        &cfg,
        format!(
            "# sweep settings\nblocks = 2x1,2x3\nbound = 3\ntwists = auto:1\nverbosity = full\nformat = json\nout = {}\n",
            out_a.display()
        ),
    )
    .unwrap();
    let out = eiscoh(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = eiscoh(&[
        "sweep",
        "--blocks",
        "2x1,2x3",
        "--bound",
        "3",
        "--twists",
        "auto:1",
        "--verbosity",
        "full",
        "--format",
        "json",
        "--out",
        out_b.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        std::fs::read(&out_a).unwrap(),
        std::fs::read(&out_b).unwrap()
    );

    // flags override config entries
    let out = eiscoh(&["sweep", "--config", cfg.to_str().unwrap(), "--bound", "0"]);
    assert_eq!(out.status.code(), Some(2));

    // unknown keys are rejected
    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "blocks = 2x1\nbound = 3\nbogus = 1\n").unwrap();
    let out = eiscoh(&["sweep", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bogus"));
}

#[test]
fn report_rerenders_saved_json() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("r.json");
    let out = eiscoh(&[
        "sweep",
        "--blocks",
        "2x3",
        "--bound",
        "3",
        "--verbosity",
        "full",
        "--format",
        "json",
        "--out",
        json_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let text = eiscoh(&["report", json_path.to_str().unwrap(), "--format", "text"]);
    assert_eq!(text.status.code(), Some(0));
    assert!(stdout(&text).contains("sweep report"));

    let csv = eiscoh(&["report", json_path.to_str().unwrap(), "--format", "csv"]);
    let body = stdout(&csv);
    assert!(body.starts_with("n,n_prime,lambda,lambda_prime"));
    assert!(body.lines().count() > 1);

    // json re-render reproduces the file byte for byte
    let json2 = eiscoh(&["report", json_path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(stdout(&json2), std::fs::read_to_string(&json_path).unwrap());

    let missing = eiscoh(&["report", dir.path().join("nope.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn csv_format_forces_instance_rows() {
    let out = eiscoh(&[
        "sweep", "--blocks", "2x1", "--bound", "2", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("2,1,")).collect();
    assert!(!rows.is_empty());
}
