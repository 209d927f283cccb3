//! End-to-end checks of the binary: report shape, exit codes, and
//! determinism of reports for fixed inputs and seeds.

use std::path::Path;
use std::process::{Command, Output};

fn twwkit(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twwkit"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn value_of(report: &str, key: &str) -> Option<String> {
    report
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")).map(str::to_string))
}

#[test]
fn gen_width_convert_chain() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    let out = twwkit(d, &["gen", "--kind", "cycle", "--n", "7", "--out", "c7.gr"]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(value_of(&stdout(&out), "edges").as_deref(), Some("7"));

    let out = twwkit(
        d,
        &[
            "width", "--input", "c7.gr", "--param", "ctww", "--exact",
            "--emit-certificate", "c7.cs",
        ],
    );
    assert!(out.status.success());
    assert_eq!(value_of(&stdout(&out), "value").as_deref(), Some("3"));

    let out = twwkit(
        d,
        &["width", "--input", "c7.gr", "--param", "ctww", "--certificate", "c7.cs"],
    );
    assert!(out.status.success());
    assert_eq!(value_of(&stdout(&out), "value").as_deref(), Some("3"));

    let out = twwkit(
        d,
        &[
            "convert", "--input", "c7.gr", "--from", "seq", "--to", "expr", "--cert", "c7.cs",
            "--out", "c7.expr",
        ],
    );
    assert!(out.status.success());
    let report = stdout(&out);
    assert_eq!(value_of(&report, "bound_ok").as_deref(), Some("true"));
    assert_eq!(value_of(&report, "bound_width").as_deref(), Some("4"));

    // round-trip: the emitted expression is a valid cw certificate
    let out = twwkit(
        d,
        &["width", "--input", "c7.gr", "--param", "cw", "--certificate", "c7.expr"],
    );
    assert!(out.status.success());
    assert_eq!(value_of(&stdout(&out), "value").as_deref(), Some("4"));

    // and collapses back into a sequence within the linear bound
    let out = twwkit(
        d,
        &[
            "convert", "--input", "c7.gr", "--from", "expr", "--to", "seq", "--cert", "c7.expr",
            "--out", "back.cs",
        ],
    );
    assert!(out.status.success());
    assert_eq!(value_of(&stdout(&out), "bound_ok").as_deref(), Some("true"));
}

#[test]
fn count_algorithms_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    twwkit(d, &["gen", "--kind", "cycle", "--n", "5", "--out", "c5.gr"]);
    twwkit(d, &["gen", "--kind", "complete", "--n", "3", "--out", "k3.gr"]);

    for algo in ["brute", "dpg", "dph", "auto"] {
        let out = twwkit(
            d,
            &["count", "--graph", "c5.gr", "--template", "k3.gr", "--algo", algo],
        );
        assert!(out.status.success(), "{algo}: {out:?}");
        assert_eq!(value_of(&stdout(&out), "count").as_deref(), Some("30"), "{algo}");
    }

    let out = twwkit(
        d,
        &[
            "count", "--graph", "c5.gr", "--template", "k3.gr", "--algo", "dph", "--stats",
        ],
    );
    let report = stdout(&out);
    assert!(value_of(&report, "stats_assignments_total").is_some());
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    twwkit(d, &["gen", "--kind", "path", "--n", "3", "--out", "p3.gr"]);

    // 1: usage
    let out = twwkit(d, &["width", "--input", "p3.gr", "--param", "tww"]);
    assert_eq!(out.status.code(), Some(1));
    // 2: parse error
    std::fs::write(d.join("bad.gr"), "n 2\ne 0 0\n").unwrap();
    let out = twwkit(d, &["width", "--input", "bad.gr", "--param", "tww", "--exact"]);
    assert_eq!(out.status.code(), Some(2));
    // 3: invalid certificate
    std::fs::write(d.join("bad.cs"), "0 1\n0 1\n").unwrap();
    let out = twwkit(
        d,
        &["width", "--input", "p3.gr", "--param", "tww", "--certificate", "bad.cs"],
    );
    assert_eq!(out.status.code(), Some(3));
    // 4: budget exceeded
    twwkit(d, &["gen", "--kind", "cycle", "--n", "12", "--out", "c12.gr"]);
    let out = twwkit(d, &["width", "--input", "c12.gr", "--param", "ctww", "--exact"]);
    assert_eq!(out.status.code(), Some(4));
    // 4: soft time budget
    let out = Command::new(env!("CARGO_BIN_EXE_twwkit"))
        .current_dir(d)
        .env("TWWKIT_BUDGET_MS", "0")
        .args(["verify", "--suite", "golden"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    // 3: branch-to-seq with an under-claimed rank
    twwkit(d, &["gen", "--kind", "cycle", "--n", "5", "--out", "c5.gr"]);
    let out = twwkit(
        d,
        &[
            "width", "--input", "c5.gr", "--param", "rw", "--exact", "--emit-certificate",
            "c5.bd",
        ],
    );
    assert!(out.status.success());
    let out = twwkit(
        d,
        &[
            "convert", "--input", "c5.gr", "--from", "branch", "--to", "seq", "--cert", "c5.bd",
            "--out", "x.cs", "--rank", "1",
        ],
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_golden_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = twwkit(dir.path(), &["verify", "--suite", "golden"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let report = stdout(&out);
    assert_eq!(value_of(&report, "result").as_deref(), Some("pass"));
    assert_eq!(value_of(&report, "check_golden_c7_replay").as_deref(), Some("pass"));
}

#[test]
fn verify_small_bounds_and_oracle_suites_pass() {
    let dir = tempfile::tempdir().unwrap();
    let out = twwkit(
        dir.path(),
        &["verify", "--suite", "bounds", "--max-n", "5", "--seed", "7"],
    );
    assert!(out.status.success(), "{}", stdout(&out));
    let out = twwkit(
        dir.path(),
        &["verify", "--suite", "oracle", "--max-n", "5", "--seed", "7"],
    );
    assert!(out.status.success(), "{}", stdout(&out));
}

#[test]
fn reports_are_deterministic_apart_from_wall_time() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    twwkit(d, &["gen", "--kind", "random", "--n", "6", "--p", "0.5", "--seed", "1", "--out", "r.gr"]);
    let strip = |s: String| -> String {
        s.lines()
            .filter(|l| !l.starts_with("wall_time_ms="))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let a = strip(stdout(&twwkit(d, &["width", "--input", "r.gr", "--param", "ctww", "--exact"])));
    let b = strip(stdout(&twwkit(d, &["width", "--input", "r.gr", "--param", "ctww", "--exact"])));
    assert_eq!(a, b);

    // the same seed regenerates the same file
    twwkit(d, &["gen", "--kind", "random", "--n", "6", "--p", "0.5", "--seed", "1", "--out", "r2.gr"]);
    assert_eq!(
        std::fs::read_to_string(d.join("r.gr")).unwrap(),
        std::fs::read_to_string(d.join("r2.gr")).unwrap()
    );

    // conversions produce byte-identical certificates across runs
    twwkit(d, &["width", "--input", "r.gr", "--param", "ctww", "--exact", "--emit-certificate", "r.cs"]);
    for out in ["e1.expr", "e2.expr"] {
        let res = twwkit(
            d,
            &["convert", "--input", "r.gr", "--from", "seq", "--to", "expr", "--cert", "r.cs", "--out", out],
        );
        assert!(res.status.success());
    }
    assert_eq!(
        std::fs::read_to_string(d.join("e1.expr")).unwrap(),
        std::fs::read_to_string(d.join("e2.expr")).unwrap()
    );
}
