use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

struct Output {
    code: i32,
    report: Value,
}

fn rcpoly(dir: &Path, args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_rcpoly"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 1, "one report per run: {stdout}");
    Output {
        code: out.status.code().unwrap(),
        report: serde_json::from_str(&stdout).unwrap(),
    }
}

fn graph_file(dir: &TempDir, name: &str, n: usize, edges: &[(usize, usize)]) -> PathBuf {
    let mut text = format!("c {name}\np edge {n} {}\n", edges.len());
    for (u, v) in edges {
        text.push_str(&format!("e {u} {v}\n"));
    }
    let path = dir.path().join(format!("{name}.dimacs"));
    fs::write(&path, text).unwrap();
    path
}

fn star3(dir: &TempDir) -> PathBuf {
    graph_file(dir, "star3", 4, &[(1, 2), (1, 3), (1, 4)])
}

fn c5(dir: &TempDir) -> PathBuf {
    graph_file(dir, "c5", 5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)])
}

#[test]
fn star_pipeline_matches_worked_example() {
    let dir = TempDir::new().unwrap();
    star3(&dir);
    let out = rcpoly(
        dir.path(),
        &["pipeline", "--problem", "rc2", "star3.dimacs"],
    );
    assert_eq!(out.code, 0);
    let r = &out.report;
    assert_eq!(r["algebraic"], "infeasible");
    assert_eq!(r["certificateDegree"], 0);
    assert_eq!(r["oracle"]["rc"], 3);
    assert_eq!(r["agree"], true);
    assert_eq!(r["command"], "pipeline");
    assert_eq!(r["inputDigest"]["graph"].as_str().unwrap().len(), 64);
}

#[test]
fn membership_on_star() {
    let dir = TempDir::new().unwrap();
    star3(&dir);
    let out = rcpoly(
        dir.path(),
        &["membership", "star3.dimacs", "--order", "lex"],
    );
    assert_eq!(out.code, 0);
    assert_eq!(out.report["decision"], "rc>=3");
    assert_eq!(out.report["reason"], "remainderZero");
    assert_eq!(out.report["config"]["order"], "lex");
}

#[test]
fn encode_rck_uses_gf7() {
    let dir = TempDir::new().unwrap();
    c5(&dir);
    let out = rcpoly(
        dir.path(),
        &[
            "encode",
            "--problem",
            "rck",
            "--k",
            "3",
            "c5.dimacs",
            "-o",
            "sys.json",
        ],
    );
    assert_eq!(out.code, 0);
    assert_eq!(out.report["field"]["char"], 7);
    let sys: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("sys.json")).unwrap()).unwrap();
    assert_eq!(sys["problem"], "rck");
    assert_eq!(sys["varMeaning"], "edges");
    assert_eq!(sys["vars"], 5);
}

#[test]
fn certificate_round_trips_through_verify() {
    let dir = TempDir::new().unwrap();
    c5(&dir);
    let d = dir.path();
    assert_eq!(
        rcpoly(
            d,
            &["encode", "--problem", "rc2", "c5.dimacs", "-o", "sys.json"]
        )
        .code,
        0
    );
    let nulla = rcpoly(d, &["nulla", "sys.json", "-o", "cert.json"]);
    assert_eq!(nulla.code, 0);
    assert_eq!(nulla.report["outcome"], "certificate");
    assert_eq!(nulla.report["degree"], 0);
    let verify = rcpoly(d, &["verify", "--cert", "cert.json", "sys.json"]);
    assert_eq!(verify.code, 0);
    assert_eq!(verify.report["valid"], true);

    // a tampered certificate is rejected
    let mut cert: Value =
        serde_json::from_str(&fs::read_to_string(d.join("cert.json")).unwrap()).unwrap();
    cert["cofactors"].as_array_mut().unwrap().pop();
    let zero = serde_json::json!({"field": {"char": 2}, "vars": 5, "terms": []});
    cert["cofactors"].as_array_mut().unwrap().push(zero);
    fs::write(d.join("bad.json"), cert.to_string()).unwrap();
    let verify = rcpoly(d, &["verify", "--cert", "bad.json", "sys.json"]);
    assert_eq!(verify.report["valid"], false);
}

#[test]
fn nulla_reports_exhausted_and_witness() {
    let dir = TempDir::new().unwrap();
    graph_file(&dir, "c4", 4, &[(1, 2), (2, 3), (3, 4), (4, 1)]);
    let d = dir.path();
    rcpoly(
        d,
        &["encode", "--problem", "rc2", "c4.dimacs", "-o", "sys.json"],
    );
    let exhausted = rcpoly(d, &["nulla", "sys.json", "--max-degree", "3"]);
    assert_eq!(exhausted.code, 0);
    assert_eq!(exhausted.report["outcome"], "exhausted");
    assert_eq!(exhausted.report["degree"], 3);
    let witness = rcpoly(d, &["nulla", "sys.json", "--witness-search"]);
    assert_eq!(witness.report["outcome"], "witness");
    assert_eq!(witness.report["witness"].as_array().unwrap().len(), 4);
}

#[test]
fn oracle_values() {
    let dir = TempDir::new().unwrap();
    c5(&dir);
    let d = dir.path();
    assert_eq!(
        rcpoly(d, &["oracle", "--problem", "rc", "c5.dimacs"]).report["value"],
        3
    );
    let at_most = rcpoly(
        d,
        &["oracle", "--problem", "rc-at-most", "--k", "2", "c5.dimacs"],
    );
    assert_eq!(at_most.report["value"], false);
    let chromatic = rcpoly(
        d,
        &["oracle", "--problem", "chromatic", "--k", "3", "c5.dimacs"],
    );
    assert_eq!(chromatic.report["value"], true);
    let stable = rcpoly(
        d,
        &[
            "oracle",
            "--problem",
            "stable-count",
            "--k",
            "2",
            "c5.dimacs",
        ],
    );
    assert_eq!(stable.report["value"], 5);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    graph_file(&dir, "p4", 4, &[(1, 2), (2, 3), (3, 4)]);
    graph_file(&dir, "split", 4, &[(1, 2), (3, 4)]);
    fs::write(d.join("broken.dimacs"), "p edge 2 1\ne 1 3\n").unwrap();

    let gate = rcpoly(d, &["encode", "--problem", "rc2", "p4.dimacs"]);
    assert_eq!(gate.code, 3);
    assert_eq!(gate.report["error"]["kind"], "precondition");
    assert_eq!(
        rcpoly(d, &["oracle", "--problem", "rc", "split.dimacs"]).code,
        3
    );
    assert_eq!(rcpoly(d, &["membership", "split.dimacs"]).code, 3);

    assert_eq!(rcpoly(d, &["membership", "broken.dimacs"]).code, 2);
    assert_eq!(rcpoly(d, &["membership", "missing.dimacs"]).code, 2);
    assert_eq!(rcpoly(d, &["frobnicate"]).code, 2);
    assert_eq!(
        rcpoly(d, &["oracle", "--problem", "chromatic", "p4.dimacs"]).code,
        2
    );
    assert_eq!(
        rcpoly(
            d,
            &[
                "encode",
                "--problem",
                "vcolor",
                "--k",
                "3",
                "--field",
                "5",
                "p4.dimacs"
            ]
        )
        .code,
        2
    );

    let budget = rcpoly(
        d,
        &[
            "oracle",
            "--problem",
            "chromatic",
            "--k",
            "3",
            "--budget",
            "10",
            "p4.dimacs",
        ],
    );
    assert_eq!(budget.code, 4);
    assert_eq!(budget.report["error"]["kind"], "budget");
    assert_eq!(budget.report["config"]["budget"], 10);
}

#[test]
fn reports_are_byte_reproducible() {
    let dir = TempDir::new().unwrap();
    c5(&dir);
    let args = ["pipeline", "--problem", "vcolor", "--k", "2", "c5.dimacs"];
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_rcpoly"))
            .current_dir(dir.path())
            .args(args)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
    let timed = rcpoly(
        dir.path(),
        &["oracle", "--problem", "rc", "c5.dimacs", "--timing"],
    );
    assert!(timed.report["wallTimeMs"].is_u64());
    let untimed = rcpoly(dir.path(), &["oracle", "--problem", "rc", "c5.dimacs"]);
    assert!(untimed.report.get("wallTimeMs").is_none());
}

#[test]
fn pipeline_cross_checks_other_problems() {
    let dir = TempDir::new().unwrap();
    c5(&dir);
    let d = dir.path();
    let vcolor = rcpoly(
        d,
        &["pipeline", "--problem", "vcolor", "--k", "2", "c5.dimacs"],
    );
    assert_eq!(
        (vcolor.code, &vcolor.report["algebraic"]),
        (0, &Value::from("infeasible"))
    );
    assert_eq!(vcolor.report["oracle"]["colorable"], false);
    let stable = rcpoly(
        d,
        &["pipeline", "--problem", "stable", "--k", "3", "c5.dimacs"],
    );
    assert_eq!(stable.report["algebraic"], "infeasible");
    assert_eq!(stable.report["agree"], true);
    let rck = rcpoly(
        d,
        &["pipeline", "--problem", "rck", "--k", "3", "c5.dimacs"],
    );
    assert_eq!(rck.report["algebraic"], "feasible");
    assert_eq!(rck.report["agree"], true);
}
