//! End-to-end checks of the `radial` binary: exit codes, the text
//! surface, and JSON report shape.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .into_os_string()
        .into_string()
        .unwrap()
}

fn radial(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radial"))
        .args(args)
        .env_remove("RADIAL_SEED")
        .output()
        .expect("spawn radial")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_fixture_text() {
    let out = radial(&["classify", &fixture("F1.bdg"), "--sign", "+"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("linear-semiradial: true"));
    assert!(text.contains("sharp: true"));
    assert!(text.contains("witness a (+,-): a e1 r"));

    let out = radial(&["classify", &fixture("F2.bdg")]);
    assert!(stdout(&out).contains("strong-radial: true"));

    let out = radial(&["classify", &fixture("F0.bdg")]);
    assert!(stdout(&out).contains("radial: true"));
}

#[test]
fn ground_extended_prints_shell() {
    let out = radial(&["ground", &fixture("F3.bdg"), "--sign", "+", "--kind", "extended"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("edge e1 a + r -"));
    assert!(text.contains("edge e2 b + a -"));
    assert!(text.contains("shell1 a b"));
}

#[test]
fn generate_output_reparses_and_passes_classify() {
    let out = radial(&[
        "generate", "--class", "strong-radial", "--vertices", "2", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let parsed = radial::bdg::parse(&text).unwrap();
    assert_eq!(parsed.graph.vertex_count(), 2);
    let rg = radial::graph::RootedGraph::new(
        parsed.graph,
        parsed.root.as_deref().unwrap(),
        parsed.sign.unwrap(),
    )
    .unwrap();
    let rep = radial::classify::class_report(&rg).unwrap();
    assert!(rep.is_strong_radial);
}

#[test]
fn oracle_diff_reports_zero_mismatches() {
    let out = radial(&[
        "oracle-diff", "--max-vertices", "3", "--max-edges", "3", "--trials", "25", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("mismatches: 0"));
}

#[test]
fn json_report_carries_digests() {
    let out = radial(&["--format", "json", "classify", &fixture("F1.bdg")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "ok");
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(v["result"]["classes"]["is-linear-semiradial"], true);
}

#[test]
fn export_dot_conventions() {
    let out = radial(&["export-dot", &fixture("F1.bdg")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"r\" [shape=doublecircle]"));
    assert!(text.contains("arrowtail=normal, arrowhead=otee"));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    // missing file
    let out = radial(&["classify", "/nonexistent.bdg"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown flag (clap usage error)
    let out = radial(&["classify", "--frob"]);
    assert_eq!(out.status.code(), Some(2));
    // malformed BDG
    let dir = std::env::temp_dir().join("radial-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.bdg");
    std::fs::write(&bad, "bdg 1\nfrob x\n").unwrap();
    let out = radial(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
    // missing root
    let norooot = dir.join("noroot.bdg");
    std::fs::write(&norooot, "bdg 1\nvertex r\n").unwrap();
    let out = radial(&["classify", norooot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_single_check_passes() {
    let out = radial(&["verify", "L-nobypass", "--trials", "5", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("failures 0"));
}
