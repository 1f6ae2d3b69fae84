mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use common::EXAMPLE;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, contents).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn expoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expoly"))
        .args(args)
        .env_remove("EXPOLY_BOX_DEFAULT")
        .output()
        .unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn compile_torus_document() {
    let ws = Workspace::new();
    let input = ws.file("ex.txt", EXAMPLE);
    let out = expoly(&["compile", s(&input), "--level", "torus"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["level"], "torus");
    assert_eq!(doc["n"], 2);
    assert_eq!(doc["dimension"], 36);
    assert_eq!(doc["ring"]["degree"], 2);
    assert_eq!(doc["matrices"].as_array().unwrap().len(), 2);
    assert_eq!(doc["characters"].as_array().unwrap().len(), 2);
    assert_eq!(doc["point"].as_array().unwrap().len(), 36);
    assert_eq!(doc["point"][1], serde_json::json!({"num": "1", "den": "1"}));
}

#[test]
fn compile_ring_document_to_file() {
    let ws = Workspace::new();
    let input = ws.file("ex.txt", EXAMPLE);
    let target = ws.path("ring.json");
    let out = expoly(&["compile", s(&input), "--level", "ring", "-o", s(&target)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(doc["dimension"], 18);
    let sizes: Vec<u64> = doc["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, [6, 5, 3, 4]);
    // ring entries are coordinate arrays of decimal strings
    assert_eq!(doc["target_rows"][0][17], serde_json::json!(["0", "-5"]));
}

#[test]
fn compile_flags_change_the_layout() {
    let ws = Workspace::new();
    let input = ws.file("ex.txt", EXAMPLE);
    let out = expoly(&["compile", s(&input), "--level", "ring", "--linear-blocks"]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["dimension"], 13);
    let out = expoly(&["compile", s(&input), "--level", "integer", "--shared-weights"]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["dimension"], 36);
}

#[test]
fn unknown_identifier_is_a_parse_error() {
    let ws = Workspace::new();
    let input = ws.file("bad.txt", "ring: g^2 - 2\nvars: a\neq: a + c\n");
    let out = expoly(&["compile", s(&input)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3, column 9"), "{}", stderr(&out));
}

#[test]
fn verify_example() {
    let ws = Workspace::new();
    let input = ws.file("ex.txt", EXAMPLE);
    let out = expoly(&["verify", s(&input), "--box", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("{(0,0), (3,1)}"), "{text}");
    assert!(text.contains("agreement: yes"));

    let report = ws.path("report.json");
    let out = expoly(&["verify", s(&input), "--levels", "direct,torus-rational", "--box", "3", "--json", "--report", s(&report)]);
    assert_eq!(out.status.code(), Some(0));
    let printed: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(printed, written);
    assert_eq!(printed["agreement"], true);
    assert_eq!(printed["sets"][1]["level"], "torus-rational");
    assert_eq!(printed["sets"][1]["points"], serde_json::json!([[0, 0], [3, 1]]));
}

#[test]
fn verify_box_default_from_environment() {
    let ws = Workspace::new();
    let input = ws.file("ex.txt", EXAMPLE);
    let out = Command::new(env!("CARGO_BIN_EXE_expoly"))
        .args(["verify", s(&input)])
        .env("EXPOLY_BOX_DEFAULT", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("box: [0, 2]^2"));
    let out = expoly(&["verify", s(&input)]);
    assert!(stdout(&out).starts_with("box: [0, 6]^2"));
}

#[test]
fn verify_serialized_documents() {
    let ws = Workspace::new();
    let input = ws.file("ex.txt", EXAMPLE);
    let doc = ws.path("torus.json");
    assert!(expoly(&["compile", s(&input), "-o", s(&doc)]).status.success());

    let out = expoly(&["verify", s(&doc), "--box", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("torus                2  {(0,0), (3,1)}"), "{}", stdout(&out));

    let out = expoly(&["verify", s(&input), "--system", s(&doc)]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn tampered_document_disagrees() {
    let ws = Workspace::new();
    let input = ws.file("ex.txt", EXAMPLE);
    let out = expoly(&["compile", s(&input), "--level", "integer"]);
    let mut doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    doc["target_rows"][1][34] = Value::from("-4");
    let bad = ws.file("bad.json", &doc.to_string());
    let out = expoly(&["verify", s(&input), "--system", s(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("agreement: NO"));
    assert!(text.contains("witness: (3,1)"), "{text}");

    let broken = ws.file("broken.json", "{\"level\": \"torus\"}");
    assert_eq!(expoly(&["verify", s(&broken)]).status.code(), Some(2));
}

#[test]
fn member_and_eval() {
    let ws = Workspace::new();
    let input = ws.file("ex.txt", EXAMPLE);
    let out = expoly(&["member", s(&input), "--point", "3,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().next(), Some("true"));

    let out = expoly(&["member", s(&input), "--point", "1,0", "--level", "torus"]);
    assert_eq!(stdout(&out).lines().next(), Some("false"));

    let out = expoly(&["eval", s(&input), "--point", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "-20 - 4*g\n");
}

#[test]
fn invalid_options_exit_one() {
    let ws = Workspace::new();
    let input = ws.file("ex.txt", EXAMPLE);
    for args in [
        vec!["eval", s(&input), "--point", "1"],
        vec!["member", s(&input), "--point", "1,2,3"],
        vec!["member", s(&input), "--point", "a,b"],
        vec!["compile", s(&input), "--level", "complex"],
        vec!["verify", s(&input), "--levels", "ring,nowhere"],
        vec!["frobnicate"],
        vec!["compile", "/nonexistent/file.txt"],
    ] {
        let out = expoly(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
    }
    assert_eq!(expoly(&["--help"]).status.code(), Some(0));
}

#[test]
fn info_summarises_the_pipeline() {
    let ws = Workspace::new();
    let input = ws.file("ex.txt", EXAMPLE);
    let out = expoly(&["info", s(&input)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for needle in [
        "ring rank: 18",
        "integer rank: 36",
        "torus dimension: 36",
        "start point: Y1=2^1 Y7=2^1 Y12=2^1 Y15=2^1",
        "Y6 = Y11^42*Y14^21*Z18^10",
        "Z6 = Z11^42*Z14^21*Y18^5",
    ] {
        assert!(text.contains(needle), "missing {needle:?} in\n{text}");
    }
}

#[test]
fn output_bytes_are_stable() {
    let ws = Workspace::new();
    let input = ws.file("ex.txt", EXAMPLE);
    let a = expoly(&["compile", s(&input), "--level", "ring"]).stdout;
    let b = expoly(&["compile", s(&input), "--level", "ring"]).stdout;
    assert_eq!(a, b);
}
