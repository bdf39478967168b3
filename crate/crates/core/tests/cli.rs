use std::path::Path;
use std::process::{Command, Output};

use quick_xml::events::Event;
use quick_xml::Reader;

const BIN: &str = env!("CARGO_BIN_EXE_galconf");

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(BIN).args(args).current_dir(dir).output().unwrap()
}

fn code(args: &[&str], dir: &Path) -> i32 {
    run(args, dir).status.code().unwrap()
}

fn well_formed(svg: &str) -> usize {
    let mut reader = Reader::from_str(svg);
    let mut depth = 0i32;
    let mut elements = 0;
    loop {
        match reader.read_event().expect("well-formed XML") {
            Event::Start(_) => {
                depth += 1;
                elements += 1;
            }
            Event::End(_) => depth -= 1,
            Event::Empty(_) => elements += 1,
            Event::Eof => break,
            _ => {}
        }
    }
    assert_eq!(depth, 0);
    elements
}

#[test]
fn build_writes_versioned_json() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&["build", "-p", "x^2-2", "-o", "c.json"], d.path()), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("c.json")).unwrap()).unwrap();
    assert_eq!(v["v"], 1);
    assert_eq!(v["modulus"][0], serde_json::json!({"n": "-2", "d": "1"}));
    assert!(v["lines"].as_array().unwrap().len() > 10);
    let stdout = run(&["build", "-p", "x^2-2"], d.path()).stdout;
    assert_eq!(stdout, std::fs::read(d.path().join("c.json")).unwrap());
}

#[test]
fn error_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&["build", "-p", "x^2 - 1"], d.path()), 3);
    assert_eq!(code(&["build", "-p", "x + 3"], d.path()), 3);
    assert_eq!(code(&["build", "-p", "x^2 +* 1"], d.path()), 2);
    assert_eq!(code(&["build"], d.path()), 2);
    assert_eq!(code(&["certify", "-p", "7"], d.path()), 3);
    std::fs::write(d.path().join("bad.json"), "{\"v\": 2, \"lines\": []}").unwrap();
    assert_eq!(code(&["decode", "bad.json"], d.path()), 6);
    std::fs::write(d.path().join("junk.json"), "[1, 2").unwrap();
    assert_eq!(code(&["cover", "junk.json"], d.path()), 6);
    assert_eq!(code(&["decode", "missing.json"], d.path()), 1);
}

#[test]
fn decode_reports_generator() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&["build", "-p", "x^3-2", "--seed", "3", "-o", "c.json"], d.path()), 0);
    let out = run(&["decode", "c.json"], d.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "[0, 1, 0]\ngen of x^3 - 2\n");
}

#[test]
fn hand_written_three_lines_are_ambiguous() {
    let d = tempfile::tempdir().unwrap();
    let r = |n: &str| serde_json::json!({"n": n, "d": "1"});
    let elt = |n: &str| serde_json::json!([r(n), r("0")]);
    let line = |a: &str, b: &str, c: &str| serde_json::json!([elt(a), elt(b), elt(c)]);
    let file = serde_json::json!({
        "v": 1,
        "modulus": [r("-2"), r("0"), r("1")],
        "lines": [line("1", "0", "0"), line("0", "1", "0"), line("1", "1", "-1")],
    });
    std::fs::write(d.path().join("three.json"), file.to_string()).unwrap();
    assert_eq!(code(&["decode", "three.json"], d.path()), 5);
}

#[test]
fn certify_and_cover_reports() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&["certify", "-p", "x^2-2", "-o", "cert.json"], d.path()), 0);
    let cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("cert.json")).unwrap()).unwrap();
    assert_eq!(cert["v"], 1);
    assert_eq!(cert["pairwise_disjoint"], true);
    assert_eq!(cert["embeddings"].as_array().unwrap().len(), 2);

    assert_eq!(code(&["build", "-p", "x^2-2", "-o", "c.json"], d.path()), 0);
    assert_eq!(code(&["cover", "c.json", "-o", "cover.json"], d.path()), 0);
    let cover: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("cover.json")).unwrap()).unwrap();
    assert_eq!(cover["characters"].as_array().unwrap().len(), 8);
    assert_eq!(cover["parity_all_even"], true);
    assert_eq!(cover["M"].as_array().unwrap().len(), 8);
}

#[test]
fn render_is_valid_svg() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&["build", "-p", "x^2-2", "-o", "c.json"], d.path()), 0);
    for e in ["0", "1"] {
        let out = run(&["render", "c.json", "--embedding", e], d.path());
        assert!(out.status.success());
        let svg = String::from_utf8(out.stdout).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(well_formed(&svg) > 50);
    }
    assert_eq!(code(&["render", "c.json", "--embedding", "2"], d.path()), 6);

    assert_eq!(code(&["build", "-p", "x^2+1", "-o", "i.json"], d.path()), 0);
    let out = run(&["render", "i.json", "--embedding", "0", "-o", "i.svg"], d.path());
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    well_formed(&std::fs::read_to_string(d.path().join("i.svg")).unwrap());
}

#[test]
fn seeds_change_the_configuration() {
    let d = tempfile::tempdir().unwrap();
    let a = run(&["build", "-p", "x^2-x-1", "--seed", "0"], d.path()).stdout;
    let b = run(&["build", "-p", "x^2-x-1", "--seed", "1"], d.path()).stdout;
    let a2 = run(&["build", "-p", "x^2-x-1", "--seed", "0"], d.path()).stdout;
    assert_ne!(a, b);
    assert_eq!(a, a2);
    let neg = run(&["build", "-p", "x^2-x-1", "--seed", "-4"], d.path());
    assert!(neg.status.success());
}
