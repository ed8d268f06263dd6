use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use trispec_core::json::{self, Document};
use trispec_core::oracle::all_posets;
use trispec_core::SpecSpace;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn trispec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trispec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn spectrum_of_sierpinski() {
    let o = trispec(&["spectrum", path(&data("sierpinski.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("2 primes: ∅, {a}\n"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn spectrum_writes_dot_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("s.dot");
    let js = dir.path().join("s.json");
    let o = trispec(&[
        "spectrum",
        path(&data("v-model.json")),
        "--dot",
        dot.to_str().unwrap(),
        "--json",
        js.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    match json::parse_document(&fs::read_to_string(&js).unwrap()).unwrap() {
        Document::Space(s) => assert_eq!(s.len(), 3),
        other => panic!("{}", other.kind()),
    }
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    fs::write(&empty, r#"{"schema": "trispec/1", "points": []}"#).unwrap();
    assert_eq!(
        trispec(&["spectrum", empty.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        trispec(&["spectrum", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        trispec(&["quotient", path(&data("v-lattice.json")), "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        trispec(&["augment", path(&data("p1-base.json")), "f", "f"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        trispec(&["verify", "--all-posets", "6"]).status.code(),
        Some(2)
    );
}

#[test]
fn cap_exceeded_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.json");
    fs::write(&big, json::space_to_json(&SpecSpace::discrete(25))).unwrap();
    let o = trispec(&["spectrum", big.to_str().unwrap(), "--enumerate"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_all_posets_counts_match_generator() {
    let o = trispec(&["verify", "--all-posets", "4", "--rcst"]);
    assert_eq!(o.status.code(), Some(0));
    let n = all_posets(4, false).unwrap().len();
    assert_eq!(
        stdout(&o),
        format!("PASS rcst: all {n} labeled posets on 4 points\n")
    );
}

#[test]
fn verify_twoprm_on_v_model() {
    let o = trispec(&["verify", path(&data("v-model.json")), "--twoprm"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PASS twoprm [v-model]: 3 = 3\n");
}

#[test]
fn verify_sg_warns_without_classification() {
    let o = trispec(&["verify", path(&data("v-ci-model.json")), "--sg"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("WARN sg"), "{out}");
    assert!(out.contains("classification unavailable"));
}

#[test]
fn quotient_of_v_lattice_is_a_chain() {
    let o = trispec(&["quotient", path(&data("v-lattice.json")), "{a}"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let Document::Lattice { lattice, .. } = json::parse_document(&text).unwrap() else {
        panic!("not a lattice")
    };
    assert_eq!(lattice.ids(), &["{a}", "{a,b}", "{a,b,η}"]);
    assert_eq!(lattice.covers().len(), 2);
    assert_eq!(json::parse_document(&text).unwrap().to_json(), text);
}

#[test]
fn augment_adds_spectrum_points() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("aug.json");
    let o = trispec(&[
        "augment",
        path(&data("p1-base.json")),
        "f1",
        "f2",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let base =
        match json::parse_document(&fs::read_to_string(data("p1-base.json")).unwrap()).unwrap() {
            Document::Space(s) => s,
            _ => unreachable!(),
        };
    let o = trispec(&["spectrum", out.to_str().unwrap()]);
    assert!(
        stdout(&o).starts_with(&format!("{} primes:", base.len() + 2)),
        "{}",
        stdout(&o)
    );
}

#[test]
fn balmer_primes_match_spectrum_primes() {
    let v = path(&data("v-model.json")).to_string();
    let b = stdout(&trispec(&["balmer", &v]));
    let s = stdout(&trispec(&["spectrum", &v]));
    let tail = |line: &str| line.split_once(": ").unwrap().1.to_string();
    assert_eq!(
        tail(b.lines().next().unwrap()),
        tail(s.lines().next().unwrap())
    );
}

#[test]
fn model_reports_loci() {
    let o = trispec(&["model", path(&data("v-nodes-model.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("Sing = {a,b}"));
    assert!(out.contains("HS   = {a,b}"));
    assert!(!out.contains("FAIL"));
    let o = trispec(&["model", path(&data("sierpinski.json"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let o = trispec(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn export_dot_is_stable() {
    let a = stdout(&trispec(&["export-dot", path(&data("n5.json"))]));
    let b = stdout(&trispec(&["export-dot", path(&data("n5.json"))]));
    assert_eq!(a, b);
    assert_eq!(a.matches("->").count(), 5);
    let s = stdout(&trispec(&[
        "export-dot",
        path(&data("v-model.json")),
        "--spectrum",
    ]));
    assert_eq!(s.matches("->").count(), 2);
}

#[test]
fn catalog_round_trips_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let o = trispec(&["catalog", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut n = 0;
    for entry in fs::read_dir(dir.path()).unwrap() {
        let text = fs::read_to_string(entry.unwrap().path()).unwrap();
        assert_eq!(json::parse_document(&text).unwrap().to_json(), text);
        n += 1;
    }
    assert!(n >= 30);
}

#[test]
fn shipped_data_round_trips() {
    for entry in fs::read_dir(data("")).unwrap() {
        let text = fs::read_to_string(entry.unwrap().path()).unwrap();
        assert_eq!(json::parse_document(&text).unwrap().to_json(), text);
    }
}
