use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn fls(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fls"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_dbe_fano_holds() {
    let o = fls(&["verify", "dbe", &fixture("fano.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("uniform(k=2)"));
}

#[test]
fn verify_gdbe_all_pairs_fails_with_witness() {
    let o = fls(&["verify", "gdbe", &fixture("all-pairs-4.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("disjoint lines 12, 34"), "{}", stdout(&o));

    let o = fls(&["--format", "json", "verify", "gdbe", &fixture("all-pairs-4.json")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["intersectionWitness"], serde_json::json!(["12", "34"]));
}

#[test]
fn verify_gdbe_with_a4_rejects_input() {
    let o = fls(&["verify", "gdbe", &fixture("all-pairs-4.json"), "--axioms", "a1a2a3a4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_dbe_rejects_fuzzy_space() {
    let o = fls(&["verify", "dbe", &fixture("example2-l1.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes_over_corpus() {
    let expectations = [
        ("example2.json", 0),
        ("example2-l1.json", 0),
        ("triangle.json", 0),
        ("near-pencil-4.json", 0),
        ("near-pencil-5.json", 0),
        ("near-pencil-6.json", 0),
        ("all-pairs-4.json", 1),
        ("all-pairs-5.json", 1),
        ("all-pairs-6.json", 1),
        ("fano.json", 0),
    ];
    for (file, code) in expectations {
        let o = fls(&["verify", "gdbe", &fixture(file)]);
        assert_eq!(o.status.code(), Some(code), "{file}");
        let o = fls(&["check", &fixture(file)]);
        assert_eq!(o.status.code(), Some(0), "{file}");
    }
    let o = fls(&["check", &fixture("all-pairs-5.json"), "--axioms", "a1a2a3a4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("lines 12 and 34 are disjoint"), "{}", stdout(&o));
}

#[test]
fn count_commands() {
    let o = fls(&["count", "lines", "--k", "2", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4\n");
    let o = fls(&["count", "points", "--supports", "2,2,2", "--n", "1"]);
    assert_eq!(stdout(&o), "64\n");
    let o = fls(&["count", "points", "--supports", "", "--n", "3"]);
    assert_eq!(stdout(&o), "1\n");
    let o = fls(&["count", "lines", "--k", "100", "--n", "3"]);
    assert_eq!(stdout(&o).trim(), "1606938044258990275541962092341162602522202993782792835301376");
}

#[test]
fn infer_lines_command() {
    let o = fls(&["infer-lines", "--m", "64", "--v", "2", "--n", "1"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "3\n"));
    let o = fls(&["infer-lines", "--m", "65", "--v", "2", "--n", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no exact solution"));
    let o = fls(&["infer-lines", "--m", "abc", "--v", "2", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn closure_command() {
    let f = fixture("example2.json");
    let o = fls(&["closure", &f, "--set", "x,y"]);
    assert_eq!(stdout(&o), "x y\n");
    let o = fls(&["closure", &f, "--set", "x,y,z", "--mode", "forall"]);
    assert_eq!(stdout(&o), "\n");
    let o = fls(&["--format", "json", "closure", &f, "--set", "x,y,z"]);
    assert_eq!(stdout(&o), "[\"x\",\"y\",\"z\"]\n");
    let o = fls(&["closure", &f, "--set", "x,w"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_command() {
    let o = fls(&["--format", "json", "classify", &fixture("near-pencil-4.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["maxPointK"], 3);
    assert_eq!(v["perLineDegree"][0]["degree"], 3);
    let o = fls(&["classify", &fixture("fano.json")]);
    assert!(stdout(&o).contains("max k-fuzzy line: 3"));
}

#[test]
fn enumerate_counterexample_mode() {
    let o = fls(&["enumerate", "--points", "4", "--nontrivial", "--clause", "c2"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    let o = fls(&["enumerate", "--points", "4", "--nontrivial", "--clause", "c2", "--axioms", "a1a2a3a4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[]");
}

#[test]
fn usage_errors() {
    assert_eq!(fls(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(fls(&[]).status.code(), Some(2));
    assert_eq!(fls(&["verify", "gdbe", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(fls(&["enumerate", "--points", "9"]).status.code(), Some(2));
    assert_eq!(fls(&["check", &fixture("fano.json"), "--axioms", "a9"]).status.code(), Some(2));
    for sub in ["check", "closure", "classify", "count", "infer-lines", "verify", "enumerate"] {
        let o = fls(&[sub, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{sub}");
        assert!(stdout(&o).contains("Usage"), "{sub}");
    }
}

#[test]
fn malformed_document() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"lattice": {"n": 0}, "points": ["x"], "lines": [{"name": "d", "values": ["1", "1"]}]}"#).unwrap();
    let o = fls(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lines[0].values"));
}
