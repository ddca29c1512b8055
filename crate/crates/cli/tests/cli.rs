use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use schext::action::Semimodule;
use schext::cofib::{cohomology_monoid, ClassifyMode};
use schext::extension::{product_extension, Extension};
use schext::finmon::FiniteMonoid;
use schext_cli::doc::{emit, parse_extension, CorpusDoc, ExtensionDoc, SemimoduleDoc};

fn schext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schext"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn c2() -> FiniteMonoid {
    FiniteMonoid::cyclic_group(2)
}

fn trivial_c2() -> Semimodule {
    Semimodule::trivial(&c2(), &c2()).unwrap()
}

#[test]
fn h2_on_the_trivial_c2_action() {
    let dir = TempDir::new().unwrap();
    let s = write(
        &dir,
        "s.json",
        &emit(&SemimoduleDoc::from_semimodule(&trivial_c2())),
    );
    let out = schext(&["h2", "--semimodule", &s, "--mode", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["classes"], 2);
    assert_eq!(v["table"], serde_json::json!([[0, 1], [1, 0]]));
    assert_eq!(v["unit"], 0);
    assert_eq!(v["agree"], true);
    let witnesses = v["witnesses"].as_array().unwrap();
    assert_eq!(witnesses.len(), 2);
    for w in witnesses {
        parse_extension(&w.to_string()).unwrap();
    }
}

#[test]
fn baer_of_the_c4_class_with_itself_is_split() {
    let cm = cohomology_monoid(&trivial_c2(), ClassifyMode::FactorSystem).unwrap();
    let c4 = &cm.extensions[1 - cm.unit];
    let dir = TempDir::new().unwrap();
    let e = write(&dir, "c4.json", &emit(&ExtensionDoc::from_extension(c4)));
    let out = schext(&["baer", "--ext1", &e, "--ext2", &e]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let cert = &v["certificates"];
    assert_eq!(cert["same_fibre"], true);
    assert_eq!(
        cert["factor_systems"]["class"],
        serde_json::json!([[0, 0], [0, 0]])
    );
    assert!(!cert["class_witness"].is_null());
    let sum = parse_extension(&v["sum"].to_string()).unwrap();
    let v4 = FiniteMonoid::klein_four();
    assert!(schext::finmon::is_isomorphic(sum.carrier(), &v4).is_some());
}

#[test]
fn baer_across_fibres_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let a = write(
        &dir,
        "a.json",
        &emit(&ExtensionDoc::from_extension(&product_extension(
            &c2(),
            &c2(),
        ))),
    );
    let three = FiniteMonoid::cyclic_group(3);
    let b = write(
        &dir,
        "b.json",
        &emit(&ExtensionDoc::from_extension(&product_extension(
            &three,
            &c2(),
        ))),
    );
    let out = schext(&["baer", "--ext1", &a, "--ext2", &b]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn direction_of_s3() {
    let dir = TempDir::new().unwrap();
    let e = write(
        &dir,
        "es3.json",
        &emit(&ExtensionDoc::from_extension(&Extension::es3())),
    );
    let out = schext(&["direction", "--ext", &e, "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["order"], 6);
    assert_eq!(v["action_coincides"], true);
    assert!(v["iso"]["alpha"].is_array());
    assert_eq!(v["semidirect"]["carrier"]["order"], 6);
    for method in ["coeq", "semidirect"] {
        let out = schext(&["direction", "--ext", &e, "--method", method]);
        assert_eq!(json(&out)["order"], 6, "{method}");
    }
}

#[test]
fn direction_needs_a_cancellative_kernel() {
    let m2 = FiniteMonoid::two_element_semilattice();
    let dir = TempDir::new().unwrap();
    let e = write(
        &dir,
        "e.json",
        &emit(&ExtensionDoc::from_extension(&product_extension(
            &m2,
            &c2(),
        ))),
    );
    assert_eq!(schext(&["direction", "--ext", &e]).status.code(), Some(2));
}

#[test]
fn malformed_input_is_exit_2_with_a_location() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"monoid\": 3}");
    let out = schext(&["h2", "--semimodule", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1 column"));
    let missing = dir.path().join("missing.json");
    let out = schext(&["h2", "--semimodule", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(schext(&["h2"]).status.code(), Some(2));
}

#[test]
fn bounds_are_exit_3() {
    assert_eq!(
        schext(&["verify", "--max-order", "7"]).status.code(),
        Some(3)
    );
    assert_eq!(
        schext(&["verify", "--max-carrier", "20"]).status.code(),
        Some(3)
    );
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c");
    let out = out.to_str().unwrap();
    assert_eq!(
        schext(&["census", "--max-order", "9", "--out", out])
            .status
            .code(),
        Some(3)
    );
    let s = Semimodule::trivial(
        &FiniteMonoid::cyclic_group(3),
        &FiniteMonoid::cyclic_group(3),
    )
    .unwrap();
    let s = write(&dir, "s.json", &emit(&SemimoduleDoc::from_semimodule(&s)));
    assert_eq!(
        schext(&["h2", "--semimodule", &s, "--mode", "bf"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn empty_corpus_passes_with_warnings() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "empty.json", &emit(&CorpusDoc::default()));
    let out = schext(&["verify", "--corpus", &c]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    let n = v["statements"].as_array().unwrap().len();
    assert_eq!(v["warnings"].as_array().unwrap().len(), n);
}

#[test]
fn corrupted_fixture_fails_and_names_the_statement() {
    let mut doc = ExtensionDoc::with_schreier(&product_extension(&c2(), &c2()));
    doc.schreier.as_mut().unwrap().q.swap(0, 2);
    let dir = TempDir::new().unwrap();
    let c = write(
        &dir,
        "fault.json",
        &emit(&CorpusDoc {
            extensions: vec![doc],
        }),
    );
    let out = schext(&["verify", "--corpus", &c]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let failed: Vec<&str> = v["failed"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert!(failed.contains(&"S2-retraction-1"), "{failed:?}");
    let st = v["statements"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["id"] == "S2-retraction-1")
        .unwrap();
    assert_eq!(st["verdict"], "fail");
    assert!(st["counterexample"]["detail"].is_string());
    assert!(st["counterexample"]["instance"]["doc"]["schreier"].is_object());
}

fn report(dir: &Path, name: &str, jobs: &str) -> String {
    let out = dir.join(name);
    let o = schext(&[
        "verify",
        "--max-order",
        "3",
        "--max-carrier",
        "6",
        "--jobs",
        jobs,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stdout)
    );
    assert!(String::from_utf8_lossy(&o.stdout).contains("statements passed"));
    std::fs::read_to_string(out).unwrap()
}

#[test]
fn reports_are_identical_across_worker_counts() {
    let dir = TempDir::new().unwrap();
    let one = report(dir.path(), "one.json", "1");
    let four = report(dir.path(), "four.json", "4");
    assert_eq!(one, four);
    let v: Value = serde_json::from_str(&one).unwrap();
    assert_eq!(v["bounds"]["max_order"], 3);
    assert!(v["statements"][0].get("elapsed").is_none());
}

#[test]
fn census_writes_one_file_per_triple() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("census");
    let o = schext(&["census", "--max-order", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let index = json(&o);
    let triples = index["triples"].as_array().unwrap();
    assert_eq!(index["files"], triples.len());
    for t in triples {
        let text = std::fs::read_to_string(out.join(t["file"].as_str().unwrap())).unwrap();
        let doc: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["classes"], t["classes"]);
        let n = doc["classes"].as_u64().unwrap() as usize;
        assert_eq!(doc["table"].as_array().unwrap().len(), n);
    }
    let c2c2 = triples
        .iter()
        .find(|t| t["base"] == "2.0" && t["kernel"] == "2.0")
        .unwrap();
    assert_eq!(c2c2["classes"], 2);
    let again = dir.path().join("again");
    schext(&[
        "census",
        "--max-order",
        "2",
        "--out",
        again.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read_to_string(out.join("index.json")).unwrap(),
        std::fs::read_to_string(again.join("index.json")).unwrap()
    );
}
