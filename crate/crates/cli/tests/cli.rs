use std::path::PathBuf;

use lefschetz_core::betti_table;
use lefschetz_core::catalog::{lattice_fixture, LatticeId};
use lefschetz_lab::document::parse_document;
use lefschetz_lab::{run, EXIT_FALSE, EXIT_INPUT, EXIT_OK};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn lab(args: &[&str]) -> (i32, String) {
    run(std::iter::once("lefschetz-lab").chain(args.iter().copied()))
}

fn scratch(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("lefschetz-lab-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn heisenberg_is_contact_one_lefschetz() {
    let (code, out) = lab(&["catalog", "run", "heisenberg-5", "--check", "contact-lefschetz", "--s", "1"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("contact 1-Lefschetz (n = 2): true"));

    let (code, _) = lab(&["analyze", &data("h5.json"), "--check", "contact-lefschetz", "--s", "1"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn bg_contact_fails_with_witness() {
    let (code, out) = lab(&["analyze", &data("bg.json"), "--check", "contact-lefschetz", "--s", "2"]);
    assert_eq!(code, EXIT_FALSE, "{out}");
    assert!(out.contains("kernel witness: x1^x2"), "{out}");
    assert!(out.contains("betti: 1 2 5 8 8 8 5 2 1"));

    let (code, out) = lab(&["lefschetz", &data("bg.json"), "--mode", "symplectic", "--s", "2"]);
    assert_eq!(code, EXIT_FALSE);
    assert!(out.contains("x1^x2"), "{out}");
}

#[test]
fn main_theorem_on_documents() {
    for doc in ["bg.json", "h3xR.json"] {
        let (code, out) = lab(&["analyze", &data(doc), "--check", "main"]);
        assert_eq!(code, EXIT_OK, "{doc}: {out}");
    }
}

#[test]
fn jacobi_failure_names_the_triple() {
    let (code, out) = lab(&["analyze", &data("broken.json")]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.contains("Jacobi identity fails on (a, b, c)"), "{out}");
}

#[test]
fn missing_structure_is_an_input_error() {
    let (code, out) = lab(&["analyze", &data("h5.json"), "--check", "symplectic-lefschetz"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.contains("omega"), "{out}");

    let (code, _) = lab(&["analyze"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _) = lab(&["analyze", &data("no-such-file.json")]);
    assert_eq!(code, EXIT_INPUT);
    let bad = scratch("syntax.json", "{\"field\": \"Q\", \"dim\": ");
    let (code, out) = lab(&["analyze", &bad]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.starts_with("error:"), "{out}");
    let (code, _) = lab(&["catalog", "run", "no-such-example"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn contactize_round_trip() {
    let (code, contact) = lab(&["contactize", &data("bg.json")]);
    assert_eq!(code, EXIT_OK, "{contact}");
    let parsed = parse_document(&contact).unwrap();
    assert_eq!(parsed.algebra.dim(), 9);
    assert!(parsed.contact.is_some());

    let path = scratch("contact.json", &contact);
    let (code, back) = lab(&["decontactize", &path]);
    assert_eq!(code, EXIT_OK, "{back}");
    let quotient = parse_document(&back).unwrap();
    let original = parse_document(&std::fs::read_to_string(data("bg.json")).unwrap()).unwrap();
    assert_eq!(quotient.algebra.dim(), 8);
    assert_eq!(betti_table(&quotient.algebra), betti_table(&original.algebra));
    assert!(quotient.symplectic.is_some());

    let (code, out) = lab(&["analyze", &path, "--check", "contact-lefschetz", "--s", "2"]);
    assert_eq!(code, EXIT_FALSE, "{out}");
}

#[test]
fn lattice_certificates() {
    let (code, out) = lab(&["lattice-check", "--catalog", "lattice-sec43-3"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("certificate valid: true"));

    let (code, out) = lab(&["lattice-check", &data("bg-lattice.json")]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("integral exp matrix: true"));

    let doc = parse_document(&std::fs::read_to_string(data("bg-lattice.json")).unwrap()).unwrap();
    let fixture = lattice_fixture(&LatticeId::Sec43(3)).unwrap();
    assert_eq!(doc.algebra.dim(), fixture.algebra.dim());
    assert_eq!(betti_table(&doc.algebra), betti_table(&fixture.algebra));

    let (code, out) = lab(&["lattice-check", &data("bg.json")]);
    assert_eq!(code, EXIT_INPUT, "{out}");
}

#[test]
fn bg_conditions_and_system() {
    let (code, out) = lab(&["bg-check", &data("bg.json")]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("all conditions: true"));

    let (code, out) = lab(&["bg-system", "--k", "3"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("rank 2"));
}

#[test]
fn json_output() {
    let (code, out) = lab(&["--format", "json", "analyze", &data("bg.json"), "--check", "contact-lefschetz", "--s", "2"]);
    assert_eq!(code, EXIT_FALSE);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["report"], "analyze");
    assert_eq!(v["betti"], serde_json::json!([1, 2, 5, 8, 8, 8, 5, 2, 1]));
    assert_eq!(v["check"]["report"], "lefschetz");

    let (code, out) = lab(&["--format", "json", "analyze", &data("broken.json")]);
    assert_eq!(code, EXIT_INPUT);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["error"].as_str().unwrap().contains("Jacobi"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--witnesses", "analyze", "--catalog", "bg", "--check", "contact-lefschetz", "--s", "2"];
    let first = lab(&args);
    for _ in 0..3 {
        assert_eq!(lab(&args), first);
    }
}

#[test]
fn catalog_runs_clean() {
    let (code, out) = lab(&["catalog", "list"]);
    assert_eq!(code, EXIT_OK);
    for id in ["heisenberg-3", "h3xR", "sec42-3-2", "lattice-sec43-3"] {
        assert!(out.contains(id), "{id}");
        let (code, report) = lab(&["catalog", "run", id]);
        assert_eq!(code, EXIT_OK, "{id}: {report}");
    }
}

#[test]
fn minimal_h3_document_matches_the_catalog() {
    let text = r#"{"field": "Q", "dim": 3, "basis": ["z", "x1", "y1"],
        "brackets": [{"i": "x1", "j": "y1", "terms": [{"k": "z", "c": 1}]}], "eta": "z"}"#;
    let doc = parse_document(text).unwrap();
    let h3 = lefschetz_core::catalog::heisenberg(1).unwrap();
    assert_eq!(doc.algebra, h3.algebra);
    assert_eq!(doc.contact.unwrap().eta, h3.eta);
}
