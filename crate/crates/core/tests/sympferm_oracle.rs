//! `Q(1, ζ₈⁷)` as written by the independent generator `tests/data/gen_q1.py`
//! against the Rust construction.

use qhcore::qhspec::{self, cli};

const Q1: &str = include_str!("data/q1_z8_7.qh");

#[test]
fn generated_q1_matches_construction() {
    let oracle = qhspec::parse(Q1).unwrap();
    let built = cli::sympferm_document(1, "z8^7").unwrap();
    let diffs = oracle.algebra.same_structure(&built.algebra);
    assert!(diffs.is_empty(), "structure differs in {diffs:?}");
    assert_eq!(oracle.algebra.generators(), built.algebra.generators());
    for (name, e) in &built.elements {
        assert_eq!(oracle.element(name), Some(e), "element {name}");
    }
    assert_eq!(oracle.elements.len(), built.elements.len());
    assert_eq!(oracle.forms, built.forms);
    assert_eq!(oracle, built);
}

#[test]
fn generated_q1_serializes_canonically() {
    let doc = qhspec::parse(Q1).unwrap();
    let text = qhspec::serialize(&doc).unwrap();
    assert_eq!(qhspec::parse(&text).unwrap(), doc);
}
