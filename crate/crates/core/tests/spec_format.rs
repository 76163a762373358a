//! Round trips of the text format and its error reporting on whole files.

use proptest::prelude::*;
use qhcore::algcore::LinearForm;
use qhcore::exactmath::sparse::normalize_vec;
use qhcore::exactmath::Scalar;
use qhcore::qhspec::{self, SpecDocument};
use qhcore::Error;

const SHIPPED: [(&str, &str); 5] = [
    ("kz2", include_str!("data/kz2.qh")),
    ("kz4", include_str!("data/kz4.qh")),
    ("sweedler", include_str!("data/sweedler.qh")),
    ("kz2_nonpivotal", include_str!("data/kz2_nonpivotal.qh")),
    ("q1_z8_7", include_str!("data/q1_z8_7.qh")),
];

#[test]
fn shipped_documents_are_canonical() {
    for (name, text) in SHIPPED {
        let doc = qhspec::parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        // the generator writes comments, so compare documents rather than bytes there
        let again = qhspec::serialize(&doc).unwrap();
        if name != "q1_z8_7" {
            assert_eq!(again, text, "{name}");
        }
        assert_eq!(qhspec::parse(&again).unwrap(), doc, "{name}");
    }
}

#[test]
fn division_by_zero_is_a_syntax_error_on_its_line() {
    let text = SHIPPED[2].1.replacen("end\ncounit\n0 1\n", "end\ncounit\n0 1/0\n", 1);
    assert_ne!(text, SHIPPED[2].1);
    match qhspec::parse(&text) {
        Err(Error::Syntax { line, .. }) => assert_eq!(text.lines().nth(line - 1), Some("0 1/0")),
        other => panic!("expected a syntax error, got {other:?}"),
    }
}

#[test]
fn truncated_document_is_rejected() {
    let text = SHIPPED[0].1;
    let cut = &text[..text.find("antipode").unwrap()];
    assert!(matches!(qhspec::parse(cut), Err(Error::Semantic(_))));
}

/// `p/q + (r/s)·i`, the scalars of `Q(i)`.
fn gaussian() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=3, -5i64..=5, 1i64..=3)
        .prop_map(|(p, q, r, s)| &Scalar::frac(p, q) + &(&Scalar::frac(r, s) * &Scalar::i()))
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<(usize, Scalar)>> {
    prop::collection::vec(gaussian(), dim).prop_map(|v| normalize_vec(v.into_iter().enumerate().collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn attached_elements_and_forms_round_trip(
        elements in prop::collection::vec(vector(4), 0..4),
        forms in prop::collection::vec(vector(4), 0..4),
    ) {
        let base = qhspec::parse(SHIPPED[2].1).unwrap();
        let mut doc = SpecDocument::new(base.algebra);
        doc.elements = elements.into_iter().enumerate().map(|(i, e)| (format!("e{i}"), e)).collect();
        doc.forms = forms
            .into_iter()
            .enumerate()
            .map(|(i, f)| (format!("f{i}"), LinearForm::new(1, 4, f)))
            .collect();
        let text = qhspec::serialize(&doc).unwrap();
        let back = qhspec::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(qhspec::serialize(&back).unwrap(), text);
    }
}
