use std::sync::OnceLock;

use opetope::io::{parse, serialize, serialize_compact, DocumentKind, Structure};
use opetope::{dualize_complex, dualize_iota_epi, Mode};
use proptest::prelude::*;

mod common;

fn corpus() -> &'static [Structure] {
    static CELL: OnceLock<Vec<Structure>> = OnceLock::new();
    CELL.get_or_init(build)
}

fn build() -> Vec<Structure> {
    let mut out: Vec<Structure> = Vec::new();
    for x in common::complexes(Mode::Thicket, 6) {
        out.push(Structure::Hypergraph(dualize_complex(&x).unwrap()));
        out.push(Structure::Complex(x));
    }
    for row in common::epis().iter().step_by(3) {
        for f in row.iter().flatten().take(4) {
            out.push(Structure::ComplexMorphism(dualize_iota_epi(f).unwrap()));
            out.push(Structure::Iota(f.clone()));
        }
    }
    out
}

fn check(s: &Structure) -> Result<(), TestCaseError> {
    let text = serialize(s);
    prop_assert!(text.ends_with('\n'));
    prop_assert_eq!(&serialize(s), &text);
    let back = parse(&text, Some(s.document_kind()), None).unwrap();
    prop_assert!(back.notes.is_empty(), "{:?}", back.notes);
    prop_assert_eq!(&back.structure, s);
    let compact = serialize_compact(s);
    prop_assert!(!compact.contains('\n'));
    prop_assert_eq!(&parse(&compact, None, None).unwrap().structure, s);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn parse_inverts_serialize(i in any::<prop::sample::Index>()) {
        let all = corpus();
        check(&all[i.index(all.len())])?;
    }
}

#[test]
fn every_sample_round_trips() {
    let all = corpus();
    assert!(all.len() > 250);
    for s in all {
        check(s).unwrap();
    }
}

#[test]
fn wrong_expected_kind_is_rejected() {
    let text = serialize(&Structure::Complex(opetope::fixtures::t2()));
    assert!(parse(&text, Some(DocumentKind::Hypergraph), None).is_err());
}
