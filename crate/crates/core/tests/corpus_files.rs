//! The shipped `corpus/` directory is exactly what `corpus::documents()`
//! emits, and every file loads back into a valid instance.

use qgroupoid::corpus;
use qgroupoid::double::is_vacant;
use qgroupoid::field::Rationals;
use qgroupoid::format::{emit, parse, Document};
use qgroupoid::wha::QuantumGroupoid;
use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn files_match_generated_documents() {
    let docs = corpus::documents();
    let expected: BTreeSet<String> = docs.iter().map(|(s, _)| format!("{s}.json")).collect();
    let present: BTreeSet<String> = fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".json"))
        .collect();
    assert_eq!(present, expected, "regenerate with `cargo run --example export_corpus`");
    for (stem, doc) in docs {
        let text = fs::read_to_string(corpus_dir().join(format!("{stem}.json"))).unwrap();
        assert_eq!(text, emit(&doc), "{stem}.json is stale");
    }
}

#[test]
fn files_load_and_validate() {
    for entry in fs::read_dir(corpus_dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let name = path.display();
        match parse(&text).unwrap_or_else(|e| panic!("{name}: {e}")) {
            Document::DoubleGroupoid(t) => {
                assert!(t.is_valid(), "{name}");
                if is_vacant(&t).is_vacant() {
                    let w = QuantumGroupoid::build(&t, Rationals).unwrap();
                    let rep = w.verify_axioms();
                    assert!(rep.is_ok(), "{name}: {rep}");
                }
            }
            Document::MatchedPair(mp) => assert!(mp.is_valid(), "{name}"),
            Document::Groupoid(g) => assert!(g.is_valid(), "{name}"),
            Document::CocyclePair(_) | Document::FieldSpec(_) => {}
        }
    }
}

#[test]
fn cocycle_file_fits_s3() {
    let text = fs::read_to_string(corpus_dir().join("s3_cocycle_m2.json")).unwrap();
    let Document::CocyclePair(tables) = parse(&text).unwrap() else {
        panic!("not a cocycle pair")
    };
    let t = corpus::s3_double();
    let cp = tables.resolve(&t).unwrap();
    let space = qgroupoid::cocycle::CocycleSpace::new(&t).unwrap();
    assert!(space.is_valid(&cp));
}
