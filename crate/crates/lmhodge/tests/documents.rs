use lmhodge::corpus::sample_documents;
use lmhodge::document::{digest, exit_code_for, run, Kind, ProblemDocument, Verdict};
use lmhodge::Error;
use serde_json::Value;

fn sample(name: &str) -> ProblemDocument {
    sample_documents().into_iter().find(|(n, _)| *n == name).unwrap_or_else(|| panic!("no sample {name}")).1
}

fn expected(name: &str) -> Verdict {
    match name {
        "rmf-elliptic" => Verdict::Exists,
        "rmf-nonexistence" => Verdict::NotExists,
        "admissible-elliptic" => Verdict::Admissible,
        "orbit-elliptic" | "orbit-elliptic-marked" | "orbit-twist-pass" => Verdict::Generates,
        "orbit-twist-fail" => Verdict::Fails,
        "fan-product-pair" => Verdict::NotFan,
        "fan-elliptic" | "fan-tate" | "neron-build-fan" => Verdict::Fan,
        "weakfan-elliptic" => Verdict::NoViolationFound,
        "neron-probe" => Verdict::Covered,
        "corpus-ranks" => Verdict::Pass,
        _ => Verdict::Computed,
    }
}

#[test]
fn samples_round_trip_and_give_their_verdicts() {
    for (name, doc) in sample_documents() {
        let text = doc.to_json();
        let back = ProblemDocument::parse(&text).unwrap();
        assert_eq!(back, doc, "{name}");
        assert_eq!(back.canonical().unwrap(), doc, "{name}");
        assert_eq!(digest(&back), digest(&doc));
        let report = run(&back).unwrap();
        assert_eq!(report.verdict, expected(name), "{name}");
        assert_eq!(report.exit_code(), 0);
        assert_eq!(report.input_digest, digest(&doc));
        assert!(report.timings.is_none());
    }
}

#[test]
fn product_pair_reports_a_witness() {
    let r = run(&sample("fan-product-pair")).unwrap();
    assert_eq!(r.verdict, Verdict::NotFan);
    let text = r.to_json();
    assert!(text.contains("violation") && text.contains("intersection"), "{text}");
}

#[test]
fn bare_payload_is_accepted_for_the_expected_kind() {
    let doc = sample("rmf-elliptic");
    let bare = serde_json::to_string(&doc.payload).unwrap();
    assert_eq!(ProblemDocument::parse_as(&bare, Kind::Rmf).unwrap(), doc);
    assert!(ProblemDocument::parse_as(&doc.to_json(), Kind::Fan).is_err());
}

fn mutated(name: &str, f: impl FnOnce(&mut Value)) -> Error {
    let mut v: Value = serde_json::from_str(&sample(name).to_json()).unwrap();
    f(&mut v);
    let text = v.to_string();
    match ProblemDocument::parse(&text).and_then(|d| run(&d)) {
        Ok(r) => panic!("accepted: {:?}", r.verdict),
        Err(e) => e,
    }
}

#[test]
fn malformed_documents_are_format_errors() {
    let empty = mutated("fan-elliptic", |v| v["payload"]["cones"] = Value::Array(vec![]));
    assert_eq!(exit_code_for(&empty), 3, "{empty}");
    let extra = mutated("rmf-elliptic", |v| v["surprise"] = Value::Bool(true));
    assert_eq!(exit_code_for(&extra), 3);
    let kind = mutated("rmf-elliptic", |v| v["kind"] = Value::String("nope".into()));
    assert_eq!(exit_code_for(&kind), 3);
    let b1 = mutated("neron-b1", |v| v["payload"]["gamma"] = serde_json::json!([["1/2", "0"], ["0", "1"]]));
    assert_eq!(exit_code_for(&b1), 3, "{b1}");
    assert!(matches!(ProblemDocument::parse("{"), Err(Error::Format(_))));
}
