use std::collections::BTreeSet;

use jacsplit::pipeline::{search, verify, verify_json, Certificate, Rejection, SearchConfig};

fn config(p: u64, ell: u64, degree: u32) -> SearchConfig {
    let mut cfg = SearchConfig::new(p, ell);
    cfg.max_base_degree = degree;
    cfg
}

#[test]
fn rejections_partition_the_examined_candidates() {
    for (p, ell, degree) in [(5, 3, 2), (7, 3, 2), (13, 3, 2), (3, 5, 2)] {
        let outcome = search(&config(p, ell, degree)).unwrap();
        for f in &outcome.report.fields {
            assert_eq!(f.rejected() + f.accepted, f.examined, "q = {}", f.q);
            assert!(f.ordinary_d <= f.non_degenerate);
        }
        assert_eq!(outcome.report.accepted() as usize, outcome.certificates.len());
    }
}

#[test]
fn paper_faithful_results_are_a_subset() {
    let plain = search(&config(13, 3, 2)).unwrap();
    let mut cfg = config(13, 3, 2);
    cfg.paper_faithful = true;
    let faithful = search(&cfg).unwrap();
    assert!(!faithful.certificates.is_empty());
    let all: BTreeSet<String> = plain.certificates.iter().map(Certificate::content_hash).collect();
    for cert in &faithful.certificates {
        assert!(all.contains(&cert.content_hash()));
        let q = cert.field.p.pow(cert.field.degree);
        assert_eq!(q % 4, 1);
    }
    let hits = faithful.report.rejections();
    assert!(hits.get(&Rejection::NoFourTorsion).copied().unwrap_or(0) > 0);
}

#[test]
fn every_search_certificate_verifies() {
    let outcome = search(&config(7, 3, 2)).unwrap();
    assert!(!outcome.certificates.is_empty());
    for cert in &outcome.certificates {
        let report = verify(cert);
        assert!(report.passed(), "{}", report.render());
        let again = verify_json(&cert.to_pretty_json()).unwrap();
        assert!(again.passed());
    }
}

#[test]
fn thread_count_and_seed_do_not_change_content() {
    let hashes = |jobs: usize, seed: u64| {
        let mut cfg = config(13, 3, 2);
        cfg.jobs = jobs;
        cfg.seed = seed;
        search(&cfg).unwrap().certificates.iter().map(Certificate::content_hash).collect::<Vec<_>>()
    };
    let base = hashes(1, 0);
    assert_eq!(base, hashes(4, 0));
    assert_eq!(base, hashes(2, 99));
}

#[test]
fn limits_truncate_the_search() {
    let mut cfg = config(13, 3, 2);
    cfg.max_certificates = Some(3);
    let outcome = search(&cfg).unwrap();
    assert_eq!(outcome.certificates.len(), 3);
    assert!(outcome.report.truncated);

    let mut cfg = config(13, 3, 2);
    cfg.max_candidates = Some(10);
    let outcome = search(&cfg).unwrap();
    assert_eq!(outcome.report.examined(), 10);
}

#[test]
fn not_found_report_lists_rejections() {
    let outcome = search(&config(5, 3, 1)).unwrap();
    assert!(outcome.certificates.is_empty());
    let text = outcome.not_found_report().unwrap();
    assert!(text.contains("examining 5 candidates"));
    assert!(text.contains(&format!("{}: 5", Rejection::NoRationalKernel.name())));
    assert!(text.contains("max_base_degree"));

    let found = search(&config(5, 3, 2)).unwrap();
    assert!(found.not_found_report().is_none());
}

#[test]
fn fields_without_candidates_are_skipped_not_failed() {
    let outcome = search(&config(3, 7, 1)).unwrap();
    let f = &outcome.report.fields[0];
    assert!(f.skipped.is_some());
    assert_eq!(f.examined, 0);
}

#[test]
fn schema_errors_carry_a_path() {
    let cert = &search(&config(5, 3, 2)).unwrap().certificates[0];
    let mut value: serde_json::Value = serde_json::from_str(&cert.to_pretty_json()).unwrap();
    value["split"]["extra"] = serde_json::Value::Bool(true);
    let err = verify_json(&value.to_string()).unwrap_err();
    assert!(err.to_string().contains("split"), "{err}");

    let mut value: serde_json::Value = serde_json::from_str(&cert.to_pretty_json()).unwrap();
    value.as_object_mut().unwrap().remove("kernel");
    assert!(verify_json(&value.to_string()).is_err());
}
