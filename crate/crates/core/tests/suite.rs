use orlicz::suite::{run_suites, VerifyOptions, SUITES};
use orlicz::{ToleranceConfig, YoungFunction};

#[test]
fn default_run_passes_every_suite() {
    let report = run_suites(&ToleranceConfig::default(), &VerifyOptions::default()).unwrap();
    for s in &report.suites {
        println!(
            "{:<7} passed {:>6} failed {:>3} deviations {:>2}",
            s.label, s.passed, s.failed, s.deviations
        );
        assert!(s.ok(), "{} failed: {}", s.label, serde_json::to_string_pretty(&s.witness).unwrap());
        assert!(s.passed > 0, "{} ran no cases", s.label);
    }
    assert!(report.passed);
    let labels: Vec<&str> = report.suites.iter().map(|s| s.label).collect();
    let expected: Vec<&str> = SUITES.iter().map(|(l, _)| *l).collect();
    assert_eq!(labels, expected);
    // The vanishing piecewise-linear member is reported, not failed.
    let zero = report.suites.iter().find(|s| s.label == "L1.1.1").unwrap();
    assert_eq!(zero.deviations, 1);
}

#[test]
fn concave_injection_fails_validation_with_witness() {
    let opts = VerifyOptions {
        only: vec!["YOUNG".into(), "L2.1".into()],
        inject: vec![YoungFunction::power(0.5)],
        ..Default::default()
    };
    let report = run_suites(&ToleranceConfig::default(), &opts).unwrap();
    assert!(!report.passed);
    let young = &report.suites[0];
    assert_eq!(young.label, "YOUNG");
    assert_eq!(young.failed, 1);
    let w = young.witness.as_ref().unwrap();
    assert_eq!(w["check"]["axiom"], "midpoint_convex");
    assert!(report.suites[1].failed > 0);
}

#[test]
fn only_filter_and_determinism() {
    let opts = VerifyOptions {
        only: vec!["L2.6".into()],
        seed: 7,
        ..Default::default()
    };
    let a = run_suites(&ToleranceConfig::default(), &opts).unwrap();
    let b = run_suites(&ToleranceConfig::default(), &opts).unwrap();
    assert_eq!(a.suites.len(), 1);
    assert_eq!(a.suites[0].label, "L2.6");
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn unknown_label_is_rejected() {
    let opts = VerifyOptions {
        only: vec!["L9.9".into()],
        ..Default::default()
    };
    assert!(run_suites(&ToleranceConfig::default(), &opts).is_err());
}
