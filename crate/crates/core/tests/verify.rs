//! Integration tests for the verification harness: full-box coverage
//! with re-verified residuals, unboundedness certification, the named
//! property suites, and byte-level determinism of every report.

use num_traits::ToPrimitive;
use peano_lab_core::parse_rational;
use peano_lab_core::seqmaps::BoxSpec;
use peano_lab_core::tiling::{LineMap, TargetSpace, TilingError};
use peano_lab_core::verify::{
    box_net, coverage_scan, report_json, reverify_coverage, run_suite, unboundedness_scan,
    CoverageReport, VerifyError, SUITE_NAMES,
};

fn plane_map() -> LineMap {
    LineMap::composite(TargetSpace::Euclidean { dim: 2 }).unwrap()
}

fn plane_box() -> BoxSpec {
    BoxSpec { intervals: vec![(-2.0, 2.0), (-2.0, 2.0)] }
}

#[test]
fn coverage_scan_covers_the_plane_box_completely() {
    let map = plane_map();
    let report = coverage_scan(&map, &plane_box(), 0.02, 1e6).unwrap();
    assert_eq!(report.net_size, 201 * 201);
    assert!(report.fully_covered(), "misses: {:?}", &report.misses[..report.misses.len().min(5)]);
    assert!(report.hits.iter().all(|h| h.residual <= 0.02));
    // Every recorded residual is recomputable from the report alone.
    assert!(reverify_coverage(&map, &report).unwrap());
}

#[test]
fn witnesses_exist_beyond_every_bound() {
    let map = plane_map();
    let mut points = Vec::new();
    for i in 0..5 {
        for j in 0..4 {
            points.push(vec![-2.0 + i as f64, -1.5 + j as f64]);
        }
    }
    let result = unboundedness_scan(&map, &points, &[10.0, 100.0, 1000.0], 2_000, 0.05).unwrap();
    assert_eq!(result.cases.len(), 60);
    assert!(result.all_pass());
    for case in &result.cases {
        let bound: f64 = case.expected.trim_start_matches("> ").parse().unwrap();
        let witness = parse_rational(&case.observed).unwrap();
        assert!(witness.to_f64().unwrap() > bound, "{}: {}", case.id, case.observed);
    }
}

#[test]
fn coverage_reports_are_deterministic_and_roundtrip() {
    let map = plane_map();
    let spec = BoxSpec { intervals: vec![(-1.0, 1.0), (-1.0, 1.0)] };
    let a = coverage_scan(&map, &spec, 0.25, 100.0).unwrap();
    let b = coverage_scan(&map, &spec, 0.25, 100.0).unwrap();
    let json_a = report_json(&a);
    assert_eq!(json_a, report_json(&b));
    assert!(!json_a.contains("wall_time"));
    let back: CoverageReport = serde_json::from_str(&json_a).unwrap();
    assert_eq!(report_json(&back), json_a);
    assert!(reverify_coverage(&map, &back).unwrap());
}

#[test]
fn a_net_too_fine_for_the_depth_budget_is_a_scan_error() {
    let result = coverage_scan(&plane_map(), &plane_box(), 1e-12, 100.0);
    match result {
        Err(VerifyError::Tiling(TilingError::ResolutionTooCoarse { .. })) => {}
        other => panic!("expected a resolution error, got {other:?}"),
    }
}

#[test]
fn every_named_suite_passes_and_reruns_byte_identically() {
    for name in SUITE_NAMES {
        let first = run_suite(name, 0).unwrap();
        let second = run_suite(name, 0).unwrap();
        assert!(
            first.all_pass(),
            "{name} failed: {:?}",
            first.cases.iter().filter(|c| !c.pass).collect::<Vec<_>>()
        );
        assert_eq!(report_json(&first), report_json(&second), "{name} not deterministic");
        assert_eq!(first.seed, 0);
        assert_eq!(first.suite, name);
    }
}

#[test]
fn random_composition_margin_holds_across_seeds() {
    for seed in [0u64, 1, 2] {
        let result = run_suite("lemma", seed).unwrap();
        assert_eq!(result.cases.len(), 20);
        assert!(result.all_pass(), "seed {seed}");
        for case in &result.cases {
            let expected: f64 = case.expected.parse().unwrap();
            let observed: f64 = case.observed.parse().unwrap();
            assert!((expected - observed).abs() <= 0.2);
        }
    }
}

#[test]
fn nets_combine_hits_and_misses_in_enumeration_order() {
    // A budget too small for the far corners forces genuine misses;
    // the report must still partition the net in order.
    let map = plane_map();
    let spec = BoxSpec { intervals: vec![(-2.0, 2.0), (-2.0, 2.0)] };
    let report = coverage_scan(&map, &spec, 0.5, 1.2).unwrap();
    let net = box_net(&spec, 0.5).unwrap();
    assert_eq!(report.hits.len() + report.misses.len(), net.len());
    assert!(!report.misses.is_empty());
    assert!(report.misses.iter().all(|m| m.reason.contains("budget")));
    assert!(reverify_coverage(&map, &report).unwrap());
}
