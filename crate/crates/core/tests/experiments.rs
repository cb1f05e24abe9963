use std::process::Command;

use uipt::exact::ratio;
use uipt::experiment::{
    exp_degree, exp_free, exp_growth, exp_invariance, goodness_of_fit, two_sample, Bin, Expected, ExperimentReport,
    InvarianceKind, InvarianceParams, Status,
};
use uipt::{Error, TriType};

fn reroot(seed: u64) -> ExperimentReport {
    let p = InvarianceParams { samples: 2_000, vertices: 5, ..Default::default() };
    exp_invariance(InvarianceKind::Reroot, p, seed).unwrap()
}

#[test]
fn same_seed_same_report() {
    assert_eq!(exp_free(0, 5_000, 4).unwrap().to_json().unwrap(), exp_free(0, 5_000, 4).unwrap().to_json().unwrap());
    assert_eq!(reroot(9).to_json().unwrap(), reroot(9).to_json().unwrap());
    assert_eq!(reroot(9).to_csv().unwrap(), reroot(9).to_csv().unwrap());
    assert_ne!(reroot(9).observed, reroot(10).observed);
}

#[test]
fn report_carries_exact_expectations() {
    let r = exp_free(0, 5_000, 4).unwrap();
    let back: ExperimentReport = serde_json::from_str(&r.to_json().unwrap()).unwrap();
    assert_eq!(back, r);
    assert!(r.expected.iter().all(|e| !e.provenance.is_empty()));
    assert!(r.to_json().unwrap().contains("\"8/9\""));
    assert!(r.to_csv().unwrap().starts_with("name,free\n"));
}

#[test]
fn goodness_of_fit_on_a_fair_die() {
    let e: Vec<Expected> = (1..=6).map(|k| Expected::new(k.to_string(), ratio(1, 6), "fair die")).collect();
    let fair: Vec<Bin> = (1..=6).map(|k| Bin::new(k.to_string(), 1000)).collect();
    let s = goodness_of_fit(&fair, &e).unwrap();
    assert_eq!((s.chi_square, s.dof, s.p_value), (0.0, 5, 1.0));
    let mut loaded = fair.clone();
    loaded[0].count = 1300;
    loaded[5].count = 700;
    let s = goodness_of_fit(&loaded, &e).unwrap();
    assert!((s.chi_square - 180.0).abs() < 1e-9);
    assert!(s.p_value < 1e-30);
    assert!((s.tv - 0.05).abs() < 1e-12);
    assert!(two_sample(&fair, &loaded).unwrap().p_value < 1e-10);
}

#[test]
fn small_runs_flag_wide_intervals() {
    let r = exp_degree(TriType::TypeIII, 1_000, 3, 10_000).unwrap();
    let c = r.check("degree_3").unwrap();
    assert!(c.informational);
    assert!(r.notes.iter().any(|n| n.contains("wide confidence interval")));
    assert_ne!(r.status, Status::UnresolvedFailure);
}

#[test]
fn refusals() {
    assert!(exp_free(0, 10, 1).is_err());
    let p = InvarianceParams { samples: 1_000, vertices: 7, ..Default::default() };
    assert!(matches!(exp_invariance(InvarianceKind::Reroot, p, 1), Err(Error::BoundExceeded { .. })));
    assert!(exp_growth(21, 10, 1, 1000).is_err());
}

#[test]
fn growth_starts_at_one_vertex() {
    let r = exp_growth(3, 50, 2, 1_000_000).unwrap();
    let ball = r.series("ball_mean").unwrap();
    assert_eq!(ball[0], 1.0);
    assert!(ball.windows(2).all(|w| w[0] < w[1]));
    assert!(r.check("balls_nested").unwrap().passed);
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_uipt")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn cli_exit_codes() {
    let (code, out) = cli(&["experiment", "free", "--samples", "20000", "--seed", "5"]);
    assert_eq!(code, 0);
    let rep: ExperimentReport = serde_json::from_str(&out).unwrap();
    assert_eq!(rep.status, Status::Pass);
    let (code, _) = cli(&["experiment", "reroot", "--vertices", "7", "--samples", "1000"]);
    assert_eq!(code, 1);
    let (code, out) = cli(&["count", "2", "1", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"count\": \"4\""));
    let (code, out) = cli(&["--format", "csv", "zvalue", "2", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("z,9/8"));
}

#[test]
fn cli_reports_statistical_failure() {
    // A sample too small to pin the two-sample distance below the threshold.
    let (code, out) = cli(&["experiment", "policy", "--samples", "1000", "--seed", "2"]);
    let rep: ExperimentReport = serde_json::from_str(&out).unwrap();
    assert_eq!(code, rep.status.exit_code());
    assert_eq!(rep.status, Status::StatisticalFailure);
}
