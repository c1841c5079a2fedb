//! The Painleve and Nystrom routes to `ln det(I - K_s)` against each other.

use std::sync::OnceLock;

use airy_gap::asymptotics::{self, residual_table_with, Source};
use airy_gap::fredholm::{self, airy_gap_sweep};
use airy_gap::painleve::{self, HMSolution};
use airy_gap::par::ExecMode;
use airy_gap::specfun::chi_dd;
use airy_gap::verify;

fn sol() -> &'static HMSolution {
    static SOL: OnceLock<HMSolution> = OnceLock::new();
    SOL.get_or_init(|| verify::hastings_mcleod().unwrap())
}

#[test]
fn residuals_agree_between_sources() {
    let chi = chi_dd().to_f64();
    let grid = [4.0, 6.0];
    let p = residual_table_with(ExecMode::Sequential, Source::Painleve(sol()), &grid, chi).unwrap();
    let f = residual_table_with(ExecMode::Sequential, Source::Fredholm { nodes: 80 }, &grid, chi).unwrap();
    for (a, b) in p.iter().zip(&f) {
        assert_eq!(a.param, b.param);
        assert!((a.residual - b.residual).abs() <= 1e-8, "{a:?} {b:?}");
    }
}

#[test]
fn gap_at_zero_matches_tw() {
    let g = fredholm::airy_gap_log_det(0.0, 80).unwrap();
    let tw = painleve::tw_log_cdf(sol(), 0.0).unwrap();
    assert!((g.log_det - tw.log_cdf).abs() <= 1e-8);
    assert!(g.est_error <= 1e-12);
}

#[test]
fn tw_cdf_regression_points() {
    let f = |x: f64| painleve::tw_log_cdf(sol(), x).unwrap().cdf;
    assert!((f(-2.0) - 0.413224142505).abs() <= 1e-11);
    assert!((f(-1.0) - 0.807214241999).abs() <= 1e-11);
}

#[test]
fn sweep_order_and_determinism() {
    let grid = [3.0, -1.0, 0.5, 2.0];
    let seq = airy_gap_sweep(ExecMode::Sequential, &grid, 40).unwrap();
    let par = airy_gap_sweep(ExecMode::Parallel, &grid, 40).unwrap();
    assert_eq!(seq, par);
    for (g, &s) in seq.iter().zip(&grid) {
        assert_eq!(g.s, s);
    }
}

#[test]
fn residual_tables_are_monotone() {
    let grid: Vec<f64> = (6..=12).map(f64::from).collect();
    let rows = asymptotics::residual_table(Source::Painleve(sol()), &grid).unwrap();
    assert!(rows.iter().all(|r| r.residual > 0.0));
    assert!(rows.windows(2).all(|w| w[1].residual < w[0].residual));
}

#[test]
fn residual_decay_is_faster_than_stated() {
    // The residual against chi decays like s^-3, faster than the s^-3/2
    // allowance of the expansion; the leading coefficient is 3/64.
    for s in [10.0, 11.0, 12.0] {
        let r = painleve::asb_residual(sol(), s).unwrap();
        let c = r * s * s * s;
        assert!((c - 3.0 / 64.0).abs() <= 0.02, "s = {s}: {c}");
    }
}
