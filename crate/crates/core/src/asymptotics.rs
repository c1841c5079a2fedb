//! Closed-form asymptotic evaluators, residual tables and log-log fits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extprec::DDouble;
use crate::fredholm;
use crate::painleve::{self, HMSolution};
use crate::par::{self, ExecMode};
use crate::specfun::{chi_dd, zeta_prime_minus_one};

fn chi() -> f64 {
    chi_dd().to_f64()
}

fn zeta1() -> f64 {
    zeta_prime_minus_one().to_f64()
}

/// `-s^3/12 - ln(s)/8 + chi`.
pub fn thm1_rhs(s: f64) -> Result<f64> {
    thm1_rhs_with_chi(s, chi())
}

pub fn thm1_rhs_with_chi(s: f64, chi: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("s = {s} must be positive")));
    }
    Ok(-s * s * s / 12.0 - s.ln() / 8.0 + chi)
}

fn check_unit(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha = {alpha} must lie in (0, 1)")));
    }
    Ok(())
}

/// `n^2 (1 - alpha)^2 / alpha + alpha / (4 (1 - alpha^2))`.
pub fn lemma2_rhs(n: usize, alpha: f64) -> Result<f64> {
    check_unit(alpha)?;
    let nf = n as f64;
    let e = 1.0 - alpha;
    Ok(nf * nf * e * e / alpha + alpha / (4.0 * e * (1.0 + alpha)))
}

/// `rho = n |1 - alpha|^{3/2}`.
pub fn rho(n: usize, alpha: f64) -> f64 {
    n as f64 * (1.0 - alpha).abs().powf(1.5)
}

/// `(3/2 + ln alpha) n^2 - ln(n/2)/12 + zeta'(-1)`.
pub fn dal0_rhs(n: usize, alpha: f64) -> Result<f64> {
    if n == 0 || !(alpha > 0.0) {
        return Err(Error::Domain(format!("need n >= 1 and alpha > 0, got n = {n}, alpha = {alpha}")));
    }
    let nf = n as f64;
    Ok((1.5 + alpha.ln()) * nf * nf - (nf / 2.0).ln() / 12.0 + zeta1())
}

/// `3/2 + ln alpha - 2 alpha + alpha^2/2`. With `e = 1 - alpha` this is
/// `-sum_{k>=3} e^k / k`, summed directly near `alpha = 1` where the closed
/// form cancels.
fn intd2_bracket(alpha: f64) -> f64 {
    let e = 1.0 - alpha;
    if e.abs() > 0.5 {
        return 1.5 + alpha.ln() - 2.0 * alpha + 0.5 * alpha * alpha;
    }
    let mut acc = 0.0;
    let mut p = e * e;
    for k in 3..200 {
        p *= e;
        let term = p / k as f64;
        acc += term;
        if term.abs() <= 1e-18 * acc.abs() {
            break;
        }
    }
    -acc
}

/// `n^2 (3/2 + ln a - 2a + a^2/2) - ln(n)/12 - ln(1 - a^2)/8 + ln(2)/12 + zeta'(-1)`.
pub fn intd2_rhs(n: usize, alpha: f64) -> Result<f64> {
    check_unit(alpha)?;
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let nf = n as f64;
    let e = 1.0 - alpha;
    let ln_1ma2 = e.ln() + (1.0 + alpha).ln();
    Ok(nf * nf * intd2_bracket(alpha) - nf.ln() / 12.0 - ln_1ma2 / 8.0 + std::f64::consts::LN_2 / 12.0 + zeta1())
}

/// Two-term behaviour `sqrt(-y/2) (1 + 1/(8 y^3))` of the Hastings-McLeod
/// solution as `y -> -inf`.
pub fn hm_tail(y: f64) -> Result<f64> {
    if !(y < -1.0) {
        return Err(Error::Domain(format!("y = {y} must be below -1")));
    }
    Ok((-y / 2.0).sqrt() * (1.0 + 1.0 / (8.0 * y * y * y)))
}

fn ln_two_pi() -> DDouble {
    DDouble::PI.mul_f64(2.0).ln_unchecked()
}

/// `-n^2 ln 2 + n ln(2 pi) - ln(n)/4 + ln(2)/12 + 3 zeta'(-1)`.
pub fn aas_rhs(n: usize) -> DDouble {
    let nf = DDouble::from_f64(n as f64);
    -(nf.square() * DDouble::LN_2) + nf * ln_two_pi() - nf.ln_unchecked().div_f64(4.0)
        + DDouble::LN_2.div_f64(12.0)
        + zeta_prime_minus_one().mul_f64(3.0)
}

/// `-(3/2 + ln 4) n^2 + n ln(2 pi) - ln(n)/6 + 2 zeta'(-1)`.
pub fn cas_rhs(n: usize) -> DDouble {
    let nf = DDouble::from_f64(n as f64);
    let lead = DDouble::from_f64(1.5) + DDouble::LN_2.mul_f64(2.0);
    -(nf.square() * lead) + nf * ln_two_pi() - nf.ln_unchecked().div_f64(6.0)
        + zeta_prime_minus_one().mul_f64(2.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResidualRow {
    pub param: f64,
    pub computed: f64,
    pub rhs: f64,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
}

impl ResidualRow {
    pub fn new(param: f64, computed: f64, rhs: f64) -> Self {
        Self {
            param,
            computed,
            rhs,
            residual: computed - rhs,
            rho: None,
        }
    }

    pub fn with_rho(mut self, rho: f64) -> Self {
        self.rho = Some(rho);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub rms: f64,
    /// Rows dropped because their residual was exactly zero.
    pub excluded: usize,
}

/// Where `ln det(I - K_s)` comes from.
#[derive(Clone, Copy, Debug)]
pub enum Source<'a> {
    Painleve(&'a HMSolution),
    Fredholm { nodes: usize },
}

fn source_log_det(source: Source<'_>, s: f64) -> Result<f64> {
    match source {
        Source::Painleve(sol) => painleve::log_det_from_painleve(sol, s),
        Source::Fredholm { nodes } => {
            Ok(fredholm::airy_gap_log_det_with(ExecMode::Sequential, s, nodes)?.log_det)
        }
    }
}

/// Rows `(s, ln det(I - K_s), thm1_rhs(s), residual)` over `s_grid`.
pub fn residual_table(source: Source<'_>, s_grid: &[f64]) -> Result<Vec<ResidualRow>> {
    residual_table_with(ExecMode::default(), source, s_grid, chi())
}

pub fn residual_table_with(mode: ExecMode, source: Source<'_>, s_grid: &[f64], chi: f64) -> Result<Vec<ResidualRow>> {
    if let Some(bad) = s_grid.iter().find(|&&s| !(s > 0.0)) {
        return Err(Error::Domain(format!("s = {bad} must be positive")));
    }
    par::map_with(mode, s_grid, |&s| {
        Ok(ResidualRow::new(s, source_log_det(source, s)?, thm1_rhs_with_chi(s, chi)?))
    })
    .into_iter()
    .collect()
}

/// Ordinary least squares `y = intercept + slope x`, with the RMS residual.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    (intercept, slope, (ss / n).sqrt())
}

/// Least squares of `ln |residual|` against `ln param`.
pub fn slope_fit(rows: &[ResidualRow]) -> Result<SlopeFit> {
    let kept: Vec<&ResidualRow> = rows.iter().filter(|r| r.residual != 0.0).collect();
    if kept.len() < 2 {
        return Err(Error::Domain("slope fit needs two rows with nonzero residual".into()));
    }
    let xs: Vec<f64> = kept.iter().map(|r| r.param.ln()).collect();
    let ys: Vec<f64> = kept.iter().map(|r| r.residual.abs().ln()).collect();
    let (intercept, slope, rms) = linear_fit(&xs, &ys);
    Ok(SlopeFit {
        slope,
        intercept,
        rms,
        excluded: rows.len() - kept.len(),
    })
}

/// Fit of `ln det + s^3/12 + ln(s)/8` against `c + a s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConstantFit {
    pub a: f64,
    pub c: f64,
    pub rms: f64,
}

pub fn constant_fit(rows: &[ResidualRow]) -> ConstantFit {
    let xs: Vec<f64> = rows.iter().map(|r| r.param).collect();
    let ys: Vec<f64> = rows
        .iter()
        .map(|r| r.computed + r.param.powi(3) / 12.0 + r.param.ln() / 8.0)
        .collect();
    let (c, a, rms) = linear_fit(&xs, &ys);
    ConstantFit { a, c, rms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn thm1_simple_values() {
        assert_eq!(thm1_rhs(1.0).unwrap(), chi() - 1.0 / 12.0);
        let expect = -1000.0 / 12.0 - 10f64.ln() / 8.0 + chi();
        assert!((thm1_rhs(10.0).unwrap() - expect).abs() < 1e-13);
        assert!(thm1_rhs(0.0).is_err());
    }

    #[test]
    fn hm_tail_values() {
        assert_eq!(hm_tail(-2.0).unwrap(), 1.0 - 1.0 / 64.0);
        assert_eq!(hm_tail(-8.0).unwrap(), 2.0 * (1.0 - 1.0 / 4096.0));
        assert!(hm_tail(-0.5).is_err());
    }

    #[test]
    fn lemma2_near_one() {
        let a = 1.0 - 1e-3;
        let v = lemma2_rhs(10, a).unwrap();
        let exact = 100.0 * 1e-6 / a + a / (4.0 * (1.0 - a * a));
        assert!((v - exact).abs() <= 1e-9 * exact);
        assert!(lemma2_rhs(10, 1.0).is_err() && lemma2_rhs(10, 0.0).is_err());
    }

    #[test]
    fn bracket_root_of_dal0() {
        // 3/2 + ln alpha = 0 removes the n^2 dependence
        let a = (-1.5f64).exp();
        let d1 = dal0_rhs(3, a).unwrap() + (1.5f64).ln() / 12.0;
        let d2 = dal0_rhs(7, a).unwrap() + (3.5f64).ln() / 12.0;
        assert!((d1 - d2).abs() < 1e-13);
    }

    #[test]
    fn stable_bracket_matches_closed_form() {
        for &a in &[0.55, 0.7, 0.9] {
            let direct = 1.5 + f64::ln(a) - 2.0 * a + 0.5 * a * a;
            assert!((intd2_bracket(a) - direct).abs() < 1e-15);
        }
    }

    #[test]
    fn edge_limit_of_intd2_is_thm1() {
        let s = 4.0;
        let gap = |n: usize| {
            let a = 1.0 - s / (2.0 * n as f64).powf(2.0 / 3.0);
            (intd2_rhs(n, a).unwrap() - thm1_rhs(s).unwrap()).abs()
        };
        let (g3, g6) = (gap(1000), gap(1_000_000));
        assert!(g6 < g3 && g6 < 1e-3, "{g3} {g6}");
    }

    #[test]
    fn exact_line_fit() {
        let rows: Vec<ResidualRow> = [6.0f64, 8.0, 10.0, 12.0]
            .iter()
            .map(|&s| ResidualRow::new(s, 7.0 * s.powf(-1.5), 0.0))
            .collect();
        let f = slope_fit(&rows).unwrap();
        assert!((f.slope + 1.5).abs() < 1e-10);
        assert!((f.intercept - 7f64.ln()).abs() < 1e-10);
        assert!(f.rms < 1e-12 && f.excluded == 0);
    }

    #[test]
    fn zero_rows_are_excluded() {
        let mut rows: Vec<ResidualRow> = [2.0f64, 3.0, 4.0].iter().map(|&s| ResidualRow::new(s, s.powi(-2), 0.0)).collect();
        rows.push(ResidualRow::new(5.0, 1.0, 1.0));
        let f = slope_fit(&rows).unwrap();
        assert_eq!(f.excluded, 1);
        assert!((f.slope + 2.0).abs() < 1e-12);
    }

    #[test]
    fn exact_products_asymptotic_forms_at_one() {
        // A_1 = 2, C_1 = 1/4; the forms are only asymptotic but must be finite
        assert!(aas_rhs(1).to_f64().is_finite() && cas_rhs(1).to_f64().is_finite());
    }

    proptest! {
        #[test]
        fn lemma2_algebra(n in 1usize..500, a in 0.01f64..0.99) {
            let v = lemma2_rhs(n, a).unwrap();
            let nf = n as f64;
            let lhs = v * a - nf * nf * (1.0 - a) * (1.0 - a);
            let rhs = a * a / (4.0 * (1.0 - a * a));
            prop_assert!((lhs - rhs).abs() <= 1e-9 * (nf * nf).max(1.0));
        }

        #[test]
        fn intd2_minus_dal0(n in 1usize..300, a in 0.01f64..0.95) {
            let d = intd2_rhs(n, a).unwrap() - dal0_rhs(n, a).unwrap();
            let nf = n as f64;
            let e = nf * nf * (-2.0 * a + a * a / 2.0) - (1.0 - a * a).ln() / 8.0;
            prop_assert!((d - e).abs() <= 1e-9 * (nf * nf).max(1.0));
        }

        #[test]
        fn residual_row_identity(p in -10.0f64..10.0, c in -1e3f64..1e3, r in -1e3f64..1e3) {
            let row = ResidualRow::new(p, c, r);
            prop_assert_eq!(row.residual, c - r);
        }
    }
}
