//! Soft-edge limits: `D_n(1 - s/(2n)^{2/3}) -> det(I - K_s)` and the
//! Plancherel-Rotach approach of `omega_n` to `Ai`.

use super::basis::LaguerreBasis;
use super::gram::{default_nodes, gap_log_det_gram};
use crate::error::{Error, Result};
use crate::specfun::airy_ai_pair;

/// `alpha = 1 - s/(2n)^{2/3}`.
pub fn edge_alpha(n: usize, s: f64) -> f64 {
    1.0 - s / (2.0 * n as f64).powf(2.0 / 3.0)
}

/// `D_n(1 - s/(2n)^{2/3})`.
pub fn edge_scaled_gap(n: usize, s: f64, m_nodes: usize) -> Result<f64> {
    let scale = (2.0 * n as f64).powf(2.0 / 3.0);
    if !(s < scale) {
        return Err(Error::Domain(format!("s = {s} must be below (2n)^(2/3) = {scale}")));
    }
    Ok(gap_log_det_gram(n, edge_alpha(n, s), m_nodes)?.exp())
}

pub fn edge_scaled_gap_default(n: usize, s: f64) -> Result<f64> {
    edge_scaled_gap(n, s, default_nodes(n))
}

fn pr_value(n: usize, u: f64, signed: bool) -> Result<f64> {
    if !(u.abs() <= 3.0) {
        return Err(Error::Domain(format!("u = {u} must satisfy |u| <= 3")));
    }
    if n < 20 {
        return Err(Error::Domain(format!("n = {n} must be at least 20")));
    }
    let basis = LaguerreBasis::new(n)?;
    let nf = n as f64;
    let x = 1.0 + 1.0 / (2.0 * nf) + u / (2.0 * nf).powf(2.0 / 3.0);
    let w = basis.values(n, x)[n].0;
    let sign = if signed && n % 2 == 1 { -1.0 } else { 1.0 };
    let scaled = sign * (2.0 * nf).powf(1.0 / 3.0) / (2.0 * nf.sqrt()) * w;
    Ok((scaled - airy_ai_pair(u)?.0).abs())
}

/// `|(-1)^n ((2n)^{1/3} / (2 sqrt n)) omega_n(1 + 1/(2n) + u/(2n)^{2/3}) - Ai(u)|`.
pub fn plancherel_rotach_check(n: usize, u: f64) -> Result<f64> {
    pr_value(n, u, true)
}

/// Same deviation with the `(-1)^n` factor left out.
pub fn plancherel_rotach_unsigned(n: usize, u: f64) -> Result<f64> {
    pr_value(n, u, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plancherel_rotach_scaling() {
        let d200 = plancherel_rotach_check(200, 0.0).unwrap();
        assert!(d200 * 200f64.powf(2.0 / 3.0) <= 1.0, "{d200}");
        let ratio = plancherel_rotach_check(50, 1.0).unwrap() / plancherel_rotach_check(200, 1.0).unwrap();
        assert!((1.5..=4.5).contains(&ratio), "{ratio}");
    }

    #[test]
    fn sign_prefactor_matters_for_odd_n() {
        assert!(plancherel_rotach_unsigned(51, 0.0).unwrap() > 0.5);
        assert!(plancherel_rotach_check(51, 0.0).unwrap() < 0.05);
    }

    #[test]
    fn preconditions() {
        assert!(plancherel_rotach_check(10, 0.0).is_err());
        assert!(plancherel_rotach_check(50, 3.5).is_err());
        assert!(edge_scaled_gap(8, 10.0, 200).is_err());
    }

    #[test]
    fn decreasing_in_s() {
        let v: Vec<f64> = [1.0, 2.0, 3.0].iter().map(|&s| edge_scaled_gap(100, s, 600).unwrap()).collect();
        assert!(v[0] > v[1] && v[1] > v[2], "{v:?}");
        assert!(v.iter().all(|&d| d > 0.0 && d < 1.0));
    }
}
