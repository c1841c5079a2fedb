//! Nystrom evaluation of `ln det(I - K_s)` for the Airy kernel on `(-s, inf)`.
//!
//! The interval is truncated at `T = max(-s, 0) + 14` and discretized with a
//! Gauss-Legendre rule. For `s` around 8 the top eigenvalue of `K_s` is within
//! `1e-8` of one, so `I - A` loses eight digits to cancellation; nodes,
//! weights, Airy values and the factorization are all carried in
//! [`DDouble`] to keep the result good to native precision.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extprec::DDouble;
use crate::linalg::{lu_log_abs_det, Cholesky, Matrix};
use crate::par::{self, ExecMode};
use crate::specfun::{airy_ai_pair_dd, gauss_legendre_dd};

pub use crate::linalg::logdet_sym;

pub const DEFAULT_NODES: usize = 80;
/// Offset of the truncation point beyond `max(-s, 0)`.
pub const TRUNCATION_OFFSET: f64 = 14.0;
/// Below this separation the kernel switches to its diagonal expansion.
pub const DIAGONAL_SWITCH: f64 = 1e-6;

/// Weighted Nystrom matrix `A_ij = sqrt(w_i) K(x_i, x_j) sqrt(w_j)`.
#[derive(Clone, Debug)]
pub struct KernelMatrix {
    pub s: f64,
    pub m: usize,
    pub t: f64,
    pub nodes: Vec<DDouble>,
    pub weights: Vec<DDouble>,
    pub a: Matrix<DDouble>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GapDeterminant {
    pub s: f64,
    pub log_det: f64,
    pub est_error: f64,
    pub nodes: usize,
}

fn kernel_from_values(x: DDouble, y: DDouble, fx: (DDouble, DDouble), fy: (DDouble, DDouble)) -> DDouble {
    let (ax, apx) = fx;
    let (ay, apy) = fy;
    (ax * apy - ay * apx) / (x - y)
}

/// Diagonal expansion at the midpoint `c` with half-separation `d`:
/// `K = Ai'^2 - c Ai^2 + d^2 [Ai Ai'/3 + 2c Ai'^2/3 - 2c^2 Ai^2/3] + O(d^4)`.
fn kernel_near_diagonal(c: DDouble, d: DDouble) -> Result<DDouble> {
    let (a, ap) = airy_ai_pair_dd(c)?;
    let base = ap.square() - c * a.square();
    let corr = (a * ap + (c * ap.square()).mul_f64(2.0) - (c.square() * a.square()).mul_f64(2.0)).div_f64(3.0);
    Ok(base + d.square() * corr)
}

/// Airy kernel `K(x, y)` in double-double.
pub fn airy_kernel_dd(x: DDouble, y: DDouble) -> Result<DDouble> {
    let diff = x - y;
    if diff.abs().to_f64() <= DIAGONAL_SWITCH {
        return kernel_near_diagonal((x + y).mul_f64(0.5), diff.mul_f64(0.5));
    }
    Ok(kernel_from_values(x, y, airy_ai_pair_dd(x)?, airy_ai_pair_dd(y)?))
}

/// Airy kernel `K(x, y) = (Ai(x) Ai'(y) - Ai(y) Ai'(x)) / (x - y)`.
pub fn airy_kernel(x: f64, y: f64) -> Result<f64> {
    Ok(airy_kernel_dd(DDouble::from_f64(x), DDouble::from_f64(y))?.to_f64())
}

fn check_args(s: f64, m: usize) -> Result<()> {
    if !(s >= -20.0 && s <= 30.0) {
        return Err(Error::Domain(format!("s = {s} must lie in [-20, 30]")));
    }
    if m < 20 {
        return Err(Error::Domain(format!("node count {m} must be at least 20")));
    }
    Ok(())
}

/// Assembles the Nystrom matrix, evaluating rows in parallel when `mode` allows.
pub fn kernel_matrix_with(mode: ExecMode, s: f64, m: usize) -> Result<KernelMatrix> {
    check_args(s, m)?;
    let t = (-s).max(0.0) + TRUNCATION_OFFSET;
    let rule = gauss_legendre_dd(m, DDouble::from_f64(-s), DDouble::from_f64(t));
    let nodes = rule.nodes;
    let weights = rule.weights;
    let values: Vec<(DDouble, DDouble)> =
        par::map_with(mode, &nodes, |&x| airy_ai_pair_dd(x)).into_iter().collect::<Result<_>>()?;
    let roots: Vec<DDouble> = weights.iter().map(|w| w.sqrt()).collect();
    let rows: Vec<Vec<DDouble>> = par::map_range(mode, m, |i| {
        (0..m)
            .map(|j| {
                let k = if i == j {
                    let (a, ap) = values[i];
                    Ok(ap.square() - nodes[i] * a.square())
                } else if (nodes[i] - nodes[j]).abs().to_f64() <= DIAGONAL_SWITCH {
                    airy_kernel_dd(nodes[i], nodes[j])
                } else {
                    Ok(kernel_from_values(nodes[i], nodes[j], values[i], values[j]))
                };
                k.map(|k| roots[i] * k * roots[j])
            })
            .collect::<Result<Vec<_>>>()
    })
    .into_iter()
    .collect::<Result<_>>()?;
    Ok(KernelMatrix {
        s,
        m,
        t,
        nodes,
        weights,
        a: Matrix::from_rows(rows),
    })
}

pub fn kernel_matrix(s: f64, m: usize) -> Result<KernelMatrix> {
    kernel_matrix_with(ExecMode::default(), s, m)
}

impl KernelMatrix {
    /// `I - A`.
    pub fn complement(&self) -> Matrix<DDouble> {
        Matrix::from_fn(self.m, self.m, |i, j| {
            let id = if i == j { DDouble::ONE } else { DDouble::ZERO };
            id - self.a[(i, j)]
        })
    }

    /// `ln det(I - A)` by LU with partial pivoting. A Cholesky factorization
    /// of `I - A` must also succeed, confirming the spectrum lies in `[0, 1)`.
    pub fn log_det(&self) -> Result<DDouble> {
        let c = self.complement();
        Cholesky::factor(&c).map_err(|e| {
            Error::Discretization(format!("I - A not positive definite at s = {}, m = {}: {e}", self.s, self.m))
        })?;
        let (ld, sign) = lu_log_abs_det(&c);
        if sign != 1 {
            return Err(Error::Discretization(format!(
                "det(I - A) has sign {sign} at s = {}, m = {}",
                self.s, self.m
            )));
        }
        Ok(ld)
    }

    /// `sum_i w_i K(x_i, x_i)`, the discretized trace of `K_s`.
    pub fn trace(&self) -> f64 {
        (0..self.m).map(|i| self.a[(i, i)]).sum::<DDouble>().to_f64()
    }
}

pub fn airy_gap_log_det_with(mode: ExecMode, s: f64, m: usize) -> Result<GapDeterminant> {
    let coarse = kernel_matrix_with(mode, s, m)?.log_det()?;
    let fine = kernel_matrix_with(mode, s, 2 * m)?.log_det()?;
    Ok(GapDeterminant {
        s,
        log_det: coarse.to_f64(),
        est_error: (coarse - fine).abs().to_f64(),
        nodes: m,
    })
}

/// `ln det(I - K_s)` with an `m`-node rule; `est_error` compares against `2m`.
pub fn airy_gap_log_det(s: f64, m: usize) -> Result<GapDeterminant> {
    airy_gap_log_det_with(ExecMode::default(), s, m)
}

/// Evaluates a sweep of `s` values; output order follows `s_grid`.
pub fn airy_gap_sweep(mode: ExecMode, s_grid: &[f64], m: usize) -> Result<Vec<GapDeterminant>> {
    // parallelism goes to the sweep; each point assembles sequentially
    par::map_with(mode, s_grid, |&s| airy_gap_log_det_with(ExecMode::Sequential, s, m))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::airy_ai_pair;

    #[test]
    fn diagonal_at_origin() {
        let (_, ap) = airy_ai_pair(0.0).unwrap();
        assert!((airy_kernel(0.0, 0.0).unwrap() - ap * ap).abs() < 1e-16);
    }

    #[test]
    fn symmetric() {
        assert_eq!(airy_kernel(0.3, -1.1).unwrap(), airy_kernel(-1.1, 0.3).unwrap());
    }

    #[test]
    fn near_diagonal_continuity() {
        let on = airy_kernel(1.0, 1.0).unwrap();
        let off = airy_kernel(1.0, 1.0 + 1e-6).unwrap();
        assert!((on - off).abs() <= 1e-8);
        // both branches agree at the switch
        let (x, y) = (DDouble::ONE, DDouble::ONE + DDouble::from_f64(1e-6));
        let exact = kernel_from_values(x, y, airy_ai_pair_dd(x).unwrap(), airy_ai_pair_dd(y).unwrap());
        let series = kernel_near_diagonal((x + y).mul_f64(0.5), (x - y).mul_f64(0.5)).unwrap();
        assert!((exact - series).abs().to_f64() <= 1e-24);
    }

    #[test]
    fn matrix_is_symmetric() {
        let k = kernel_matrix(2.0, 30).unwrap();
        assert!(k.a.asymmetry() <= 1e-14);
        assert_eq!(k.t, 14.0);
    }

    #[test]
    fn decay_region_is_bounded_by_trace() {
        let g = airy_gap_log_det(-6.0, 40).unwrap();
        let tr = kernel_matrix(-6.0, 40).unwrap().trace();
        assert!(g.log_det <= 0.0 && g.log_det.abs() < 1e-6);
        assert!(g.log_det >= -tr / (1.0 - tr) - 1e-18);
    }

    #[test]
    fn spectral_convergence_at_two() {
        let a = kernel_matrix(2.0, 60).unwrap().log_det().unwrap();
        let b = kernel_matrix(2.0, 120).unwrap().log_det().unwrap();
        assert!((a - b).abs().to_f64() <= 1e-10);
    }

    #[test]
    fn decreasing_in_s() {
        let v: Vec<f64> = [-4.0, -2.0, 0.0, 2.0, 4.0, 6.0]
            .iter()
            .map(|&s| kernel_matrix(s, 60).unwrap().log_det().unwrap().to_f64())
            .collect();
        assert!(v.windows(2).all(|p| p[1] < p[0]), "{v:?}");
        assert!(v.iter().all(|&l| l < 0.0));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(airy_gap_log_det(-21.0, 80), Err(Error::Domain(_))));
        assert!(matches!(airy_gap_log_det(0.0, 10), Err(Error::Domain(_))));
    }
}
