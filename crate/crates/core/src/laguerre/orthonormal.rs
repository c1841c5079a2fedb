//! Moment route: polynomials `q_j` orthonormal on `(0, alpha)` for the
//! weight `e^{-4nx}`, built from the Hankel matrix of exact moments in
//! double-double.
//!
//! The construction works in `y = x / alpha` on `(0, 1)` so the Hankel
//! entries stay of order one; `q_j(x) = alpha^{-1/2} r_j(x / alpha)` where
//! `r_j` is orthonormal for `e^{-4n alpha y}` on `(0, 1)`.

use crate::error::{Error, Result};
use crate::extprec::DDouble;
use crate::linalg::{Cholesky, Matrix};
use crate::specfun::exp_moments_in;

use super::exact::exact_products;

/// Largest `n` accepted by the moment route.
pub const MAX_N: usize = 16;

#[derive(Clone, Debug)]
pub struct OrthonormalBasis {
    pub n: usize,
    pub alpha: f64,
    /// Leading coefficients `theta_0 ..= theta_n`.
    pub theta: Vec<DDouble>,
    pub ln_theta: Vec<DDouble>,
    /// `coeffs[j][i]` is the coefficient of `x^i` in `q_j`.
    pub coeffs: Vec<Vec<DDouble>>,
    /// Coefficients of `r_j` in powers of `y = x / alpha`.
    scaled: Vec<Vec<DDouble>>,
}

fn check(n: usize, alpha: f64) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::Domain(format!("n = {n} must lie in 1..={MAX_N}")));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("alpha = {alpha} must be positive")));
    }
    Ok(())
}

/// Builds `q_0 ..= q_n` (the derivative identity needs `q_n`).
pub fn orthonormal_on_interval(n: usize, alpha: f64) -> Result<OrthonormalBasis> {
    check(n, alpha)?;
    let size = n + 1;
    let c = 4.0 * n as f64;
    let nu: Vec<DDouble> = exp_moments_in(2 * n, c * alpha, 1.0);
    let h = Matrix::from_fn(size, size, |j, k| nu[j + k]);
    let chol = Cholesky::factor(&h)?;
    let l = chol.lower();

    // rows of L^{-1} are the coefficient vectors of r_j
    let mut scaled = vec![vec![DDouble::ZERO; size]; size];
    for col in 0..size {
        for i in col..size {
            let mut s = if i == col { DDouble::ONE } else { DDouble::ZERO };
            for k in col..i {
                s -= l[(i, k)] * scaled[k][col];
            }
            scaled[i][col] = s / l[(i, i)];
        }
    }

    let a = DDouble::from_f64(alpha);
    let ln_a = a.ln_unchecked();
    let inv_sqrt_a = a.sqrt().recip();
    let coeffs: Vec<Vec<DDouble>> = scaled
        .iter()
        .map(|row| {
            let mut p = inv_sqrt_a;
            row.iter()
                .map(|&r| {
                    let v = r * p;
                    p = p / a;
                    v
                })
                .collect()
        })
        .collect();
    let ln_theta: Vec<DDouble> = (0..size)
        .map(|j| -l[(j, j)].ln_unchecked() - ln_a.mul_f64(j as f64 + 0.5))
        .collect();
    let theta = (0..size).map(|j| coeffs[j][j]).collect();
    Ok(OrthonormalBasis {
        n,
        alpha,
        theta,
        ln_theta,
        coeffs,
        scaled,
    })
}

impl OrthonormalBasis {
    /// `(r_j(y), r_j'(y))` by Horner.
    fn eval_scaled(&self, j: usize, y: DDouble) -> (DDouble, DDouble) {
        let c = &self.scaled[j];
        let mut p = DDouble::ZERO;
        let mut dp = DDouble::ZERO;
        for &ci in c[..=j].iter().rev() {
            dp = dp * y + p;
            p = p * y + ci;
        }
        (p, dp)
    }

    /// `(q_j(x), q_j'(x))`.
    pub fn eval(&self, j: usize, x: DDouble) -> (DDouble, DDouble) {
        let a = DDouble::from_f64(self.alpha);
        let (p, dp) = self.eval_scaled(j, x / a);
        let s = a.sqrt();
        (p / s, dp / (s * a))
    }
}

/// `ln D_n(alpha) = -2 sum_{j<n} ln theta_j - ln C_n`.
pub fn gap_log_det_theta(n: usize, alpha: f64) -> Result<f64> {
    Ok(gap_log_det_theta_dd(n, alpha)?.to_f64())
}

pub fn gap_log_det_theta_dd(n: usize, alpha: f64) -> Result<DDouble> {
    let basis = orthonormal_on_interval(n, alpha)?;
    let sum: DDouble = basis.ln_theta[..n].iter().copied().sum();
    Ok(-sum.mul_f64(2.0) - exact_products(n)?.ln_c_n)
}

/// `d/dalpha ln D_n = (theta_{n-1}/theta_n) e^{-4n alpha}
/// (q_n' q_{n-1} - q_n q_{n-1}')(alpha)`.
pub fn dlog_gap_cd(n: usize, alpha: f64) -> Result<f64> {
    Ok(dlog_gap_cd_dd(n, alpha)?.to_f64())
}

pub fn dlog_gap_cd_dd(n: usize, alpha: f64) -> Result<DDouble> {
    let b = orthonormal_on_interval(n, alpha)?;
    // in the scaled variable: (1/alpha) (c_{n-1}/c_n) (r_n' r_{n-1} - r_n r_{n-1}')(1)
    let (rn, drn) = b.eval_scaled(n, DDouble::ONE);
    let (rm, drm) = b.eval_scaled(n - 1, DDouble::ONE);
    let ratio = b.scaled[n - 1][n - 1] / b.scaled[n][n];
    let weight = DDouble::from_f64(-4.0 * n as f64 * alpha).exp()?;
    Ok(ratio * weight * (drn * rm - rn * drm) / DDouble::from_f64(alpha))
}
