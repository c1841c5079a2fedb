//! `A_n = (1/n!) int_{[-1,1]^n} prod_{i<j} (t_i - t_j)^2 dt` and the
//! normalization `C_n = (4n)^{-n^2} prod_{k<n} k!^2`, in log form.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extprec::DDouble;

pub const MAX_N: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExactProducts {
    pub n: usize,
    pub ln_a_n: DDouble,
    pub ln_c_n: DDouble,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExactProductsReport {
    pub n: usize,
    pub ln_a_n: f64,
    pub ln_c_n: f64,
}

impl ExactProducts {
    pub fn report(&self) -> ExactProductsReport {
        ExactProductsReport {
            n: self.n,
            ln_a_n: self.ln_a_n.to_f64(),
            ln_c_n: self.ln_c_n.to_f64(),
        }
    }
}

/// `ln 0!, ln 1!, ..., ln m!` by direct summation of `ln j`.
pub fn ln_factorials(m: usize) -> Vec<DDouble> {
    let mut out = Vec::with_capacity(m + 1);
    let mut acc = DDouble::ZERO;
    out.push(acc);
    for j in 1..=m {
        acc += DDouble::from_f64(j as f64).ln_unchecked();
        out.push(acc);
    }
    out
}

pub fn exact_products(n: usize) -> Result<ExactProducts> {
    if n == 0 || n > MAX_N {
        return Err(Error::Domain(format!("n = {n} must lie in 1..={MAX_N}")));
    }
    let lf = ln_factorials(2 * n);
    let ln2 = DDouble::LN_2;
    let mut ln_a = DDouble::ZERO;
    let mut sum_lf = DDouble::ZERO;
    for k in 0..n {
        ln_a += ln2.mul_f64(2.0 * k as f64 + 1.0) + lf[k].mul_f64(4.0) - lf[2 * k].mul_f64(2.0)
            - DDouble::from_f64(2.0 * k as f64 + 1.0).ln_unchecked();
        sum_lf += lf[k];
    }
    let nf = n as f64;
    let ln_4n = DDouble::from_f64(4.0 * nf).ln_unchecked();
    let ln_c = sum_lf.mul_f64(2.0) - ln_4n * DDouble::product_f64(nf, nf);
    Ok(ExactProducts {
        n,
        ln_a_n: ln_a,
        ln_c_n: ln_c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gauss_legendre;

    #[test]
    fn small_cases() {
        let p1 = exact_products(1).unwrap();
        assert!((p1.ln_a_n.to_f64() - 2f64.ln()).abs() < 1e-16);
        assert!((p1.ln_c_n.to_f64() - 0.25f64.ln()).abs() < 1e-16);
        let p2 = exact_products(2).unwrap();
        assert!((p2.ln_a_n.to_f64() - (4.0f64 / 3.0).ln()).abs() < 1e-16);
    }

    #[test]
    fn brute_force_integrals() {
        let r = gauss_legendre(6, -1.0, 1.0);
        let pts: Vec<(f64, f64)> = r.nodes.iter().copied().zip(r.weights.iter().copied()).collect();
        let mut a2 = 0.0;
        let mut a3 = 0.0;
        for &(t0, w0) in &pts {
            for &(t1, w1) in &pts {
                a2 += w0 * w1 * (t0 - t1).powi(2) / 2.0;
                for &(t2, w2) in &pts {
                    a3 += w0 * w1 * w2 * ((t0 - t1) * (t0 - t2) * (t1 - t2)).powi(2) / 6.0;
                }
            }
        }
        assert!((exact_products(2).unwrap().ln_a_n.to_f64() - a2.ln()).abs() < 1e-14);
        assert!((exact_products(3).unwrap().ln_a_n.to_f64() - a3.ln()).abs() < 1e-14);
    }

    #[test]
    fn selberg_closed_form() {
        // A_n = 2^{n^2} / n! prod_{j<n} j!^2 (j+1)! / (n+j)!
        for &n in &[5usize, 20, 60] {
            let lf = ln_factorials(2 * n);
            let mut s = DDouble::LN_2.mul_f64((n * n) as f64) - lf[n];
            for j in 0..n {
                s += lf[j].mul_f64(2.0) + lf[j + 1] - lf[n + j];
            }
            let got = exact_products(n).unwrap().ln_a_n;
            assert!((got - s).abs().to_f64() <= 1e-24 * s.abs().to_f64().max(1.0), "n={n}");
        }
    }

    #[test]
    fn normalization_identity() {
        for &n in &[1usize, 7, 100] {
            let p = exact_products(n).unwrap();
            let lf = ln_factorials(n);
            let nf = n as f64;
            let direct: f64 = -nf * nf * (4.0 * nf).ln() + 2.0 * lf[..n].iter().map(|v| v.to_f64()).sum::<f64>();
            assert!((p.ln_c_n.to_f64() - direct).abs() <= 1e-12 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn bounds() {
        assert!(exact_products(0).is_err());
        assert!(exact_products(MAX_N + 1).is_err());
    }
}
