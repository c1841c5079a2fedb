//! Scaled Laguerre wavefunctions `omega_k(x) = e^{-2nx} p_k(x)` with
//! `p_k(x) = 2 sqrt(n) L_k(4nx)`, orthonormal for the weight `e^{-4nx}` on
//! `(0, inf)`, and the Christoffel-Darboux kernel built from them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::real::Real;

/// Real number held as `sign * exp(ln_abs)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SignedLog {
    pub ln_abs: f64,
    pub sign: i8,
}

#[derive(Clone, Debug)]
pub struct LaguerreBasis {
    n: usize,
    kappa: Vec<SignedLog>,
}

/// Separation below which `cd_kernel` uses its diagonal form.
pub const DIAGONAL_SWITCH: f64 = 1e-6;

impl LaguerreBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        let nf = n as f64;
        let mut kappa = Vec::with_capacity(n + 1);
        let mut ln_fact = 0.0;
        for k in 0..=n {
            if k > 0 {
                ln_fact += (k as f64).ln();
            }
            kappa.push(SignedLog {
                ln_abs: std::f64::consts::LN_2 + 0.5 * nf.ln() + k as f64 * (4.0 * nf).ln() - ln_fact,
                sign: if k % 2 == 0 { 1 } else { -1 },
            });
        }
        Ok(Self { n, kappa })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Leading coefficient of `p_k`.
    pub fn kappa(&self, k: usize) -> SignedLog {
        self.kappa[k]
    }

    /// `(omega_k(x), omega_k'(x))` for `k = 0..=k_max`.
    pub fn values_in<T: Real>(&self, k_max: usize, x: T) -> Vec<(T, T)> {
        let nf = self.n as f64;
        let t = x * T::from_f64(4.0 * nf);
        let norm = T::from_f64(4.0 * nf).sqrt();
        let half = t * T::from_f64(0.5);

        // The weight e^{-t/2} goes into the seeds. Its logarithm is carried
        // separately so the recurrence survives when e^{-t/2} underflows.
        let mut ln_scale = -half.to_f64();
        let mut scale = if ln_scale > -700.0 { (-half).exp() } else { T::zero() };
        let mut prev = T::zero();
        let mut cur = T::one();
        let mut out = Vec::with_capacity(k_max + 1);
        let tf = t.to_f64();
        for k in 0..=k_max {
            if k == 1 {
                prev = cur;
                cur = T::one() - t;
            } else if k > 1 {
                let kf = (k - 1) as f64;
                let next = (T::from_f64(2.0 * kf + 1.0) - t) * cur - T::from_f64(kf) * prev;
                prev = cur;
                cur = next / T::from_f64(kf + 1.0);
            }
            let mag = cur.to_f64().abs();
            if mag > 1e150 {
                let r = T::from_f64(1e-150);
                cur *= r;
                prev *= r;
                ln_scale += 150.0 * std::f64::consts::LN_10;
                scale = if ln_scale > -700.0 {
                    if ln_scale < 700.0 {
                        (-half + T::from_f64(ln_scale + half.to_f64())).exp()
                    } else {
                        T::from_f64(f64::INFINITY)
                    }
                } else {
                    T::zero()
                };
            }
            // t L_k' = k (L_k - L_{k-1}); L_k'(0) = -k
            let dl = if tf == 0.0 {
                T::from_f64(-(k as f64)) * cur
            } else if k == 0 {
                T::zero()
            } else {
                T::from_f64(k as f64) * (cur - prev) / t
            };
            let w = norm * scale * cur;
            // d/dx = 4n d/dt, and d/dt [e^{-t/2} L] = e^{-t/2} (L' - L/2)
            let dw = norm * scale * (dl - cur * T::from_f64(0.5)) * T::from_f64(4.0 * nf);
            out.push((w, dw));
        }
        out
    }

    pub fn values(&self, k_max: usize, x: f64) -> Vec<(f64, f64)> {
        self.values_in(k_max, x)
    }
}

/// `(omega_k(x), omega_k'(x))`.
pub fn wavefunction(basis: &LaguerreBasis, k: usize, x: f64) -> Result<(f64, f64)> {
    if k > basis.n() {
        return Err(Error::Domain(format!("index {k} exceeds n = {}", basis.n())));
    }
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("x = {x} must be non-negative")));
    }
    Ok(basis.values(k, x)[k])
}

/// Christoffel-Darboux kernel
/// `K_n(x, y) = (omega_n(x) omega_{n-1}(y) - omega_n(y) omega_{n-1}(x)) / (4 (y - x))`.
pub fn cd_kernel_in<T: Real>(basis: &LaguerreBasis, x: T, y: T) -> T {
    let n = basis.n();
    let vx = basis.values_in(n, x);
    let (wn_x, dwn_x) = vx[n];
    let (wm_x, dwm_x) = vx[n - 1];
    if (x - y).abs().to_f64() <= DIAGONAL_SWITCH {
        if x == y {
            return (wn_x * dwm_x - dwn_x * wm_x) * T::from_f64(0.25);
        }
        // diagonal form at the midpoint
        let c = (x + y) * T::from_f64(0.5);
        let vc = basis.values_in(n, c);
        let (a, da) = vc[n];
        let (b, db) = vc[n - 1];
        return (a * db - da * b) * T::from_f64(0.25);
    }
    let vy = basis.values_in(n, y);
    let (wn_y, _) = vy[n];
    let (wm_y, _) = vy[n - 1];
    (wn_x * wm_y - wn_y * wm_x) / ((y - x) * T::from_f64(4.0))
}

pub fn cd_kernel(basis: &LaguerreBasis, x: f64, y: f64) -> Result<f64> {
    if !(x >= 0.0 && y >= 0.0) {
        return Err(Error::Domain(format!("kernel arguments ({x}, {y}) must be non-negative")));
    }
    Ok(cd_kernel_in(basis, x, y))
}
