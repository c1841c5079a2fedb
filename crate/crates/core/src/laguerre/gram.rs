//! Quadrature route: `D_n(alpha) = det G` with
//! `G_jk = int_0^alpha omega_j omega_k dx`, integrated by an `m`-node
//! Gauss-Legendre rule on `(0, alpha)`.
//!
//! `G` routinely has eigenvalues far below the working precision (at
//! `n = 120, alpha = 0.3`, `ln det G` is about `-3700`), so it is never
//! factored as a dense matrix in the monomial-like basis `omega_j`. Since the
//! `omega_j` span `e^{-2nx}` times polynomials of degree `< n`, `G` factors
//! through the polynomials orthonormal for the discretized measure
//! `sum_i w_i e^{-4n x_i} delta_{x_i}`. Their recurrence coefficients come
//! from a Lanczos reduction of the nodes and weights (Gragg-Harrod rotations),
//! which is stable however small the eigenvalues of `G` are. Then
//! `ln det G = sum_{j<n} ln h_j - ln C_n` with `h_j = b_0 ... b_j`, and
//! `psi(alpha)^T G^{-1} psi(alpha) = e^{-4n alpha} sum_{j<n} q_j(alpha)^2`.
//!
//! The discrete weights span a factor `e^{-4n alpha}`, which leaves the
//! exponent range of a double once `4n alpha` passes about 700. Beyond
//! [`LANCZOS_RANGE`] the system falls back to a Householder factorization of
//! the weighted sample matrix, which is accurate as long as `G` is not close
//! to singular; this is the soft-edge regime, where `D_n` is of order one.

use serde::Serialize;

use super::basis::LaguerreBasis;
use crate::error::{Error, Result};
use crate::extprec::DDouble;
use crate::linalg::{forward_lower, qr_r, Matrix};
use crate::real::Real;
use crate::specfun::{gauss_legendre, gauss_legendre_dd, QuadratureRule};

/// Minimum node count `max(200, 6n)`.
pub fn default_nodes(n: usize) -> usize {
    200.max(6 * n)
}

/// Gauss-Legendre rule on `(0, b)` in the scalar type of the computation.
pub trait RuleSource: Real {
    fn rule(m: usize, b: f64) -> QuadratureRule<Self>;
}

impl RuleSource for f64 {
    fn rule(m: usize, b: f64) -> QuadratureRule<f64> {
        gauss_legendre(m, 0.0, b)
    }
}

impl RuleSource for DDouble {
    fn rule(m: usize, b: f64) -> QuadratureRule<DDouble> {
        gauss_legendre_dd(m, DDouble::ZERO, DDouble::from_f64(b))
    }
}

fn check(n: usize, alpha: f64, m_nodes: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("alpha = {alpha} must be positive")));
    }
    if m_nodes < default_nodes(n) {
        return Err(Error::Domain(format!(
            "m_nodes = {m_nodes} below the minimum {} for n = {n}",
            default_nodes(n)
        )));
    }
    Ok(())
}

/// Recurrence coefficients `(a_k, b_k)`, `k < count`, of the monic
/// polynomials orthogonal for the discrete measure `sum_i w_i delta_{x_i}`;
/// `b_0` is the total mass. Gragg-Harrod rotations, `O(m^2)`.
pub fn lanczos<T: Real>(nodes: &[T], weights: &[T], count: usize) -> (Vec<T>, Vec<T>) {
    let m = nodes.len();
    assert!(count <= m && weights.len() == m);
    let mut p0: Vec<T> = nodes.to_vec();
    let mut p1 = vec![T::zero(); m];
    p1[0] = weights[0];
    for k in 0..m - 1 {
        let mut pk = weights[k + 1];
        let mut gam = T::one();
        let mut sig = T::zero();
        let mut t = T::zero();
        let lam = nodes[k + 1];
        for l in 0..=k + 1 {
            let rho = p1[l] + pk;
            let tmp = gam * rho;
            let tsig = sig;
            if rho <= T::zero() {
                gam = T::one();
                sig = T::zero();
            } else {
                gam = p1[l] / rho;
                sig = pk / rho;
            }
            let tk = sig * (p0[l] - lam) - gam * t;
            p0[l] -= tk - t;
            t = tk;
            // t * (t / sig) rather than t^2 / sig: t^2 underflows for
            // weights near the bottom of the exponent range
            pk = if sig <= T::zero() { tsig * p1[l] } else { t * (t / sig) };
            p1[l] = tmp;
        }
    }
    p0.truncate(count);
    p1.truncate(count);
    (p0, p1)
}

/// Above this value of `4n alpha` the weights `e^{-4nx}` span more than the
/// exponent range of a double and the Lanczos reduction is not used.
pub const LANCZOS_RANGE: f64 = 640.0;
/// The dense route is accepted while `ln det G` stays above this. Its
/// accuracy degrades gradually with the spread of the diagonal of `R`; it
/// still agrees with the recurrence to `1e-12` at `ln det G` near `-1000`
/// and fails outright near `-3700`.
pub const DENSE_FLOOR: f64 = -500.0;

#[derive(Clone, Debug)]
enum Factor<T> {
    /// Recurrence coefficients of the monic polynomials orthogonal for
    /// `e^{-4n(x - alpha/2)}` on `(0, alpha)`. Centering the exponent keeps
    /// the discrete weights representable; it rescales `b_0` only.
    Lanczos { a: Vec<T>, b: Vec<T> },
    /// Triangular factor of the weighted sample matrix.
    Dense { r: Matrix<T> },
}

#[derive(Clone, Debug)]
pub struct GramSystem<T = DDouble> {
    pub n: usize,
    pub alpha: f64,
    pub m_nodes: usize,
    factor: Factor<T>,
    basis: LaguerreBasis,
    rule: QuadratureRule<T>,
}

impl<T: RuleSource> GramSystem<T> {
    pub fn new(n: usize, alpha: f64, m_nodes: usize) -> Result<Self> {
        check(n, alpha, m_nodes)?;
        let basis = LaguerreBasis::new(n)?;
        let rule = T::rule(m_nodes, alpha);
        let mut sys = Self {
            n,
            alpha,
            m_nodes,
            factor: Factor::Dense { r: Matrix::zeros(0, 0) },
            basis,
            rule,
        };
        if 4.0 * n as f64 * alpha <= LANCZOS_RANGE {
            let c = T::from_f64(-4.0 * n as f64);
            let mid = T::from_f64(0.5 * alpha);
            let w: Vec<T> = sys
                .rule
                .nodes
                .iter()
                .zip(&sys.rule.weights)
                .map(|(&x, &w)| w * (c * (x - mid)).exp())
                .collect();
            let (a, b) = lanczos(&sys.rule.nodes, &w, n);
            if let Some(j) = (0..n).find(|&j| !(b[j] > T::zero())) {
                return Err(Error::NotPositiveDefinite {
                    index: j,
                    pivot: b[j].to_f64(),
                });
            }
            sys.factor = Factor::Lanczos { a, b };
        } else {
            let r = qr_r(&sys.samples(T::zero(), &sys.rule));
            if let Some(j) = (0..n).find(|&j| !(r[(j, j)] > T::zero())) {
                return Err(Error::NotPositiveDefinite {
                    index: j,
                    pivot: r[(j, j)].to_f64(),
                });
            }
            sys.factor = Factor::Dense { r };
            let ld = sys.log_det().to_f64();
            if ld < DENSE_FLOOR {
                return Err(Error::Discretization(format!(
                    "ln det G = {ld} with 4n alpha = {} beyond {LANCZOS_RANGE}: G too ill conditioned",
                    4.0 * n as f64 * alpha
                )));
            }
        }
        Ok(sys)
    }

    /// `(a_k, b_k)` when `G` was factored through the recurrence.
    pub fn recurrence(&self) -> Option<(&[T], &[T])> {
        match &self.factor {
            Factor::Lanczos { a, b } => Some((a, b)),
            Factor::Dense { .. } => None,
        }
    }

    /// `ln C_n = -n^2 ln(4n) + 2 sum_{k<n} ln k!`.
    fn ln_c_n(&self) -> T {
        let n = self.n;
        let mut acc = T::zero();
        for j in 1..n {
            acc += T::from_f64((n - j) as f64) * T::from_f64(j as f64).ln();
        }
        let nf = n as f64;
        acc + acc - T::from_f64(nf * nf) * T::from_f64(4.0 * nf).ln()
    }

    /// `ln det G = ln D_n(alpha)`.
    pub fn log_det(&self) -> T {
        let b = match &self.factor {
            Factor::Lanczos { b, .. } => b,
            Factor::Dense { r } => return dense_log_det(r),
        };
        let nf = self.n as f64;
        let mut acc = -T::from_f64(2.0 * nf * nf) * T::from_f64(self.alpha);
        for (j, &bj) in b.iter().enumerate() {
            acc += T::from_f64((self.n - j) as f64) * bj.ln();
        }
        acc - self.ln_c_n()
    }

    /// `psi(alpha)^T G^{-1} psi(alpha) = e^{-4n alpha} sum_{j<n} q_j(alpha)^2`,
    /// the derivative of `ln det G` in `alpha`.
    pub fn rank_one(&self) -> T {
        let (a, b) = match &self.factor {
            Factor::Lanczos { a, b } => (a, b),
            Factor::Dense { r } => return self.dense_rank_one(r),
        };
        let x = T::from_f64(self.alpha);
        // orthonormal recurrence with e^{-2n alpha} folded into the seed,
        // less the e^{n alpha} taken out of b_0
        let mut prev = T::zero();
        let mut cur = (x * T::from_f64(-(self.n as f64))).exp() / b[0].sqrt();
        let mut sum = cur * cur;
        for k in 0..self.n - 1 {
            let next = ((x - a[k]) * cur - b[k].sqrt() * prev) / b[k + 1].sqrt();
            prev = cur;
            cur = next;
            sum += cur * cur;
        }
        sum
    }

    fn dense_rank_one(&self, r: &Matrix<T>) -> T {
        let n = self.n;
        let psi: Vec<T> = self
            .basis
            .values_in(n - 1, T::from_f64(self.alpha))
            .into_iter()
            .map(|(v, _)| v)
            .collect();
        let lower = Matrix::from_fn(n, n, |i, j| if j <= i { r[(j, i)] } else { T::zero() });
        let mut s = T::zero();
        for v in forward_lower(&lower, &psi) {
            s += v * v;
        }
        s
    }

    /// Weighted sample matrix `B_ij = sqrt(w_i) omega_j(x_i)` on the
    /// quadrature nodes shifted by `shift`.
    fn samples(&self, shift: T, rule: &QuadratureRule<T>) -> Matrix<T> {
        let n = self.n;
        let mut b = Matrix::zeros(rule.len(), n);
        for (i, (&x, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
            let sw = w.sqrt();
            for (j, &(v, _)) in self.basis.values_in(n - 1, shift + x).iter().enumerate() {
                b[(i, j)] = sw * v;
            }
        }
        b
    }

    /// `G` itself, `B^T B`.
    pub fn matrix(&self) -> Matrix<T> {
        gram_of(&self.samples(T::zero(), &self.rule))
    }

    /// `ln det G` from a Householder QR of the sample matrix, whatever
    /// route [`GramSystem::new`] chose. Only meaningful while the smallest
    /// eigenvalue of `G` is well above the working precision.
    pub fn log_det_direct(&self) -> T {
        dense_log_det(&qr_r(&self.samples(T::zero(), &self.rule)))
    }

    /// Rank-one derivative from the dense factorization.
    pub fn rank_one_direct(&self) -> T {
        self.dense_rank_one(&qr_r(&self.samples(T::zero(), &self.rule)))
    }

    /// Confirms `0 < G < I`. Eigenvalues of `G` can sit closer to one than
    /// any working precision resolves, so `I - G` is not formed by
    /// subtraction: it is the Gram matrix of the same functions on
    /// `(alpha, inf)`, computed by its own quadrature. The check requires the
    /// tail factor to be nonsingular and `G + G_tail = I`.
    pub fn check_spectrum(&self) -> Result<()> {
        let n = self.n;
        let nf = n as f64;
        let span = (4.0 * nf + 160.0) / (4.0 * nf);
        let tail_rule = T::rule(self.m_nodes, span);
        let tail_samples = self.samples(T::from_f64(self.alpha), &tail_rule);
        let tail = qr_r(&tail_samples);
        if let Some(j) = (0..n).find(|&j| !(tail[(j, j)] > T::zero())) {
            return Err(Error::Discretization(format!(
                "tail Gram matrix singular at index {j}: G has an eigenvalue at one"
            )));
        }
        let g = self.matrix();
        let gt = gram_of(&tail_samples);
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let id = if i == j { T::one() } else { T::zero() };
                worst = worst.max((g[(i, j)] + gt[(i, j)] - id).abs().to_f64());
            }
        }
        if worst > 1e-12 {
            return Err(Error::Discretization(format!(
                "G + G_tail deviates from the identity by {worst:e}"
            )));
        }
        Ok(())
    }
}

fn dense_log_det<T: Real>(r: &Matrix<T>) -> T {
    let mut acc = T::zero();
    for j in 0..r.cols() {
        acc += r[(j, j)].ln();
    }
    acc + acc
}

fn gram_of<T: Real>(b: &Matrix<T>) -> Matrix<T> {
    let n = b.cols();
    Matrix::from_fn(n, n, |i, j| {
        let mut s = T::zero();
        for k in 0..b.rows() {
            s += b[(k, i)] * b[(k, j)];
        }
        s
    })
}

/// `ln D_n(alpha)` with its node-doubling error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GramEstimate {
    pub n: usize,
    pub alpha: f64,
    pub log_det: f64,
    pub est_error: f64,
    pub nodes: usize,
}

/// `ln D_n(alpha)` from the quadrature Gram matrix.
pub fn gap_log_det_gram(n: usize, alpha: f64, m_nodes: usize) -> Result<f64> {
    Ok(GramSystem::<DDouble>::new(n, alpha, m_nodes)?.log_det().to_f64())
}

/// [`gap_log_det_gram`] together with the change under node doubling.
pub fn gap_log_det_gram_checked(n: usize, alpha: f64, m_nodes: usize) -> Result<GramEstimate> {
    let coarse = GramSystem::<DDouble>::new(n, alpha, m_nodes)?.log_det();
    let fine = GramSystem::<DDouble>::new(n, alpha, 2 * m_nodes)?.log_det();
    Ok(GramEstimate {
        n,
        alpha,
        log_det: coarse.to_f64(),
        est_error: (coarse - fine).abs().to_f64(),
        nodes: m_nodes,
    })
}

/// `d/dalpha ln D_n(alpha)` through the rank-one derivative of `G`.
pub fn dlog_gap_rank1(n: usize, alpha: f64, m_nodes: usize) -> Result<f64> {
    Ok(GramSystem::<DDouble>::new(n, alpha, m_nodes)?.rank_one().to_f64())
}
