//! Gauss-Legendre rules on a finite interval.

use serde::Serialize;

use crate::extprec::DDouble;
use crate::real::Real;

/// Nodes and weights of an `m`-point Gauss-Legendre rule on `(a, b)`.
#[derive(Clone, Debug, Serialize)]
pub struct QuadratureRule<T = f64> {
    pub a: T,
    pub b: T,
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(T) -> T) -> T {
        let mut acc = T::zero();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(x);
        }
        acc
    }
}

/// `(P_m(x), P'_m(x))` by the three-term recurrence.
fn legendre<T: Real>(m: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=m {
        let kf = k as f64;
        let p2 = (x * p1 * T::from_f64(2.0 * kf - 1.0) - p0 * T::from_f64(kf - 1.0)) / T::from_f64(kf);
        p0 = p1;
        p1 = p2;
    }
    if m == 0 {
        return (T::one(), T::zero());
    }
    let dp = T::from_f64(m as f64) * (x * p1 - p0) / (x * x - T::one());
    (p1, dp)
}

/// Roots of `P_m` on `[-1, 1]` in descending order, Newton-polished from
/// Chebyshev-type initial guesses until the update is below `1e-15`
/// relative. Only the non-negative half is iterated; the rest follow by
/// symmetry.
fn reference_nodes(m: usize) -> Vec<f64> {
    let mut nodes = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(m, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-15 * x.abs().max(1e-3) {
                break;
            }
        }
        nodes[i] = x;
        nodes[m - 1 - i] = -x;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    nodes
}

fn build<T: Real>(m: usize, a: T, b: T, polish: usize) -> QuadratureRule<T> {
    assert!(m >= 1, "Gauss-Legendre rule needs at least one node");
    assert!(a < b, "Gauss-Legendre rule needs a < b");
    let half = (b - a) * T::from_f64(0.5);
    let mid = (a + b) * T::from_f64(0.5);
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    // ascending order on (a, b)
    for &t0 in reference_nodes(m).iter().rev() {
        let mut t = T::from_f64(t0);
        for _ in 0..polish {
            if t0 == 0.0 {
                break;
            }
            let (p, dp) = legendre(m, t);
            t -= p / dp;
        }
        let (_, dp) = legendre(m, t);
        let w = T::from_f64(2.0) / ((T::one() - t * t) * dp * dp);
        nodes.push(mid + half * t);
        weights.push(half * w);
    }
    QuadratureRule { a, b, nodes, weights }
}

/// `m`-point Gauss-Legendre rule on `(a, b)` in native precision.
pub fn gauss_legendre(m: usize, a: f64, b: f64) -> QuadratureRule<f64> {
    build(m, a, b, 0)
}

/// `m`-point Gauss-Legendre rule on `(a, b)` with nodes and weights
/// refined to double-double precision.
pub fn gauss_legendre_dd(m: usize, a: DDouble, b: DDouble) -> QuadratureRule<DDouble> {
    build(m, a, b, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_rule() {
        let r = gauss_legendre(1, -1.0, 1.0);
        assert_eq!(r.nodes, vec![0.0]);
        assert_eq!(r.weights, vec![2.0]);
    }

    #[test]
    fn two_point_rule() {
        let r = gauss_legendre(2, -1.0, 1.0);
        let t = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + t).abs() < 2e-16 && (r.nodes[1] - t).abs() < 2e-16);
        assert!((r.weights[0] - 1.0).abs() < 1e-15 && (r.weights[1] - 1.0).abs() < 1e-15);
        assert!((r.integrate(|x| x * x) - 2.0 / 3.0).abs() <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn weights_sum_to_length() {
        for &m in &[3, 10, 37, 80, 200, 1200] {
            let r = gauss_legendre(m, -2.5, 4.0);
            let s: f64 = r.weights.iter().sum();
            assert!((s - 6.5).abs() < 1e-14 * 6.5, "m={m}: {s}");
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
            assert!(r.nodes[0] > -2.5 && r.nodes[m - 1] < 4.0);
        }
    }

    #[test]
    fn exact_for_degree_2m_minus_1() {
        for &m in &[2usize, 5, 12, 30] {
            let r = gauss_legendre(m, 0.0, 2.0);
            let deg = 2 * m - 1;
            let got = r.integrate(|x| x.powi(deg as i32));
            let exact = 2f64.powi(deg as i32 + 1) / (deg as f64 + 1.0);
            assert!((got - exact).abs() < 1e-13 * exact, "m={m}");
        }
    }

    #[test]
    fn doubling_converges_for_exponential() {
        let f = |x: f64| (-4.0 * x).exp();
        let a = gauss_legendre(20, 0.0, 1.0).integrate(f);
        let b = gauss_legendre(40, 0.0, 1.0).integrate(f);
        assert!((a - b).abs() <= 1e-14 * b);
    }

    #[test]
    fn double_double_rule_is_sharper() {
        let r = gauss_legendre_dd(40, DDouble::ZERO, DDouble::ONE);
        let got = r.integrate(|x| x.mul_f64(-4.0).exp_unchecked());
        let exact = (DDouble::ONE - DDouble::from_f64(-4.0).exp().unwrap()).div_f64(4.0);
        assert!(((got - exact) / exact).abs().to_f64() < 1e-28);
    }
}
