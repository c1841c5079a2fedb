//! Truncated exponential moments `mu_k = int_0^alpha x^k e^{-c x} dx`.

use crate::extprec::DDouble;
use crate::real::Real;

/// Arithmetic used for [`exp_moments`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Native,
    DoubleDouble,
}

/// `mu_0, ..., mu_{k_max}` in the requested precision, reported as `f64`.
pub fn exp_moments(k_max: usize, c: f64, alpha: f64, precision: Precision) -> Vec<f64> {
    match precision {
        Precision::Native => exp_moments_in::<f64>(k_max, c, alpha),
        Precision::DoubleDouble => exp_moments_in::<DDouble>(k_max, c, alpha)
            .into_iter()
            .map(DDouble::to_f64)
            .collect(),
    }
}

/// Moments carried in `T`.
///
/// For `c alpha > k_max` the upward recurrence
/// `mu_k = (k mu_{k-1} - alpha^k e^{-c alpha}) / c` is used; its error growth
/// factor per step is `k / (c alpha) < 1`. Below that the recurrence loses
/// `prod k/(c alpha)` to cancellation, so the positive series
/// `mu_k = e^{-c alpha} alpha^{k+1} sum_j (c alpha)^j / ((k+1)(k+2)...(k+j+1))`
/// is summed instead.
pub fn exp_moments_in<T: Real>(k_max: usize, c: f64, alpha: f64) -> Vec<T> {
    assert!(c > 0.0 && alpha > 0.0, "moments need c > 0 and alpha > 0");
    let ct = T::from_f64(c);
    let at = T::from_f64(alpha);
    let ca = ct * at;
    let decay = (-ca).exp();
    let mut out = Vec::with_capacity(k_max + 1);
    if c * alpha > k_max as f64 {
        let mut mu = (T::one() - decay) / ct;
        out.push(mu);
        let mut apow = T::one();
        for k in 1..=k_max {
            apow = apow * at;
            mu = (T::from_f64(k as f64) * mu - apow * decay) / ct;
            out.push(mu);
        }
    } else {
        let mut apow = at;
        for k in 0..=k_max {
            let mut term = T::one() / T::from_f64(k as f64 + 1.0);
            let mut sum = term;
            for j in 1..10_000 {
                term = term * ca / T::from_f64((k + j + 1) as f64);
                sum += term;
                if term.to_f64() <= 1e-34 * sum.to_f64() {
                    break;
                }
            }
            out.push(decay * apow * sum);
            apow = apow * at;
        }
    }
    out
}
