//! `zeta'(-1)` and the Tracy-Widom constant `chi = ln(2)/24 + zeta'(-1)`.
//!
//! `zeta'(2) = -sum_{k>=2} ln(k)/k^2` is summed directly up to `N - 1` and
//! the tail is closed with Euler-Maclaurin. The functional equation then gives
//! the Glaisher-Kinkelin constant
//! `ln A = (ln 2 pi + gamma)/12 - zeta'(2)/(2 pi^2)` and `zeta'(-1) = 1/12 - ln A`.

use serde::Serialize;

use crate::extprec::DDouble;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: DDouble = DDouble::from_parts(0.5772156649015329, -4.942915152430645e-18);

/// Method tag reported alongside the constants.
pub const METHOD: &str = "zeta2-euler-maclaurin";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Constants {
    pub zeta_prime_minus1: f64,
    pub chi: f64,
    pub method: &'static str,
}

const CUTOFF: u32 = 40;

/// `B_2, B_4, ..., B_16`.
const BERNOULLI: [(f64, f64); 8] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
];

/// `zeta'(2)` in double-double.
pub fn zeta_prime_two() -> DDouble {
    let mut head = DDouble::ZERO;
    for k in 2..CUTOFF {
        let kf = k as f64;
        head += DDouble::from_f64(kf).ln_unchecked().div_f64(kf * kf);
    }
    // tail sum_{k>=N} f(k), f(x) = ln x / x^2:
    //   int_N^inf f = (ln N + 1)/N,  f(N)/2,
    //   -B_{2j}/(2j)! f^{(2j-1)}(N) = B_{2j} N^{-2j-1} (ln N - H_{2j} + 1)
    let n = CUTOFF as f64;
    let ln_n = DDouble::from_f64(n).ln_unchecked();
    let mut tail = (ln_n + DDouble::ONE).div_f64(n) + ln_n.div_f64(2.0 * n * n);
    let mut harmonic = DDouble::ONE;
    let mut next_h = 2u32;
    for (j, &(num, den)) in BERNOULLI.iter().enumerate() {
        let two_j = 2 * (j as u32 + 1);
        while next_h <= two_j {
            harmonic += DDouble::ONE.div_f64(next_h as f64);
            next_h += 1;
        }
        let b = DDouble::from_f64(num).div_f64(den);
        let power = DDouble::from_f64(n).powi(-(two_j as i32) - 1);
        tail += b * power * (ln_n - harmonic + DDouble::ONE);
    }
    -(head + tail)
}

/// `zeta'(-1)` in double-double.
pub fn zeta_prime_minus_one() -> DDouble {
    let two_pi = DDouble::PI.mul_f64(2.0);
    let ln_two_pi = two_pi.ln_unchecked();
    let pi2 = DDouble::PI.square();
    let ln_glaisher = (ln_two_pi + EULER_GAMMA).div_f64(12.0) - zeta_prime_two() / pi2.mul_f64(2.0);
    DDouble::ONE.div_f64(12.0) - ln_glaisher
}

/// `chi = ln(2)/24 + zeta'(-1)` in double-double.
pub fn chi_dd() -> DDouble {
    DDouble::LN_2.div_f64(24.0) + zeta_prime_minus_one()
}

pub fn chi_constant() -> Constants {
    let zp = zeta_prime_minus_one();
    Constants {
        zeta_prime_minus1: zp.to_f64(),
        chi: (DDouble::LN_2.div_f64(24.0) + zp).to_f64(),
        method: METHOD,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_prime_minus_one_value() {
        let c = chi_constant();
        assert!((c.zeta_prime_minus1 - (-0.165421143700450929)).abs() < 1e-15);
        assert!((c.chi - (-0.136540011177119875)).abs() < 1e-15);
    }

    #[test]
    fn zeta_prime_two_value() {
        // frozen reference -0.93754825431584375370...
        let z = zeta_prime_two();
        assert!((z - DDouble::from_parts(-0.9375482543158438, 1.1680391008049298e-17)).abs().to_f64() < 1e-28);
    }

    #[test]
    fn chi_minus_zeta_is_ln2_over_24() {
        let exact = chi_dd() - zeta_prime_minus_one();
        assert!((exact - DDouble::LN_2.div_f64(24.0)).abs().to_f64() < 1e-31);
        let c = chi_constant();
        let diff = c.chi - c.zeta_prime_minus1;
        assert!((diff - std::f64::consts::LN_2 / 24.0).abs() <= 4e-17);
        assert_eq!(c.method, "zeta2-euler-maclaurin");
    }

    #[test]
    fn euler_gamma_literal_matches_harmonic_asymptotics() {
        // gamma = H_n - ln n - 1/(2n) + 1/(12 n^2) - 1/(120 n^4) + 1/(252 n^6) - ...
        let n = 1000u32;
        let mut h = DDouble::ZERO;
        for k in 1..=n {
            h += DDouble::ONE.div_f64(k as f64);
        }
        let nf = n as f64;
        let ln_n = DDouble::from_f64(nf).ln_unchecked();
        let g = h - ln_n - DDouble::ONE.div_f64(2.0 * nf) + DDouble::ONE.div_f64(12.0 * nf * nf)
            - DDouble::ONE.div_f64(120.0 * nf.powi(4))
            + DDouble::ONE.div_f64(252.0 * nf.powi(6));
        assert!((g - EULER_GAMMA).abs().to_f64() < 1e-24);
    }
}
