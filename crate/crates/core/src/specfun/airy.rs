//! Airy function `Ai` and its derivative on the real line.
//!
//! Two representations are used:
//!
//! * the Maclaurin pair `Ai = c1 f(x) - c2 g(x)` summed in double-double for
//!   `-12 <= x <= 9`, where `c1 = Ai(0)` and `c2 = -Ai'(0)`;
//! * the classical asymptotic expansions in `zeta = (2/3)|x|^{3/2}` outside
//!   that window (monotone form for `x > 0`, sine/cosine form for `x < 0`).
//!
//! The series loses about `exp(2 zeta)` (positive side) or `exp(zeta)`
//! (negative side) to cancellation, while the optimally truncated asymptotic
//! series carries a relative error near `exp(-2 zeta)`. The switch points are
//! where both are far below `1e-12`.

use crate::error::{Error, Result};
use crate::extprec::DDouble;

/// Largest positive argument handled by the series.
pub const SERIES_MAX: f64 = 9.0;
/// Most negative argument handled by the series.
pub const SERIES_MIN: f64 = -12.0;
/// Supported argument range.
pub const DOMAIN: (f64, f64) = (-40.0, 40.0);

/// `Gamma(1/3)` to double-double precision.
pub const GAMMA_ONE_THIRD: DDouble = DDouble::from_parts(2.6789385347077475, 1.7947798648225244e-16);
/// `Gamma(2/3)` to double-double precision.
pub const GAMMA_TWO_THIRDS: DDouble = DDouble::from_parts(1.3541179394264005, -4.6231203911366416e-17);

/// `Ai(0) = 3^{-2/3} / Gamma(2/3)`.
fn ai_zero() -> DDouble {
    // 3^{-2/3} = 1 / cbrt(9)
    let cbrt9 = cbrt_dd(DDouble::from_f64(9.0));
    (cbrt9 * GAMMA_TWO_THIRDS).recip()
}

/// `-Ai'(0) = 3^{-1/3} / Gamma(1/3)`.
fn aip_zero_neg() -> DDouble {
    let cbrt3 = cbrt_dd(DDouble::from_f64(3.0));
    (cbrt3 * GAMMA_ONE_THIRD).recip()
}

fn cbrt_dd(a: DDouble) -> DDouble {
    let mut y = DDouble::from_f64(a.to_f64().cbrt());
    // Newton on y^3 = a
    for _ in 0..2 {
        let y2 = y.square();
        y = y - (y2 * y - a) / y2.mul_f64(3.0);
    }
    y
}

/// `(Ai(x), Ai'(x))` in native precision, relative error below `1e-12`
/// wherever `|Ai| > 1e-300` (away from the zeros on the negative axis the
/// error is far smaller).
pub fn airy_ai_pair(x: f64) -> Result<(f64, f64)> {
    let (ai, aip) = airy_ai_pair_dd(DDouble::from_f64(x))?;
    Ok((ai.to_f64(), aip.to_f64()))
}

/// `(Ai(x), Ai'(x))` carried in double-double. Accurate to about 30 digits
/// for `-12 <= x <= 9` and `x >= 14`; in between and below `-12` the
/// accuracy degrades gracefully toward native precision.
pub fn airy_ai_pair_dd(x: DDouble) -> Result<(DDouble, DDouble)> {
    let xf = x.to_f64();
    if !(DOMAIN.0..=DOMAIN.1).contains(&xf) {
        return Err(Error::Domain(format!(
            "Airy argument {xf} outside [{}, {}]",
            DOMAIN.0, DOMAIN.1
        )));
    }
    Ok(if xf > SERIES_MAX {
        asymptotic_positive(x)
    } else if xf < SERIES_MIN {
        let (a, b) = asymptotic_negative(x);
        (DDouble::from_f64(a), DDouble::from_f64(b))
    } else {
        maclaurin(x)
    })
}

/// Maclaurin representation, valid for all `x` but only accurate where
/// cancellation stays inside the double-double budget.
pub(crate) fn maclaurin(x: DDouble) -> (DDouble, DDouble) {
    let x2 = x.square();
    let x3 = x2 * x;
    let tiny = 1e-34;

    // f = sum a_k, a_k = a_{k-1} x^3 / ((3k-1) 3k)      f' term: a_{k-1} x^2 / (3k-1)
    // g = sum b_k, b_k = b_{k-1} x^3 / (3k (3k+1)), b_0 = x;  g' term: b_{k-1} x^2 / (3k)
    let mut a = DDouble::ONE;
    let mut b = x;
    let mut f = a;
    let mut fp = DDouble::ZERO;
    let mut g = b;
    let mut gp = DDouble::ONE;
    let mut scale = 1.0f64;
    for k in 1..400 {
        let kf = k as f64;
        let fp_term = (a * x2).div_f64(3.0 * kf - 1.0);
        let gp_term = (b * x2).div_f64(3.0 * kf);
        a = (a * x3).div_f64((3.0 * kf - 1.0) * (3.0 * kf));
        b = (b * x3).div_f64((3.0 * kf) * (3.0 * kf + 1.0));
        f += a;
        fp += fp_term;
        g += b;
        gp += gp_term;
        let mag = a.hi().abs().max(b.hi().abs()).max(fp_term.hi().abs()).max(gp_term.hi().abs());
        scale = scale.max(mag);
        if mag <= tiny * scale && k > 2 {
            break;
        }
    }
    let c1 = ai_zero();
    let c2 = aip_zero_neg();
    (c1 * f - c2 * g, c1 * fp - c2 * gp)
}

/// Asymptotic expansion for `x > 0`:
/// `Ai = e^{-zeta} / (2 sqrt(pi) x^{1/4}) sum (-1)^k u_k zeta^{-k}` and
/// `Ai' = -x^{1/4} e^{-zeta} / (2 sqrt(pi)) sum (-1)^k v_k zeta^{-k}`.
pub(crate) fn asymptotic_positive(x: DDouble) -> (DDouble, DDouble) {
    let sx = x.sqrt();
    let zeta = (x * sx).mul_f64(2.0).div_f64(3.0);
    let quarter = sx.sqrt();
    let inv_zeta = zeta.recip();

    let mut u = DDouble::ONE;
    let mut sum_u = DDouble::ONE;
    let mut sum_v = DDouble::ONE;
    let mut power = DDouble::ONE;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        u = u
            .mul_f64((6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0))
            .div_f64((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -u.mul_f64(6.0 * kf + 1.0).div_f64(6.0 * kf - 1.0);
        power = -(power * inv_zeta);
        let tu = u * power;
        let tv = v * power;
        let mag = tu.hi().abs().max(tv.hi().abs());
        // optimal truncation: stop before the terms start to grow
        if mag > last {
            break;
        }
        sum_u += tu;
        sum_v += tv;
        last = mag;
        if mag < 1e-34 {
            break;
        }
    }
    let pref = (-zeta).exp_unchecked() / DDouble::SQRT_PI.mul_f64(2.0);
    (pref * sum_u / quarter, -(pref * quarter * sum_v))
}

/// Asymptotic expansion for `x < 0` (native precision):
/// `Ai(-z) = z^{-1/4}/sqrt(pi) [cos(t) P + sin(t) Q]`,
/// `Ai'(-z) = z^{1/4}/sqrt(pi) [sin(t) R - cos(t) S]`, `t = zeta - pi/4`.
pub(crate) fn asymptotic_negative(x: DDouble) -> (f64, f64) {
    let z = -x;
    let sz = z.sqrt();
    let zeta = (z * sz).mul_f64(2.0).div_f64(3.0);
    // reduce the phase in double-double before handing it to native trig
    let two_pi = DDouble::PI.mul_f64(2.0);
    let mut t = zeta - DDouble::FRAC_PI_4;
    let turns = (t / two_pi).to_f64().floor();
    t = t - two_pi.mul_f64(turns);
    let t = t.to_f64();
    let zetaf = zeta.to_f64();

    let mut u = 1.0f64;
    let (mut p, mut q, mut r, mut s) = (1.0f64, 0.0f64, 1.0f64, 0.0f64);
    let mut power = 1.0f64;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -u * (6.0 * kf + 1.0) / (6.0 * kf - 1.0);
        power /= zetaf;
        let tu = u * power;
        let tv = v * power;
        let mag = tu.abs().max(tv.abs());
        if mag > last {
            break;
        }
        // k even -> P/R with sign (-1)^{k/2}; k odd -> Q/S with sign (-1)^{(k-1)/2}
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * tu;
            r += sign * tv;
        } else {
            q += sign * tu;
            s += sign * tv;
        }
        last = mag;
        if mag < 1e-18 {
            break;
        }
    }
    let zf = z.to_f64();
    let quarter = zf.powf(0.25);
    let rpi = 1.0 / std::f64::consts::PI.sqrt();
    let (st, ct) = t.sin_cos();
    (
        rpi / quarter * (ct * p + st * q),
        rpi * quarter * (st * r - ct * s),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_origin_matches_closed_form() {
        let (ai, aip) = airy_ai_pair(0.0).unwrap();
        let g13 = 2.678_938_534_707_747_6_f64;
        let g23 = 1.354_117_939_426_400_4_f64;
        assert!((ai - 3f64.powf(-2.0 / 3.0) / g23).abs() < 1e-16);
        assert!((aip + 3f64.powf(-1.0 / 3.0) / g13).abs() < 1e-16);
        // literals to double-double precision
        assert!((ai_zero() - DDouble::from_parts(0.3550280538878172, 2.05233632436212e-17)).abs().to_f64() < 1e-31);
        assert!((aip_zero_neg() - DDouble::from_parts(0.2588194037928068, -2.522243111610832e-17)).abs().to_f64() < 1e-31);
    }

    #[test]
    fn gamma_literals_satisfy_reflection() {
        // Gamma(1/3) Gamma(2/3) = pi / sin(pi/3) = 2 pi / sqrt(3)
        let lhs = GAMMA_ONE_THIRD * GAMMA_TWO_THIRDS;
        let rhs = DDouble::PI.mul_f64(2.0) / DDouble::from_f64(3.0).sqrt();
        assert!(((lhs - rhs) / rhs).abs().to_f64() < 1e-30);
    }

    #[test]
    fn gamma_literals_match_euler_product() {
        // Gamma(x) = lim n^x n! / (x (x+1) ... (x+n)); error ~ x(x+1)/(2n)
        for (x, lit) in [(1.0 / 3.0, GAMMA_ONE_THIRD), (2.0 / 3.0, GAMMA_TWO_THIRDS)] {
            let approx = |n: usize| {
                let mut ln = x * (n as f64).ln() - (x as f64).ln();
                for k in 1..=n {
                    ln += (k as f64).ln() - (x + k as f64).ln();
                }
                ln.exp()
            };
            // Richardson on n and 2n removes the 1/n term
            let n = 200_000;
            let extrap = 2.0 * approx(2 * n) - approx(n);
            assert!((extrap - lit.to_f64()).abs() < 1e-9, "{extrap} vs {}", lit.to_f64());
        }
    }

    #[test]
    fn switch_points_are_consistent() {
        let x = DDouble::from_f64(SERIES_MAX);
        let (a1, d1) = maclaurin(x);
        let (a2, d2) = asymptotic_positive(x);
        assert!(((a1 - a2) / a2).abs().to_f64() < 1e-12);
        assert!(((d1 - d2) / d2).abs().to_f64() < 1e-12);

        // negative side: compare against the oscillation envelope
        let x = DDouble::from_f64(SERIES_MIN);
        let (a1, d1) = maclaurin(x);
        let (a2, d2) = asymptotic_negative(x);
        let z = -SERIES_MIN;
        let env = z.powf(-0.25) / std::f64::consts::PI.sqrt();
        let envp = z.powf(0.25) / std::f64::consts::PI.sqrt();
        assert!((a1.to_f64() - a2).abs() < 1e-12 * env);
        assert!((d1.to_f64() - d2).abs() < 1e-12 * envp);
    }

    #[test]
    fn airy_equation_residual() {
        // Ai'' = x Ai checked by central differences of Ai'
        for &x in &[-30.0, -11.0, -3.3, 0.7, 5.0, 12.0, 20.0] {
            let h = 1e-5;
            let (_, dp) = airy_ai_pair(x + h).unwrap();
            let (_, dm) = airy_ai_pair(x - h).unwrap();
            let (ai, aip) = airy_ai_pair(x).unwrap();
            let second = (dp - dm) / (2.0 * h);
            let scale = (x * ai).abs() + aip.abs() * x.abs().sqrt();
            assert!((second - x * ai).abs() <= 1e-7 * scale, "x={x}");
        }
    }

    #[test]
    fn decay_identity_derivative() {
        // d/dx [Ai'^2 - x Ai^2] = -Ai^2
        let v = |x: f64| {
            let (a, d) = airy_ai_pair(x).unwrap();
            d * d - x * a * a
        };
        let h = 1e-5;
        let fd = (v(1.0 + h) - v(1.0 - h)) / (2.0 * h);
        let (a, _) = airy_ai_pair(1.0).unwrap();
        assert!((fd + a * a).abs() < 1e-8);
    }

    #[test]
    fn out_of_range_is_domain_error() {
        assert!(matches!(airy_ai_pair(40.5), Err(Error::Domain(_))));
        assert!(matches!(airy_ai_pair(-41.0), Err(Error::Domain(_))));
        assert!(airy_ai_pair(f64::NAN).is_err());
    }
}
