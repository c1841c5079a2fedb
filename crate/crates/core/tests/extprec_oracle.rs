//! Double-double arithmetic against exact big-integer arithmetic.

use airy_gap::DDouble;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Exact binary rational `m * 2^e`.
#[derive(Clone, Debug)]
struct Exact {
    m: BigInt,
    e: i64,
}

impl Exact {
    fn from_f64(x: f64) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Exact { m: BigInt::zero(), e: 0 };
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
        Exact { m: BigInt::from(mant) * sign, e }
    }

    fn dd(x: DDouble) -> Self {
        Self::from_f64(x.hi()).add(&Self::from_f64(x.lo()))
    }

    fn align(&self, other: &Self) -> (BigInt, BigInt, i64) {
        let e = self.e.min(other.e);
        (&self.m << (self.e - e) as usize, &other.m << (other.e - e) as usize, e)
    }

    fn add(&self, other: &Self) -> Self {
        let (a, b, e) = self.align(other);
        Exact { m: a + b, e }
    }

    fn sub(&self, other: &Self) -> Self {
        let (a, b, e) = self.align(other);
        Exact { m: a - b, e }
    }

    fn mul(&self, other: &Self) -> Self {
        Exact {
            m: &self.m * &other.m,
            e: self.e + other.e,
        }
    }

    fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    /// `|self| <= 2^-k |other|`.
    fn within(&self, other: &Self, k: usize) -> bool {
        let (a, b, _) = self.align(other);
        (a.abs() << k) <= b.abs()
    }
}

fn dd_strategy() -> impl Strategy<Value = DDouble> {
    (1.0f64..2.0, -40i32..40, any::<bool>(), -1.0f64..1.0)
        .prop_map(|(m, e, neg, t)| {
            let hi = if neg { -m } else { m } * 2f64.powi(e);
            DDouble::new(hi, hi * t * f64::EPSILON / 2.0)
        })
}

fn normalized(x: DDouble) -> bool {
    x.hi() + x.lo() == x.hi()
}

#[test]
fn two_sum_and_two_prod_are_exact() {
    for &(a, b) in &[(1.0, 1e-20), (0.1, 0.2), (1e300, -1e284), (3.0, f64::EPSILON / 3.0)] {
        let s = DDouble::sum_f64(a, b);
        assert!(Exact::dd(s).sub(&Exact::from_f64(a).add(&Exact::from_f64(b))).is_zero());
    }
    for &(a, b) in &[(0.1, 0.2), (1e150, -3e-140), (1.0 + f64::EPSILON, 1.0 - f64::EPSILON)] {
        let p = DDouble::product_f64(a, b);
        assert!(Exact::dd(p).sub(&Exact::from_f64(a).mul(&Exact::from_f64(b))).is_zero());
    }
}

#[test]
fn literals_are_normalized() {
    for c in [DDouble::PI, DDouble::LN_2, DDouble::FRAC_PI_4, DDouble::SQRT_PI] {
        assert!(normalized(c), "{c:?}");
    }
}

#[test]
fn pi_literal_matches_machin() {
    // pi/4 = 4 atan(1/5) - atan(1/239)
    let atan_inv = |k: f64| {
        let x = DDouble::ONE / DDouble::from_f64(k);
        let x2 = x.square();
        let mut term = x;
        let mut acc = DDouble::ZERO;
        for j in 0..60 {
            let t = term.div_f64((2 * j + 1) as f64);
            acc = if j % 2 == 0 { acc + t } else { acc - t };
            term = term * x2;
        }
        acc
    };
    let pi = (atan_inv(5.0).mul_f64(4.0) - atan_inv(239.0)).mul_f64(4.0);
    assert!((pi - DDouble::PI).abs().to_f64() <= 1e-31);
}

proptest! {
    #[test]
    fn sum_f64_exact(a in -1e10f64..1e10, b in -1e10f64..1e10) {
        let s = DDouble::sum_f64(a, b);
        prop_assert!(normalized(s));
        prop_assert!(Exact::dd(s).sub(&Exact::from_f64(a).add(&Exact::from_f64(b))).is_zero());
    }

    #[test]
    fn product_f64_exact(a in -1e10f64..1e10, b in -1e10f64..1e10) {
        let p = DDouble::product_f64(a, b);
        prop_assert!(Exact::dd(p).sub(&Exact::from_f64(a).mul(&Exact::from_f64(b))).is_zero());
    }

    #[test]
    fn add_within_four_u_squared(x in dd_strategy(), y in dd_strategy()) {
        let want = Exact::dd(x).add(&Exact::dd(y));
        let got = x + y;
        prop_assert!(normalized(got));
        if !want.is_zero() {
            prop_assert!(Exact::dd(got).sub(&want).within(&want, 103));
        }
    }

    #[test]
    fn mul_within_bound(x in dd_strategy(), y in dd_strategy()) {
        let want = Exact::dd(x).mul(&Exact::dd(y));
        let got = x * y;
        prop_assert!(normalized(got));
        prop_assert!(Exact::dd(got).sub(&want).within(&want, 102));
    }

    #[test]
    fn div_backward_error(x in dd_strategy(), y in dd_strategy()) {
        let q = x / y;
        let back = Exact::dd(q).mul(&Exact::dd(y));
        prop_assert!(back.sub(&Exact::dd(x)).within(&Exact::dd(x), 100));
    }

    #[test]
    fn sqrt_backward_error(x in dd_strategy()) {
        let x = x.abs();
        let r = x.sqrt();
        let sq = Exact::dd(r).mul(&Exact::dd(r));
        prop_assert!(sq.sub(&Exact::dd(x)).within(&Exact::dd(x), 100));
    }

    #[test]
    fn exp_ln_roundtrip(x in -30.0f64..30.0, t in -1.0f64..1.0) {
        let x = DDouble::new(x, x * t * 1e-17);
        let back = x.exp().unwrap().ln().unwrap();
        prop_assert!((back - x).abs().to_f64() <= 1e-30 * x.abs().to_f64().max(1.0));
    }

    #[test]
    fn exp_is_a_homomorphism(a in -20.0f64..20.0, b in -20.0f64..20.0) {
        let (a, b) = (DDouble::from_f64(a), DDouble::from_f64(b));
        let lhs = (a + b).exp().unwrap();
        let rhs = a.exp().unwrap() * b.exp().unwrap();
        prop_assert!(((lhs - rhs) / rhs).abs().to_f64() <= 1e-29);
    }

    #[test]
    fn ordering_agrees_with_exact(x in dd_strategy(), y in dd_strategy()) {
        let d = Exact::dd(x).sub(&Exact::dd(y));
        prop_assert_eq!(x < y, d.m < BigInt::zero());
    }
}
