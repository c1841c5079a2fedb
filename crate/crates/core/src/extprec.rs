//! Double-double arithmetic.
//!
//! A [`DDouble`] holds an unevaluated sum `hi + lo` of two `f64` values with
//! `|lo| <= ulp(hi)/2`, giving roughly 106 bits (~31 decimal digits) of
//! significand. All operations are built from the error-free transformations
//! `two_sum` and `two_prod` (FMA based) and renormalize their result.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    (s, e)
}

/// Requires `|a| >= |b|` (or `a == 0`).
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Extended-precision real stored as `hi + lo`.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct DDouble {
    hi: f64,
    lo: f64,
}

/// Operation selector for [`dd_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Square root of the first operand; the second is ignored.
    Sqrt,
}

/// Checked arithmetic entry point: division by zero and square roots of
/// negative numbers are reported as domain errors instead of producing NaN.
pub fn dd_arith(a: DDouble, b: DDouble, op: ArithOp) -> Result<DDouble> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
        ArithOp::Sqrt => a.try_sqrt(),
    }
}

impl DDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };
    pub const PI: Self = Self {
        hi: 3.141592653589793,
        lo: 1.2246467991473532e-16,
    };
    pub const LN_2: Self = Self {
        hi: 0.6931471805599453,
        lo: 2.3190468138462996e-17,
    };
    pub const FRAC_PI_4: Self = Self {
        hi: 0.7853981633974483,
        lo: 3.061616997868383e-17,
    };
    pub const SQRT_PI: Self = Self {
        hi: 1.772453850905516,
        lo: -7.666586499825799e-17,
    };

    /// Builds a value from two parts, renormalizing so that `|lo| <= ulp(hi)/2`.
    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    /// Builds a value from parts that are already normalized (used for literals).
    #[inline]
    pub const fn from_parts(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact sum of two `f64` values.
    #[inline]
    pub fn sum_f64(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Self { hi, lo }
    }

    /// Exact product of two `f64` values.
    #[inline]
    pub fn product_f64(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self { hi, lo }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn is_sign_negative(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.is_sign_negative() {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = self.lo.mul_add(b, e);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Self {
        let (s, e) = two_sum(self.hi, b);
        let e = e + self.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Self { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let (s, f) = two_sum(self.hi, -p);
        let f = f - e + self.lo;
        let q2 = (s + f) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo }
    }

    #[inline]
    pub fn square(self) -> Self {
        let (p, e) = two_prod(self.hi, self.hi);
        let e = e + 2.0 * self.hi * self.lo + self.lo * self.lo;
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    #[inline]
    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    /// Multiplication by `2^k`; exact unless the result leaves the normal range.
    #[inline]
    pub fn ldexp(self, k: i32) -> Self {
        let scale = 2f64.powi(k);
        Self {
            hi: self.hi * scale,
            lo: self.lo * scale,
        }
    }

    pub fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    pub fn checked_div(self, b: Self) -> Result<Self> {
        if b.hi == 0.0 {
            return Err(Error::Domain("double-double division by zero".into()));
        }
        Ok(self / b)
    }

    /// Square root; negative input yields NaN. See [`DDouble::try_sqrt`].
    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Self::ZERO
            } else {
                Self::from_f64(f64::NAN)
            };
        }
        // one Newton step from the native root doubles the precision
        let y = Self::from_f64(self.hi.sqrt());
        let r = self - y.square();
        y + r.div_f64(2.0 * y.hi)
    }

    pub fn try_sqrt(self) -> Result<Self> {
        if self.is_sign_negative() && self.hi != 0.0 {
            return Err(Error::Domain(format!(
                "square root of negative value {:e}",
                self.to_f64()
            )));
        }
        Ok(self.sqrt())
    }

    /// Exponential with argument reduction `x = k ln 2 + r`, `|r| <= ln2 / 2`,
    /// a Taylor series on `r`, and an exact scaling by `2^k`.
    pub fn exp(self) -> Result<Self> {
        if !self.is_finite() {
            return Err(Error::Range("exp of non-finite value".into()));
        }
        if self.hi.abs() > 700.0 {
            return Err(Error::Range(format!(
                "exp argument {:e} outside [-700, 700]",
                self.hi
            )));
        }
        let k = (self.hi / Self::LN_2.hi).round();
        let r = self - Self::LN_2.mul_f64(k);
        // sum_{j>=0} r^j / j!, Horner from the tail
        const TERMS: usize = 28;
        let mut acc = Self::ONE;
        for j in (1..=TERMS).rev() {
            acc = Self::ONE + (r * acc).div_f64(j as f64);
        }
        Ok(acc.ldexp(k as i32))
    }

    /// Natural logarithm by Newton iteration `y <- y + x exp(-y) - 1` seeded
    /// from the native logarithm.
    pub fn ln(self) -> Result<Self> {
        if !(self.hi > 0.0) || !self.is_finite() {
            return Err(Error::Domain(format!(
                "logarithm of non-positive value {:e}",
                self.to_f64()
            )));
        }
        let mut y = Self::from_f64(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp()? - Self::ONE;
        }
        Ok(y)
    }

    /// `ln` with NaN in place of the domain error, for generic numeric code.
    pub fn ln_unchecked(self) -> Self {
        self.ln().unwrap_or(Self::from_f64(f64::NAN))
    }

    pub fn exp_unchecked(self) -> Self {
        self.exp().unwrap_or(Self::from_f64(f64::NAN))
    }
}

impl fmt::Debug for DDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DDouble({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for DDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl From<f64> for DDouble {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl PartialOrd for DDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl Neg for DDouble {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DDouble {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Self { hi, lo }
    }
}

impl Sub for DDouble {
    type Output = Self;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DDouble {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo }.add_f64(q3)
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for DDouble {
            #[inline]
            fn $m(&mut self, rhs: Self) {
                *self = *self $op rhs;
            }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /);

impl Sum for DDouble {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}
