//! Scalar abstraction shared by the native and double-double code paths.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::extprec::DDouble;

pub trait Real:
    Copy
    + Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;
    /// Natural logarithm; NaN outside the domain.
    fn ln(self) -> Self;
    fn abs(self) -> Self;
    /// Exponential; NaN/inf outside the representable range.
    fn exp(self) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }
}

impl Real for f64 {
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn ln(self) -> Self {
        f64::ln(self)
    }
    #[inline]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    #[inline]
    fn exp(self) -> Self {
        f64::exp(self)
    }
}

impl Real for DDouble {
    #[inline]
    fn from_f64(x: f64) -> Self {
        DDouble::from_f64(x)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        DDouble::to_f64(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        DDouble::sqrt(self)
    }
    #[inline]
    fn ln(self) -> Self {
        self.ln_unchecked()
    }
    #[inline]
    fn abs(self) -> Self {
        DDouble::abs(self)
    }
    #[inline]
    fn exp(self) -> Self {
        if self.to_f64() < -700.0 {
            return DDouble::ZERO;
        }
        self.exp_unchecked()
    }
}
