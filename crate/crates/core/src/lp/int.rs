//! Integer backends for fraction-free pivoting: a checked `i128` fast path
//! and an unbounded `BigInt` fallback.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) type Checked<T> = Result<T, Overflow>;

pub(crate) trait TabInt: Clone + Ord + fmt::Display + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_big(b: &BigInt) -> Checked<Self>;
    fn to_big(&self) -> BigInt;
    fn sub(&self, o: &Self) -> Checked<Self>;
    fn mul(&self, o: &Self) -> Checked<Self>;
    /// Division known to be exact.
    fn div_exact(&self, o: &Self) -> Self;
    fn neg(&self) -> Checked<Self>;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;

    fn mul_sub(&self, b: &Self, c: &Self, d: &Self) -> Checked<Self> {
        self.mul(b)?.sub(&c.mul(d)?)
    }
}

impl TabInt for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_big(b: &BigInt) -> Checked<Self> {
        b.to_i128().ok_or(Overflow)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    #[inline]
    fn sub(&self, o: &Self) -> Checked<Self> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    #[inline]
    fn mul(&self, o: &Self) -> Checked<Self> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    #[inline]
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!(self % o == 0, "{self} / {o} is not exact");
        self / o
    }
    fn neg(&self) -> Checked<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn is_one(&self) -> bool {
        *self == 1
    }
    #[inline]
    fn is_positive(&self) -> bool {
        *self > 0
    }
    #[inline]
    fn is_negative(&self) -> bool {
        *self < 0
    }
}

impl TabInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_big(b: &BigInt) -> Checked<Self> {
        Ok(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        Ok(self * o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % o)), "{self} / {o} is not exact");
        self / o
    }
    fn neg(&self) -> Checked<Self> {
        Ok(-self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i128_reports_overflow() {
        let big = i128::MAX / 2;
        assert_eq!(big.mul(&3), Err(Overflow));
        assert_eq!(i128::MIN.neg(), Err(Overflow));
        assert_eq!(<i128 as TabInt>::from_big(&(BigInt::from(i128::MAX) * 2)), Err(Overflow));
        assert_eq!(7i128.mul_sub(&3, &2, &5), Ok(11));
    }
}
