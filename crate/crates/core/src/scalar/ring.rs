use std::fmt;

use num_bigint::BigInt;

use super::rational::Rational;

/// A commutative ring whose elements carry enough context to build the
/// additive and multiplicative identities of their own ring.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Image of an integer under the structure map `Z -> R`.
    fn from_int_like(&self, n: &BigInt) -> Self;
    /// `0` for characteristic zero.
    fn characteristic(&self) -> u64;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn scale_int(&self, n: i64) -> Self {
        self.mul(&self.from_int_like(&BigInt::from(n)))
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::from(0)
    }
    fn one_like(&self) -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        n.clone()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        Rational::integer(n.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
}
