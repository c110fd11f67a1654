use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Commutative ring with identity used as a coefficient domain.
///
/// Methods take references so that big-integer backed values are not cloned
/// needlessly.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn from_int(n: &BigInt) -> Self;
    /// Multiplicative inverse if `self` is a unit.
    fn unit_inverse(&self) -> Option<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    fn from_i64(n: i64) -> Self {
        Self::from_int(&BigInt::from(n))
    }
}

/// Euclidean domain, used for Smith normal forms.
pub trait Euclidean: Coefficient {
    /// Euclidean size; zero only for zero.
    fn norm(&self) -> BigInt;
    /// Division with remainder, `norm(r) < norm(d)`.
    fn div_rem(&self, d: &Self) -> (Self, Self);
    /// Unit `u` such that `u * self` is the canonical associate.
    fn normalizing_unit(&self) -> Self;
}

/// Marker for fields: every nonzero element has `unit_inverse`.
pub trait Field: Coefficient {}

impl Coefficient for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_int(n: &BigInt) -> Self {
        n.clone()
    }
    fn unit_inverse(&self) -> Option<Self> {
        if Signed::abs(self) == BigInt::from(1) {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl Euclidean for BigInt {
    fn norm(&self) -> BigInt {
        self.abs()
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        Integer::div_rem(self, d)
    }
    fn normalizing_unit(&self) -> Self {
        if self.is_negative() {
            BigInt::from(-1)
        } else {
            BigInt::from(1)
        }
    }
}

impl Coefficient for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_int(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn unit_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Field for BigRational {}
