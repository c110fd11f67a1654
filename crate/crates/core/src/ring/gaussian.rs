use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use super::coefficient::{Coefficient, Euclidean, Field};

/// `re + im·i` over a base ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gaussian<T> {
    pub re: T,
    pub im: T,
}

/// ℤ[i].
pub type GaussInt = Gaussian<BigInt>;
/// ℚ(i).
pub type GaussRational = Gaussian<BigRational>;

impl<T: Coefficient> Gaussian<T> {
    pub fn new(re: T, im: T) -> Self {
        Gaussian { re, im }
    }

    pub fn i() -> Self {
        Gaussian { re: T::zero(), im: T::one() }
    }

    pub fn conj(&self) -> Self {
        Gaussian { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn norm_sq(&self) -> T {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }
}

impl<T: Coefficient> fmt::Display for Gaussian<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) if self.im.is_one() => write!(f, "i"),
            (true, false) if self.im.neg().is_one() => write!(f, "-i"),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => write!(f, "({}+{}i)", self.re, self.im),
        }
    }
}

impl<T: Coefficient> Coefficient for Gaussian<T> {
    fn zero() -> Self {
        Gaussian { re: T::zero(), im: T::zero() }
    }
    fn one() -> Self {
        Gaussian { re: T::one(), im: T::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Gaussian { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }
    fn neg(&self) -> Self {
        Gaussian { re: self.re.neg(), im: self.im.neg() }
    }
    fn mul(&self, o: &Self) -> Self {
        Gaussian { re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)), im: self.re.mul(&o.im).add(&self.im.mul(&o.re)) }
    }
    fn from_int(n: &BigInt) -> Self {
        Gaussian { re: T::from_int(n), im: T::zero() }
    }
    fn unit_inverse(&self) -> Option<Self> {
        let n = self.norm_sq().unit_inverse()?;
        let c = self.conj();
        Some(Gaussian { re: c.re.mul(&n), im: c.im.mul(&n) })
    }
}

impl Field for Gaussian<BigRational> {}

fn round_div(a: &BigInt, n: &BigInt) -> BigInt {
    // nearest integer to a/n for n > 0
    let two = BigInt::from(2);
    (a * &two + n).div_floor(&(n * &two))
}

impl Euclidean for Gaussian<BigInt> {
    fn norm(&self) -> BigInt {
        self.norm_sq()
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let n = d.norm_sq();
        let num = self.mul(&d.conj());
        let q = Gaussian { re: round_div(&num.re, &n), im: round_div(&num.im, &n) };
        let r = self.sub(&q.mul(d));
        (q, r)
    }

    fn normalizing_unit(&self) -> Self {
        // rotate into re > 0, im >= 0
        let units = [Gaussian::<BigInt>::one(), Gaussian::<BigInt>::i(), Gaussian::<BigInt>::one().neg(), Gaussian::<BigInt>::i().neg()];
        for u in units {
            let v = u.mul(self);
            if v.re.is_positive() && !v.im.is_negative() {
                return u;
            }
        }
        Gaussian::one()
    }
}

impl From<BigInt> for GaussInt {
    fn from(re: BigInt) -> Self {
        Gaussian { re, im: BigInt::from(0) }
    }
}

impl From<&GaussInt> for GaussRational {
    fn from(z: &GaussInt) -> Self {
        Gaussian { re: BigRational::from_integer(z.re.clone()), im: BigRational::from_integer(z.im.clone()) }
    }
}
