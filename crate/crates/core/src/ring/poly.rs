use std::fmt;

use num_bigint::BigInt;

use super::coefficient::Coefficient;
use super::gaussian::GaussInt;

/// Polynomial in α over a base ring, dense and trimmed (no trailing zeros).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlphaPoly<T> {
    coeffs: Vec<T>,
}

/// ℤ[α].
pub type IntPoly = AlphaPoly<BigInt>;
/// ℤ[i][α].
pub type GaussPoly = AlphaPoly<GaussInt>;

impl<T: Coefficient> AlphaPoly<T> {
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        AlphaPoly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn alpha() -> Self {
        Self::from_coeffs(vec![T::zero(), T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}

impl<T: Coefficient> fmt::Display for AlphaPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "a")?,
                1 => write!(f, "{c} a")?,
                _ if c.is_one() => write!(f, "a^{k}")?,
                _ => write!(f, "{c} a^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: Coefficient> Coefficient for AlphaPoly<T> {
    fn zero() -> Self {
        AlphaPoly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(T::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|k| match (self.coeffs.get(k), o.coeffs.get(k)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => T::zero(),
            })
            .collect();
        Self::from_coeffs(c)
    }
    fn neg(&self) -> Self {
        AlphaPoly { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(c)
    }
    fn from_int(n: &BigInt) -> Self {
        Self::constant(T::from_int(n))
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.coeffs.len() == 1 {
            self.coeffs[0].unit_inverse().map(Self::constant)
        } else {
            None
        }
    }
}
