use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::coefficient::Coefficient;
use super::gaussian::{GaussInt, GaussRational, Gaussian};
use super::poly::{AlphaPoly, GaussPoly, IntPoly};
use super::scalar::{Monomial, SymbolicScalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum AlphaImage {
    Generic,
    Value(BigInt),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum EpsilonImage {
    Generic,
    Plus,
    Minus,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum OmegaImage {
    Generic,
    One,
    MinusOne,
    I,
    MinusI,
}

/// Ring homomorphism out of ℤ[α, ω^{±1}, ε]/(ε²−1).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Specialization {
    pub name: String,
    pub alpha: AlphaImage,
    pub epsilon: EpsilonImage,
    pub omega: OmegaImage,
}

impl Specialization {
    pub fn new(name: &str, alpha: AlphaImage, epsilon: EpsilonImage, omega: OmegaImage) -> Self {
        Specialization { name: name.to_string(), alpha, epsilon, omega }
    }

    pub fn generic() -> Self {
        Self::new("generic", AlphaImage::Generic, EpsilonImage::Generic, OmegaImage::Generic)
    }

    pub fn kbn() -> Self {
        Self::new("kbn", AlphaImage::Generic, EpsilonImage::Plus, OmegaImage::One)
    }

    pub fn bl() -> Self {
        Self::new("bl", AlphaImage::Generic, EpsilonImage::Minus, OmegaImage::One)
    }

    pub fn ca() -> Self {
        Self::new("ca", AlphaImage::Generic, EpsilonImage::Minus, OmegaImage::I)
    }

    /// Same specialization with α sent to an integer.
    pub fn with_alpha(mut self, a: i64) -> Self {
        self.alpha = AlphaImage::Value(BigInt::from(a));
        self.name = format!("{}[a={a}]", self.name);
        self
    }

    pub fn named(name: &str) -> Option<Self> {
        match name {
            "generic" => Some(Self::generic()),
            "kbn" => Some(Self::kbn()),
            "bl" => Some(Self::bl()),
            "ca" | "cmw" => Some(Self::ca()),
            _ => None,
        }
    }

    pub fn alpha_is_zero(&self) -> bool {
        matches!(&self.alpha, AlphaImage::Value(v) if num_traits::Zero::is_zero(v))
    }

    pub fn apply<T: SpecTarget>(&self, x: &SymbolicScalar) -> Result<T> {
        let a = T::alpha_image(&self.alpha)?;
        let e = T::epsilon_image(self.epsilon)?;
        let w = T::omega_image(self.omega)?;
        let w_inv = w.unit_inverse().ok_or_else(|| Error::ImageNotRepresentable(format!("omega image {w} is not a unit")))?;
        let mut acc = T::zero();
        for (m, c) in x.terms() {
            let mut t = T::from_int(c);
            t = t.mul(&a.pow(m.a));
            let wp = if m.w >= 0 { w.pow(m.w as u32) } else { w_inv.pow(m.w.unsigned_abs()) };
            t = t.mul(&wp);
            if m.e == 1 {
                t = t.mul(&e);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

impl FromStr for Specialization {
    type Err = Error;

    /// `kbn`, `bl`, `ca`, `generic`, or `custom:α,ε,ω` (the `custom:` prefix
    /// is optional) with α ∈ {a, integer}, ε ∈ {1,-1,e}, ω ∈ {1,-1,i,-i,w}.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(sp) = Self::named(s) {
            return Ok(sp);
        }
        let body = s.strip_prefix("custom:").unwrap_or(s);
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        let [a, e, w] = parts[..] else {
            return Err(Error::Parse(format!("unknown specialization {s:?}")));
        };
        let alpha = match a {
            "a" | "α" => AlphaImage::Generic,
            n => AlphaImage::Value(n.parse().map_err(|_| Error::Parse(format!("bad alpha image {n:?}")))?),
        };
        let epsilon = match e {
            "1" | "+1" => EpsilonImage::Plus,
            "-1" | "−1" => EpsilonImage::Minus,
            "e" | "ε" => EpsilonImage::Generic,
            _ => return Err(Error::Parse(format!("bad epsilon image {e:?}"))),
        };
        let omega = match w {
            "1" | "+1" => OmegaImage::One,
            "-1" | "−1" => OmegaImage::MinusOne,
            "i" | "+i" => OmegaImage::I,
            "-i" | "−i" => OmegaImage::MinusI,
            "w" | "ω" => OmegaImage::Generic,
            _ => return Err(Error::Parse(format!("bad omega image {w:?}"))),
        };
        Ok(Specialization { name: format!("custom:{a},{e},{w}"), alpha, epsilon, omega })
    }
}

/// A ring that can receive the images of α, ε and ω.
pub trait SpecTarget: Coefficient {
    fn alpha_image(a: &AlphaImage) -> Result<Self>;
    fn epsilon_image(e: EpsilonImage) -> Result<Self>;
    fn omega_image(w: OmegaImage) -> Result<Self>;
}

fn unrepresentable<T>(what: impl fmt::Debug, target: &str) -> Result<T> {
    Err(Error::ImageNotRepresentable(format!("{what:?} in {target}")))
}

fn sign_image<T: Coefficient>(e: EpsilonImage, target: &str) -> Result<T> {
    match e {
        EpsilonImage::Plus => Ok(T::one()),
        EpsilonImage::Minus => Ok(T::one().neg()),
        EpsilonImage::Generic => unrepresentable(e, target),
    }
}

fn real_omega<T: Coefficient>(w: OmegaImage, target: &str) -> Result<T> {
    match w {
        OmegaImage::One => Ok(T::one()),
        OmegaImage::MinusOne => Ok(T::one().neg()),
        other => unrepresentable(other, target),
    }
}

fn gauss_omega<T: Coefficient>(w: OmegaImage, target: &str) -> Result<Gaussian<T>> {
    match w {
        OmegaImage::I => Ok(Gaussian::i()),
        OmegaImage::MinusI => Ok(Gaussian::<T>::i().neg()),
        other => real_omega(other, target),
    }
}

fn value_alpha<T: Coefficient>(a: &AlphaImage, target: &str) -> Result<T> {
    match a {
        AlphaImage::Value(v) => Ok(T::from_int(v)),
        AlphaImage::Generic => unrepresentable(a, target),
    }
}

impl SpecTarget for SymbolicScalar {
    fn alpha_image(a: &AlphaImage) -> Result<Self> {
        Ok(match a {
            AlphaImage::Generic => SymbolicScalar::alpha(),
            AlphaImage::Value(v) => SymbolicScalar::from_int(v),
        })
    }
    fn epsilon_image(e: EpsilonImage) -> Result<Self> {
        match e {
            EpsilonImage::Generic => Ok(SymbolicScalar::epsilon()),
            _ => sign_image(e, "symbolic"),
        }
    }
    fn omega_image(w: OmegaImage) -> Result<Self> {
        match w {
            OmegaImage::Generic => Ok(SymbolicScalar::monomial(1, Monomial::new(0, 1, 0))),
            _ => real_omega(w, "symbolic"),
        }
    }
}

impl SpecTarget for BigInt {
    fn alpha_image(a: &AlphaImage) -> Result<Self> {
        value_alpha(a, "Z")
    }
    fn epsilon_image(e: EpsilonImage) -> Result<Self> {
        sign_image(e, "Z")
    }
    fn omega_image(w: OmegaImage) -> Result<Self> {
        real_omega(w, "Z")
    }
}

impl SpecTarget for BigRational {
    fn alpha_image(a: &AlphaImage) -> Result<Self> {
        value_alpha(a, "Q")
    }
    fn epsilon_image(e: EpsilonImage) -> Result<Self> {
        sign_image(e, "Q")
    }
    fn omega_image(w: OmegaImage) -> Result<Self> {
        real_omega(w, "Q")
    }
}

impl SpecTarget for GaussInt {
    fn alpha_image(a: &AlphaImage) -> Result<Self> {
        value_alpha(a, "Z[i]")
    }
    fn epsilon_image(e: EpsilonImage) -> Result<Self> {
        sign_image(e, "Z[i]")
    }
    fn omega_image(w: OmegaImage) -> Result<Self> {
        gauss_omega(w, "Z[i]")
    }
}

impl SpecTarget for GaussRational {
    fn alpha_image(a: &AlphaImage) -> Result<Self> {
        value_alpha(a, "Q(i)")
    }
    fn epsilon_image(e: EpsilonImage) -> Result<Self> {
        sign_image(e, "Q(i)")
    }
    fn omega_image(w: OmegaImage) -> Result<Self> {
        gauss_omega(w, "Q(i)")
    }
}

impl SpecTarget for IntPoly {
    fn alpha_image(a: &AlphaImage) -> Result<Self> {
        Ok(match a {
            AlphaImage::Generic => AlphaPoly::alpha(),
            AlphaImage::Value(v) => AlphaPoly::from_int(v),
        })
    }
    fn epsilon_image(e: EpsilonImage) -> Result<Self> {
        sign_image(e, "Z[a]")
    }
    fn omega_image(w: OmegaImage) -> Result<Self> {
        real_omega(w, "Z[a]")
    }
}

impl SpecTarget for GaussPoly {
    fn alpha_image(a: &AlphaImage) -> Result<Self> {
        Ok(match a {
            AlphaImage::Generic => AlphaPoly::alpha(),
            AlphaImage::Value(v) => AlphaPoly::from_int(v),
        })
    }
    fn epsilon_image(e: EpsilonImage) -> Result<Self> {
        sign_image(e, "Z[i][a]")
    }
    fn omega_image(w: OmegaImage) -> Result<Self> {
        gauss_omega::<BigInt>(w, "Z[i][a]").map(AlphaPoly::constant)
    }
}
