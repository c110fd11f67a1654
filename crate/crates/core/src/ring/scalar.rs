use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::coefficient::Coefficient;
use crate::error::{Error, Result};

/// `α^a ω^w ε^e` with `e` reduced mod 2.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    pub a: u32,
    pub w: i32,
    pub e: u8,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, w: 0, e: 0 };

    pub fn new(a: u32, w: i32, e: u32) -> Self {
        Monomial { a, w, e: (e % 2) as u8 }
    }

    pub fn degree(self) -> i64 {
        4 * self.a as i64
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;

    fn mul(self, o: Monomial) -> Monomial {
        Monomial { a: self.a + o.a, w: self.w + o.w, e: self.e ^ o.e }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.a {
            0 => {}
            1 => parts.push("a".to_string()),
            k => parts.push(format!("a^{k}")),
        }
        match self.w {
            0 => {}
            1 => parts.push("w".to_string()),
            k => parts.push(format!("w^{k}")),
        }
        if self.e == 1 {
            parts.push("e".to_string());
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// Element of ℤ[α, ω^{±1}, ε]/(ε²−1) as a sparse map from monomials to
/// nonzero integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct SymbolicScalar {
    terms: BTreeMap<Monomial, BigInt>,
}

impl SymbolicScalar {
    pub fn monomial(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert(m, c);
        }
        SymbolicScalar { terms }
    }

    pub fn alpha() -> Self {
        Self::monomial(1, Monomial::new(1, 0, 0))
    }

    pub fn omega() -> Self {
        Self::monomial(1, Monomial::new(0, 1, 0))
    }

    pub fn omega_inv() -> Self {
        Self::monomial(1, Monomial::new(0, -1, 0))
    }

    pub fn epsilon() -> Self {
        Self::monomial(1, Monomial::new(0, 0, 1))
    }

    /// `ε^k`, reduced by parity; `k` may be negative.
    pub fn epsilon_pow(k: i64) -> Self {
        Self::monomial(1, Monomial::new(0, 0, k.rem_euclid(2) as u32))
    }

    pub fn omega_pow(k: i32) -> Self {
        Self::monomial(1, Monomial::new(0, k, 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        let slot = self.terms.entry(m).or_insert_with(|| BigInt::from(0));
        *slot += c;
        if Zero::is_zero(slot) {
            self.terms.remove(&m);
        }
    }

    /// Common `4a` if every term has the same α-exponent.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys();
        let a = it.next()?.a;
        it.all(|m| m.a == a).then_some(4 * a as i64)
    }

    /// The single term `(c, m)` if the scalar is a monomial.
    pub fn as_monomial(&self) -> Option<(&BigInt, Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, *m))
        } else {
            None
        }
    }

    /// `±α^k ω^m ε^j`.
    pub fn is_signed_monomial(&self) -> bool {
        self.as_monomial().is_some_and(|(c, _)| Signed::abs(c) == BigInt::from(1))
    }
}

impl Coefficient for SymbolicScalar {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::monomial(1, Monomial::ONE)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
    fn neg(&self) -> Self {
        SymbolicScalar { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(*m1 * *m2, c1 * c2);
            }
        }
        out
    }
    fn from_int(n: &BigInt) -> Self {
        Self::monomial(n.clone(), Monomial::ONE)
    }
    fn unit_inverse(&self) -> Option<Self> {
        let (c, m) = self.as_monomial()?;
        if m.a != 0 || Signed::abs(c) != BigInt::from(1) {
            return None;
        }
        Some(Self::monomial(c.clone(), Monomial { a: 0, w: -m.w, e: m.e }))
    }
}

impl fmt::Display for SymbolicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let body = m.to_string();
            if body.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == BigInt::from(1) {
                write!(f, "{body}")?;
            } else {
                write!(f, "{mag} {body}")?;
            }
        }
        Ok(())
    }
}

fn parse_exponent(tok: &str, sym: &str) -> Result<Option<i64>> {
    let Some(rest) = tok.strip_prefix(sym) else {
        return Ok(None);
    };
    if rest.is_empty() {
        return Ok(Some(1));
    }
    let exp = rest.strip_prefix('^').ok_or_else(|| Error::Parse(format!("bad factor {tok:?}")))?;
    exp.parse::<i64>().map(Some).map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))
}

fn parse_term(s: &str) -> Result<SymbolicScalar> {
    let mut c = BigInt::from(1);
    let mut m = Monomial::ONE;
    for tok in s.split_whitespace() {
        if let Ok(n) = tok.parse::<BigInt>() {
            c *= n;
        } else if let Some(k) = parse_exponent(tok, "a")? {
            let k = u32::try_from(k).map_err(|_| Error::Parse(format!("negative α power in {tok:?}")))?;
            m.a += k;
        } else if let Some(k) = parse_exponent(tok, "w")? {
            m.w += k as i32;
        } else if let Some(k) = parse_exponent(tok, "e")? {
            m.e ^= k.rem_euclid(2) as u8;
        } else {
            return Err(Error::Parse(format!("unknown factor {tok:?}")));
        }
    }
    Ok(SymbolicScalar::monomial(c, m))
}

impl FromStr for SymbolicScalar {
    type Err = Error;

    /// Parses the text rendering, e.g. `1 - 2 a w^-1 e + e`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = SymbolicScalar::zero();
        let mut sign = 1i64;
        let mut cur = String::new();
        let spaced = s.replace('-', " - ").replace('+', " + ").replace("^ - ", "^-");
        let mut seen = false;
        for tok in spaced.split_whitespace() {
            match tok {
                "+" | "-" => {
                    if !cur.trim().is_empty() {
                        out = out.add(&parse_term(&cur)?.mul(&SymbolicScalar::from_i64(sign)));
                        cur.clear();
                        sign = 1;
                    }
                    if tok == "-" {
                        sign = -sign;
                    }
                }
                t => {
                    seen = true;
                    cur.push(' ');
                    cur.push_str(t);
                }
            }
        }
        if !seen {
            return Err(Error::Parse(format!("empty scalar {s:?}")));
        }
        if !cur.trim().is_empty() {
            out = out.add(&parse_term(&cur)?.mul(&SymbolicScalar::from_i64(sign)));
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    c: IntRepr,
    a: u32,
    w: i32,
    e: u8,
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for SymbolicScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr { c: c.to_i64().map_or_else(|| IntRepr::Big(c.to_string()), IntRepr::Small), a: m.a, w: m.w, e: m.e })
            .collect();
        ScalarRepr { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymbolicScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(d)?;
        let mut out = SymbolicScalar::zero();
        for t in repr.terms {
            let c = match t.c {
                IntRepr::Small(n) => BigInt::from(n),
                IntRepr::Big(s) => s.parse().map_err(serde::de::Error::custom)?,
            };
            out.add_term(Monomial::new(t.a, t.w, t.e as u32), c);
        }
        Ok(out)
    }
}
