use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::surgery::{accumulate, collapse, reduce_layer_with, Terms};
use crate::diagram::{all_matchings, anticlockwise_weight, Block, Layer, Orientation, Pair, StackedDiagram, Weight};
use crate::error::{Error, Result};
use crate::ring::{Coefficient, SpecTarget, Specialization, SymbolicScalar};

/// Oriented circle diagram `λ̲ ν μ̄`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct BasisDiagram {
    pub cup: Vec<Pair>,
    pub weight: Weight,
    pub cap: Vec<Pair>,
}

impl BasisDiagram {
    pub fn block(&self) -> Block {
        self.weight.block()
    }

    pub fn diagram(&self) -> StackedDiagram {
        StackedDiagram::closed(self.block(), self.cup.clone(), self.cap.clone())
    }

    pub fn degree(&self) -> usize {
        self.diagram().degree(std::slice::from_ref(&self.weight))
    }

    /// `λ` with `λ̲` the cup diagram.
    pub fn left_weight(&self) -> Weight {
        anticlockwise_weight(&self.block(), &self.cup)
    }

    /// `μ` with `μ̄` the cap diagram.
    pub fn right_weight(&self) -> Weight {
        anticlockwise_weight(&self.block(), &self.cap)
    }

    pub fn is_idempotent(&self) -> bool {
        self.cup == self.cap && self.weight == self.left_weight()
    }
}

impl fmt::Display for BasisDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {} {:?}", self.cup, self.weight, self.cap)
    }
}

/// All oriented circle diagrams on a block, ordered by cup diagram, cap
/// diagram and orientation counter. Empty unless the block is balanced.
pub fn basis(block: &Block) -> Vec<BasisDiagram> {
    if !block.is_balanced() {
        return Vec::new();
    }
    let ms = all_matchings(block);
    let mut out = Vec::new();
    for cup in &ms {
        for cap in &ms {
            let d = StackedDiagram::closed(block.clone(), cup.clone(), cap.clone());
            let comps = d.components().expect("closed diagram");
            for o in Orientation::all(comps.len()) {
                let w = d.weights(&comps, &o).remove(0);
                out.push(BasisDiagram { cup: cup.clone(), weight: w, cap: cap.clone() });
            }
        }
    }
    out
}

/// Product of two basis diagrams in the generic ring.
pub fn mult_basis(x: &BasisDiagram, y: &BasisDiagram) -> Result<Vec<(BasisDiagram, SymbolicScalar)>> {
    mult_basis_with(x, y, false)
}

/// As [`mult_basis`]; with `strict`, a reflected C-shape step is an error.
pub fn mult_basis_with(x: &BasisDiagram, y: &BasisDiagram, strict: bool) -> Result<Vec<(BasisDiagram, SymbolicScalar)>> {
    let b = x.block();
    if b != y.block() {
        return Err(Error::BlockMismatch(format!("{} vs {}", b, y.block())));
    }
    if x.cap != y.cup {
        return Ok(Vec::new());
    }
    let d = StackedDiagram {
        blocks: vec![b.clone(), b],
        bottom: x.cup.clone(),
        layers: vec![Layer { caps: x.cap.clone(), cups: y.cup.clone(), strands: Vec::new() }],
        top: y.cap.clone(),
    };
    let terms: Terms = [(vec![x.weight.clone(), y.weight.clone()], SymbolicScalar::one())].into();
    let (d, terms) = reduce_layer_with(&d, terms, 0, strict)?;
    let (_, terms) = collapse(&d, terms, 0)?;
    Ok(terms.into_iter().map(|(mut ws, c)| (BasisDiagram { cup: x.cup.clone(), weight: ws.remove(0), cap: y.cap.clone() }, c)).collect())
}

/// Finite linear combination of basis diagrams of one block.
#[derive(Clone, PartialEq, Debug)]
pub struct ArcElement<T = SymbolicScalar> {
    pub block: Block,
    pub terms: BTreeMap<BasisDiagram, T>,
}

impl<T: Coefficient> ArcElement<T> {
    pub fn zero(block: Block) -> Self {
        ArcElement { block, terms: BTreeMap::new() }
    }

    pub fn from_basis(d: BasisDiagram) -> Self {
        Self::term(d, T::one())
    }

    pub fn term(d: BasisDiagram, c: T) -> Self {
        let mut e = Self::zero(d.block());
        e.add_term(d, c);
        e
    }

    pub fn add_term(&mut self, d: BasisDiagram, c: T) {
        accumulate(&mut self.terms, d, c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, d: &BasisDiagram) -> T {
        self.terms.get(d).cloned().unwrap_or_else(T::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut e = self.clone();
        for (d, c) in &o.terms {
            e.add_term(d.clone(), c.clone());
        }
        e
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut e = Self::zero(self.block.clone());
        for (d, x) in &self.terms {
            e.add_term(d.clone(), x.mul(c));
        }
        e
    }

    /// Applies `f` to every coefficient.
    pub fn map<U: Coefficient>(&self, mut f: impl FnMut(&BasisDiagram, &T) -> Result<U>) -> Result<ArcElement<U>> {
        let mut e = ArcElement::zero(self.block.clone());
        for (d, c) in &self.terms {
            e.add_term(d.clone(), f(d, c)?);
        }
        Ok(e)
    }

    /// Degree of every term, in term order.
    pub fn degrees(&self) -> Vec<usize> {
        self.terms.keys().map(|d| d.degree()).collect()
    }
}

impl<T: SpecTarget> ArcElement<T> {
    /// Product with the structure constants specialized by `spec`.
    pub fn mult_in(&self, o: &Self, spec: &Specialization) -> Result<Self> {
        if self.block != o.block {
            return Err(Error::BlockMismatch(format!("{} vs {}", self.block, o.block)));
        }
        let mut e = Self::zero(self.block.clone());
        for (x, a) in &self.terms {
            for (y, b) in &o.terms {
                let ab = a.mul(b);
                for (z, c) in mult_basis(x, y)? {
                    e.add_term(z, ab.mul(&spec.apply::<T>(&c)?));
                }
            }
        }
        Ok(e)
    }

    pub fn specialize(x: &ArcElement<SymbolicScalar>, spec: &Specialization) -> Result<Self> {
        x.map(|_, c| spec.apply(c))
    }
}

impl ArcElement<SymbolicScalar> {
    pub fn mult(&self, o: &Self) -> Result<Self> {
        if self.block != o.block {
            return Err(Error::BlockMismatch(format!("{} vs {}", self.block, o.block)));
        }
        let mut e = Self::zero(self.block.clone());
        for (x, a) in &self.terms {
            for (y, b) in &o.terms {
                let ab = a.mul(b);
                for (z, c) in mult_basis(x, y)? {
                    e.add_term(z, ab.mul(&c));
                }
            }
        }
        Ok(e)
    }
}

impl<T: Coefficient> fmt::Display for ArcElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {d}")?;
        }
        Ok(())
    }
}

/// `₁_λ = λ̲ λ λ̄`.
pub fn idempotent<T: Coefficient>(lambda: &Weight) -> Result<ArcElement<T>> {
    let cup = lambda.underline()?;
    Ok(ArcElement::from_basis(BasisDiagram { cup: cup.clone(), weight: lambda.clone(), cap: cup }))
}

/// Sum of all idempotents of a block.
pub fn unit<T: Coefficient>(block: &Block) -> ArcElement<T> {
    let mut e = ArcElement::zero(block.clone());
    if block.is_balanced() {
        for m in all_matchings(block) {
            let w = anticlockwise_weight(block, &m);
            e.add_term(BasisDiagram { cup: m.clone(), weight: w, cap: m }, T::one());
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> SymbolicScalar {
        x.parse().unwrap()
    }

    #[test]
    fn two_star_algebra() {
        let b: Block = "**".parse().unwrap();
        let bs = basis(&b);
        assert_eq!(bs.len(), 2);
        assert_eq!(bs.iter().map(|d| d.degree()).collect::<Vec<_>>(), vec![0, 2]);
        let e = ArcElement::from_basis(bs[0].clone());
        let x = ArcElement::from_basis(bs[1].clone());
        assert_eq!(e.mult(&e).unwrap(), e);
        assert_eq!(e.mult(&x).unwrap(), x);
        assert_eq!(x.mult(&x).unwrap(), e.scale(&s("a")));
    }

    #[test]
    fn four_star_basis_size() {
        assert_eq!(basis(&"****".parse().unwrap()).len(), 12);
        assert_eq!(basis(&"x".parse().unwrap()).len(), 1);
        assert!(basis(&"*".parse().unwrap()).is_empty());
    }
}
