//! Arc bimodules over composite matchings: basis, the two actions and
//! reverse surgery.

mod matching;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use matching::{CompositeMatching, Move, Sign};

use crate::arcalg::surgery::{accumulate, collapse, reduce_layer_with, reverse_step, reverse_surgery, Terms};
use crate::arcalg::BasisDiagram;
use crate::diagram::{all_matchings, Layer, Orientation, Pair, StackedDiagram, Weight};
use crate::error::{Error, Result};
use crate::ring::{Coefficient, SymbolicScalar};

/// `λ̲ (t⃗, ν⃗) μ̄`: cups on `Λ₀`, one weight per block, caps on `Λ_r`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct BimoduleBasisDiagram {
    pub cup: Vec<Pair>,
    pub weights: Vec<Weight>,
    pub cap: Vec<Pair>,
}

impl BimoduleBasisDiagram {
    pub fn diagram(&self, m: &CompositeMatching) -> StackedDiagram {
        m.diagram(&self.cup, &self.cap)
    }

    /// Clockwise cups and caps, without the global shift.
    pub fn degree(&self, m: &CompositeMatching) -> usize {
        self.diagram(m).degree(&self.weights)
    }

    pub fn shifted_degree(&self, m: &CompositeMatching) -> i64 {
        self.degree(m) as i64 + m.shift()
    }
}

impl fmt::Display for BimoduleBasisDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "{:?} {} {:?}", self.cup, ws.join("|"), self.cap)
    }
}

/// All orientations of all closures of `m`, ordered by cups, caps and
/// orientation counter.
pub fn bimodule_basis(m: &CompositeMatching) -> Result<Vec<BimoduleBasisDiagram>> {
    if !m.source().is_balanced() || !m.target().is_balanced() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for cup in all_matchings(m.source()) {
        for cap in all_matchings(m.target()) {
            let d = m.diagram(&cup, &cap);
            d.validate()?;
            let comps = d.components()?;
            for o in Orientation::all(comps.len()) {
                out.push(BimoduleBasisDiagram { cup: cup.clone(), weights: d.weights(&comps, &o), cap: cap.clone() });
            }
        }
    }
    Ok(out)
}

fn reduce(d: StackedDiagram, ws: Vec<Weight>, layer: usize, strict: bool) -> Result<Terms> {
    let terms: Terms = [(ws, SymbolicScalar::one())].into();
    let (d, terms) = reduce_layer_with(&d, terms, layer, strict)?;
    Ok(collapse(&d, terms, layer)?.1)
}

/// `a · x` for an algebra basis diagram on `Λ₀`.
pub fn act_left(a: &BasisDiagram, m: &CompositeMatching, x: &BimoduleBasisDiagram) -> Result<Vec<(BimoduleBasisDiagram, SymbolicScalar)>> {
    if a.block().symbols != m.source().symbols {
        return Err(Error::BlockMismatch(format!("{} acting on {}", a.block(), m.source())));
    }
    if a.cap != x.cup {
        return Ok(Vec::new());
    }
    let mut blocks = vec![m.source().clone()];
    blocks.extend(m.blocks.iter().cloned());
    let mut layers = vec![Layer { caps: a.cap.clone(), cups: x.cup.clone(), strands: Vec::new() }];
    layers.extend(m.layers.iter().cloned());
    let d = StackedDiagram { blocks, bottom: a.cup.clone(), layers, top: x.cap.clone() };
    let mut ws = vec![a.weight.clone()];
    ws.extend(x.weights.iter().cloned());
    Ok(reduce(d, ws, 0, false)?
        .into_iter()
        .map(|(ws, c)| (BimoduleBasisDiagram { cup: a.cup.clone(), weights: ws, cap: x.cap.clone() }, c))
        .collect())
}

/// `x · b` for an algebra basis diagram on `Λ_r`.
pub fn act_right(m: &CompositeMatching, x: &BimoduleBasisDiagram, b: &BasisDiagram) -> Result<Vec<(BimoduleBasisDiagram, SymbolicScalar)>> {
    if b.block().symbols != m.target().symbols {
        return Err(Error::BlockMismatch(format!("{} acting on {}", b.block(), m.target())));
    }
    if x.cap != b.cup {
        return Ok(Vec::new());
    }
    let r = m.layers.len();
    let mut blocks = m.blocks.clone();
    blocks.push(m.target().clone());
    let mut layers = m.layers.clone();
    layers.push(Layer { caps: x.cap.clone(), cups: b.cup.clone(), strands: Vec::new() });
    let d = StackedDiagram { blocks, bottom: x.cup.clone(), layers, top: b.cap.clone() };
    let mut ws = x.weights.clone();
    ws.push(b.weight.clone());
    Ok(reduce(d, ws, r, false)?
        .into_iter()
        .map(|(ws, c)| (BimoduleBasisDiagram { cup: x.cup.clone(), weights: ws, cap: b.cap.clone() }, c))
        .collect())
}

/// Matching after a reverse surgery at strands `pair` of `layer`.
pub fn reverse_matching(m: &CompositeMatching, layer: usize, pair: Pair) -> Result<CompositeMatching> {
    let top: Vec<Pair> = Vec::new();
    let d = StackedDiagram { blocks: m.blocks.clone(), bottom: Vec::new(), layers: m.layers.clone(), top };
    let e = reverse_surgery(&d, layer, pair)?;
    Ok(CompositeMatching { blocks: e.blocks, layers: e.layers })
}

/// Reverse surgery at the vertical strands `pair` of `layer`, returning
/// the new matching and the image of `x`.
pub fn rmult(
    m: &CompositeMatching,
    x: &BimoduleBasisDiagram,
    layer: usize,
    pair: Pair,
) -> Result<(CompositeMatching, Vec<(BimoduleBasisDiagram, SymbolicScalar)>)> {
    let d = x.diagram(m);
    reverse_surgery(&d, layer, pair)?.validate().map_err(|e| Error::InvalidSite(e.to_string()))?;
    let terms: Terms = [(x.weights.clone(), SymbolicScalar::one())].into();
    let (e, terms) = reverse_step(&d, &terms, layer, pair)?;
    let m2 = CompositeMatching { blocks: e.blocks, layers: e.layers };
    let out = terms.into_iter().map(|(ws, c)| (BimoduleBasisDiagram { cup: x.cup.clone(), weights: ws, cap: x.cap.clone() }, c)).collect();
    Ok((m2, out))
}

/// Finite combination of bimodule basis diagrams of one matching.
#[derive(Clone, PartialEq, Debug)]
pub struct BimoduleElement {
    pub matching: CompositeMatching,
    pub terms: BTreeMap<BimoduleBasisDiagram, SymbolicScalar>,
}

impl BimoduleElement {
    pub fn zero(matching: CompositeMatching) -> Self {
        BimoduleElement { matching, terms: BTreeMap::new() }
    }

    pub fn from_basis(matching: CompositeMatching, x: BimoduleBasisDiagram) -> Self {
        let mut e = Self::zero(matching);
        e.add_term(x, SymbolicScalar::one());
        e
    }

    pub fn add_term(&mut self, x: BimoduleBasisDiagram, c: SymbolicScalar) {
        accumulate(&mut self.terms, x, c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}
