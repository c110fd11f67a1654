//! m-closures and m-hulls, the ideal spanned by diagrams with an
//! outer-dotted middle weight, the resulting quotient algebra and its quiver.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::arcalg::{mult_basis, ArcElement, BasisDiagram};
use crate::diagram::{Block, Label, Pair, Symbol, Weight};
use crate::error::{Error, Result};
use crate::ring::{Coefficient, SpecTarget, Specialization, SymbolicScalar};

/// A block together with its m-hull and the closures of its weights.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HullData {
    pub base: Block,
    pub m: usize,
    pub hull: Block,
    /// `cl_m(λ)` for every `λ ∈ Λ`, in the order of [`weights_of`].
    pub closure: Vec<Weight>,
}

/// All weights of a block: every labeling with `ups` symbols `∧`.
pub fn weights_of(block: &Block) -> Vec<Weight> {
    let stars = block.star_indices();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << stars.len()) {
        if mask.count_ones() as usize != block.ups {
            continue;
        }
        let mut labels: Vec<Label> = block
            .symbols
            .iter()
            .map(|s| match s {
                Symbol::Empty => Label::Empty,
                Symbol::Cross => Label::Cross,
                Symbol::Star => Label::Down,
            })
            .collect();
        for (b, &i) in stars.iter().enumerate() {
            if mask >> b & 1 == 1 {
                labels[i] = Label::Up;
            }
        }
        out.push(Weight { start: block.start, labels });
    }
    out.sort();
    out
}

/// Smallest radius with every non-`∘` symbol of `block` inside `[-m, m]`.
pub fn minimal_m(block: &Block) -> usize {
    (0..block.len()).filter(|&i| block.symbols[i] != Symbol::Empty).map(|i| block.coordinate(i).unsigned_abs() as usize).max().unwrap_or(0)
}

/// The m-hull of `base`.
pub fn m_hull(base: &Block, m: usize) -> Result<HullData> {
    if minimal_m(base) > m {
        return Err(Error::MTooSmall(format!("{base} at start {} needs m >= {}", base.start, minimal_m(base))));
    }
    let (up, down) = (base.up() as i64, base.down() as i64);
    let mi = m as i64;
    let start = -mi - up;
    let end = mi + down;
    let closure_of = |w: &Weight| -> Weight {
        let labels = (start..=end)
            .map(|c| {
                if c < -mi {
                    Label::Down
                } else if c > mi {
                    Label::Up
                } else {
                    let k = c - w.start;
                    if k >= 0 && (k as usize) < w.len() {
                        w.labels[k as usize]
                    } else {
                        Label::Empty
                    }
                }
            })
            .collect();
        Weight { start, labels }
    };
    let closure: Vec<Weight> = weights_of(base).iter().map(closure_of).collect();
    let mut hull =
        closure_of(&weights_of(base).first().cloned().unwrap_or_else(|| Weight { start: base.start, labels: Vec::new() })).block();
    hull.ups = base.ups + base.down();
    Ok(HullData { base: base.clone(), m, hull, closure })
}

/// Basis diagram identity that forgets the `∘` symbols, so that hulls for
/// different `m` can be compared.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct CanonicalKey {
    pub cup: Vec<Pair>,
    pub labels: Vec<Label>,
    pub cap: Vec<Pair>,
}

impl HullData {
    pub fn minimal(base: &Block) -> Result<Self> {
        m_hull(base, minimal_m(base))
    }

    pub fn contains(&self, nu: &Weight) -> bool {
        self.closure.contains(nu)
    }

    /// The closure of a weight of the base block.
    pub fn closure_of(&self, lambda: &Weight) -> Option<&Weight> {
        weights_of(&self.base).iter().position(|w| w == lambda).map(|k| &self.closure[k])
    }

    /// `Σ_{ν ∈ cl_m(Λ)} ₁_ν`.
    pub fn closure_idempotent<T: Coefficient>(&self) -> ArcElement<T> {
        let mut e = ArcElement::zero(self.hull.clone());
        for w in &self.closure {
            let cup = w.underline().expect("closures need no rays");
            e.add_term(BasisDiagram { cup: cup.clone(), weight: w.clone(), cap: cup }, T::one());
        }
        e
    }

    /// Basis of `₁ · A_hull · ₁`: circle diagrams with cup and cap diagram
    /// both coming from closures.
    pub fn truncated_basis(&self) -> Vec<BasisDiagram> {
        let ends: Vec<Vec<Pair>> = self.closure.iter().map(|w| w.underline().expect("closures need no rays")).collect();
        crate::arcalg::basis(&self.hull).into_iter().filter(|d| ends.contains(&d.cup) && ends.contains(&d.cap)).collect()
    }

    pub fn canonical_key(&self, d: &BasisDiagram) -> CanonicalKey {
        let ord: BTreeMap<usize, usize> = self.hull.star_indices().into_iter().enumerate().map(|(k, i)| (i, k)).collect();
        let tr = |ps: &[Pair]| ps.iter().map(|(a, b)| (ord[a], ord[b])).collect();
        CanonicalKey { cup: tr(&d.cup), labels: d.weight.labels.iter().copied().filter(|l| *l != Label::Empty).collect(), cap: tr(&d.cap) }
    }
}

fn require_alpha_zero(spec: &Specialization) -> Result<()> {
    if spec.alpha_is_zero() {
        Ok(())
    } else {
        Err(Error::AlphaNotZero(spec.to_string()))
    }
}

/// Basis of `I(Λ, m)`: truncated diagrams whose middle weight is not a closure.
pub fn ideal_basis(h: &HullData, spec: &Specialization) -> Result<Vec<BasisDiagram>> {
    require_alpha_zero(spec)?;
    Ok(h.truncated_basis().into_iter().filter(|d| !h.contains(&d.weight)).collect())
}

/// The generalized algebra `₁ A_hull ₁ / I(Λ, m)` in normal form.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub hull: HullData,
    pub spec: Specialization,
    pub ideal: Vec<BasisDiagram>,
    pub basis: Vec<BasisDiagram>,
}

impl QuotientAlgebra {
    pub fn new(hull: HullData, spec: Specialization) -> Result<Self> {
        let ideal = ideal_basis(&hull, &spec)?;
        let basis = hull.truncated_basis().into_iter().filter(|d| hull.contains(&d.weight)).collect();
        Ok(QuotientAlgebra { hull, spec, ideal, basis })
    }

    pub fn contains(&self, d: &BasisDiagram) -> bool {
        self.basis.binary_search(d).is_ok()
    }

    /// Drops ideal terms.
    pub fn reduce<T: Coefficient>(&self, x: &ArcElement<T>) -> ArcElement<T> {
        let mut e = ArcElement::zero(x.block.clone());
        for (d, c) in &x.terms {
            if self.hull.contains(&d.weight) {
                e.add_term(d.clone(), c.clone());
            }
        }
        e
    }

    pub fn mult<T: SpecTarget>(&self, x: &ArcElement<T>, y: &ArcElement<T>) -> Result<ArcElement<T>> {
        Ok(self.reduce(&x.mult_in(y, &self.spec)?))
    }

    /// Product of two quotient basis diagrams, coefficients specialized
    /// into the symbolic ring.
    pub fn mult_basis(&self, x: &BasisDiagram, y: &BasisDiagram) -> Result<Vec<(BasisDiagram, SymbolicScalar)>> {
        let mut out: BTreeMap<BasisDiagram, SymbolicScalar> = BTreeMap::new();
        for (z, c) in mult_basis(x, y)? {
            if self.hull.contains(&z.weight) {
                let c: SymbolicScalar = self.spec.apply(&c)?;
                crate::arcalg::surgery::accumulate(&mut out, z, c);
            }
        }
        Ok(out.into_iter().collect())
    }

    pub fn unit<T: Coefficient>(&self) -> ArcElement<T> {
        self.hull.closure_idempotent()
    }

    pub fn quiver(&self) -> Result<Quiver> {
        quiver(self)
    }
}

/// `x · y` in the quotient algebra.
pub fn quotient_mult<T: SpecTarget>(q: &QuotientAlgebra, x: &ArcElement<T>, y: &ArcElement<T>) -> Result<ArcElement<T>> {
    q.mult(x, y)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Vertex {
    pub name: String,
    /// Weight of the base block.
    pub weight: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: String,
    pub target: String,
    pub diagram: String,
}

/// `left · right = Σ coefficient · basis element`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Relation {
    pub left: String,
    pub right: String,
    pub value: Vec<(String, String)>,
}

/// Vertices are the idempotents, arrows the degree-one basis elements and
/// relations all products of composable arrows.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Quiver {
    pub spec: String,
    pub basis: Vec<(String, usize)>,
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

fn short(h: &HullData, w: &Weight) -> String {
    let k = h.closure.iter().position(|c| c == w);
    match k {
        Some(k) => {
            let base = &weights_of(&h.base)[k];
            base.labels.iter().filter(|l| matches!(l, Label::Down | Label::Up)).map(|l| if *l == Label::Up { '^' } else { 'v' }).collect()
        }
        None => w.to_string(),
    }
}

/// Names basis elements `1[λ]` for idempotents and `x[λ,μ]` or
/// `x[λ,μ;d]` otherwise, with `λ̲` the cup and `μ̄` the cap diagram.
pub fn element_name(q: &QuotientAlgebra, d: &BasisDiagram) -> String {
    let h = &q.hull;
    let (l, r) = (short(h, &d.left_weight()), short(h, &d.right_weight()));
    if d.is_idempotent() {
        return format!("1[{l}]");
    }
    let same: Vec<&BasisDiagram> = q.basis.iter().filter(|e| e.cup == d.cup && e.cap == d.cap).collect();
    if same.len() == 1 {
        format!("x[{l},{r}]")
    } else {
        format!("x[{l},{r};{}]", d.degree())
    }
}

pub fn quiver(q: &QuotientAlgebra) -> Result<Quiver> {
    let name = |d: &BasisDiagram| element_name(q, d);
    let vertices =
        q.basis.iter().filter(|d| d.is_idempotent()).map(|d| Vertex { name: name(d), weight: short(&q.hull, &d.weight) }).collect();
    let arrows_d: Vec<&BasisDiagram> = q.basis.iter().filter(|d| d.degree() == 1).collect();
    let vname = |w: Weight| format!("1[{}]", short(&q.hull, &w));
    let arrows = arrows_d
        .iter()
        .map(|d| Arrow { name: name(d), source: vname(d.left_weight()), target: vname(d.right_weight()), diagram: d.to_string() })
        .collect();
    let mut relations = Vec::new();
    for a in &arrows_d {
        for b in &arrows_d {
            if a.cap != b.cup {
                continue;
            }
            let value = q.mult_basis(a, b)?.into_iter().map(|(z, c)| (c.to_string(), name(&z))).collect();
            relations.push(Relation { left: name(a), right: name(b), value });
        }
    }
    let seen: BTreeSet<String> = q.basis.iter().map(name).collect();
    debug_assert_eq!(seen.len(), q.basis.len());
    Ok(Quiver { spec: q.spec.to_string(), basis: q.basis.iter().map(|d| (name(d), d.degree())).collect(), vertices, arrows, relations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> Specialization {
        "0,-1,w".parse().unwrap()
    }

    #[test]
    fn two_star_hull() {
        let h = m_hull(&"**".parse().unwrap(), 2).unwrap();
        assert_eq!(h.hull.to_string(), "*oo**o*");
        assert!(h.hull.is_balanced());
        let cl: Vec<String> = h.closure.iter().map(|w| w.to_string()).collect();
        assert_eq!(cl, vec!["voov^o^", "voo^vo^"]);
        assert!(matches!(m_hull(&"**".parse().unwrap(), 0), Err(Error::MTooSmall(_))));
    }

    #[test]
    fn quotient_of_two_stars() {
        let q = QuotientAlgebra::new(HullData::minimal(&"**".parse().unwrap()).unwrap(), spec()).unwrap();
        assert_eq!(q.hull.truncated_basis().len(), 12);
        assert_eq!(q.basis.len(), 5);
        assert!(ideal_basis(&q.hull, &Specialization::kbn()).is_err());
        let qv = q.quiver().unwrap();
        assert_eq!(qv.vertices.len(), 2);
        assert_eq!(qv.arrows.len(), 2);
        let vals: Vec<_> = qv.relations.iter().map(|r| r.value.clone()).collect();
        assert_eq!(vals, vec![vec![], vec![("w".to_string(), "x[v^,v^;2]".to_string())]]);
    }
}
