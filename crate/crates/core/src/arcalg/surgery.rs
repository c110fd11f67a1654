use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::rules::{self, Nesting, SplitSide};
use crate::diagram::{Components, Label, Pair, StackedDiagram, Vertex, Weight};
use crate::error::{Error, Result};
use crate::ring::{Coefficient, SymbolicScalar};

/// Topological type of one surgery or reverse surgery.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SurgeryKind {
    NonNestedMerge,
    NestedMerge,
    NonNestedSplit,
    NestedSplit,
}

impl SurgeryKind {
    pub fn is_merge(self) -> bool {
        matches!(self, SurgeryKind::NonNestedMerge | SurgeryKind::NestedMerge)
    }
}

/// Oriented states of a fixed stacked diagram: baseline weights with
/// coefficients.
pub type Terms = BTreeMap<Vec<Weight>, SymbolicScalar>;

pub fn accumulate<K: Ord, T: Coefficient>(map: &mut BTreeMap<K, T>, k: K, c: T) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

pub fn is_clockwise(d: &StackedDiagram, c: &crate::diagram::Circle, ws: &[Weight]) -> bool {
    let r = d.rightmost(c);
    ws[r.baseline].labels[r.index] == Label::Down
}

fn set_labels(d: &StackedDiagram, c: &crate::diagram::Circle, cw: bool, ws: &mut [Weight]) {
    for (v, l) in c.vertices.iter().zip(d.circle_labels(c, cw)) {
        ws[v.baseline].labels[v.index] = l;
    }
}

/// Where a topology change happens and which conventions it follows.
#[derive(Clone, Copy, Debug)]
pub struct Transition {
    /// Vertices that lie on the two circles being merged, read before.
    pub merge_sides: (Vertex, Vertex),
    /// Vertices that lie on the two circles after a split, read after.
    pub split_sides: (Vertex, Vertex),
    /// `p` at the starts of the two non-dotted paths of a split.
    pub ndot_starts: (usize, usize),
    pub saddle: usize,
    /// Additional factor `ε` on nested merges.
    pub nested_merge_eps: bool,
}

/// Diagram change with its precomputed circle data.
pub struct Change<'a> {
    pub before: &'a StackedDiagram,
    pub after: &'a StackedDiagram,
    pub bc: &'a Components,
    pub ac: &'a Components,
}

impl Change<'_> {
    pub fn kind(&self, tr: &Transition) -> SurgeryKind {
        let (a, b) = tr.merge_sides;
        let (ci, cj) = (self.bc.circle_of(a), self.bc.circle_of(b));
        if ci != cj {
            let (x, y) = (&self.bc.circles[ci], &self.bc.circles[cj]);
            if self.before.circle_inside(x, y) || self.before.circle_inside(y, x) {
                SurgeryKind::NestedMerge
            } else {
                SurgeryKind::NonNestedMerge
            }
        } else {
            let (a, b) = tr.split_sides;
            let (x, y) = (&self.ac.circles[self.ac.circle_of(a)], &self.ac.circles[self.ac.circle_of(b)]);
            if self.after.circle_inside(x, y) || self.after.circle_inside(y, x) {
                SurgeryKind::NestedSplit
            } else {
                SurgeryKind::NonNestedSplit
            }
        }
    }

    /// For a nested split, whether the first side is the inner circle.
    pub fn split_first_inner(&self, tr: &Transition) -> bool {
        let (a, b) = tr.split_sides;
        let (x, y) = (&self.ac.circles[self.ac.circle_of(a)], &self.ac.circles[self.ac.circle_of(b)]);
        self.after.circle_inside(x, y)
    }

    /// Image of one oriented state.
    pub fn apply(&self, tr: &Transition, ws: &[Weight], kind: SurgeryKind) -> Vec<(Vec<Weight>, SymbolicScalar)> {
        let (d0, d1) = (self.before, self.after);
        let t0 = |c: &crate::diagram::Circle| d0.rightmost_position(c) as i64;
        let t1 = |c: &crate::diagram::Circle| d1.rightmost_position(c) as i64;
        let s = tr.saddle as i64;
        if kind.is_merge() {
            let (a, b) = tr.merge_sides;
            let ci = &self.bc.circles[self.bc.circle_of(a)];
            let cj = &self.bc.circles[self.bc.circle_of(b)];
            let c = &self.ac.circles[self.ac.circle_of(a)];
            let (cw, mut coeff) = rules::merge(is_clockwise(d0, ci, ws), is_clockwise(d0, cj, ws), t0(ci), t0(cj), t1(c));
            if kind == SurgeryKind::NestedMerge {
                let inner = if d0.circle_inside(ci, cj) { ci } else { cj };
                coeff = coeff.mul(&rules::nested_merge_factor(d0.circle_q(inner), s));
                if tr.nested_merge_eps {
                    coeff = coeff.mul(&SymbolicScalar::epsilon());
                }
            }
            let mut out = ws.to_vec();
            set_labels(d1, c, cw, &mut out);
            vec![(out, coeff)]
        } else {
            let (a, b) = tr.split_sides;
            let c = &self.bc.circles[self.bc.circle_of(a)];
            let ci = &self.ac.circles[self.ac.circle_of(a)];
            let cj = &self.ac.circles[self.ac.circle_of(b)];
            let nested = (kind == SurgeryKind::NestedSplit).then(|| {
                let first_inner = d1.circle_inside(ci, cj);
                let inner = if first_inner { ci } else { cj };
                Nesting { q_in: d1.circle_q(inner), first_inner }
            });
            let first = SplitSide { t: t1(ci), start: tr.ndot_starts.0 as i64 };
            let second = SplitSide { t: t1(cj), start: tr.ndot_starts.1 as i64 };
            rules::split(is_clockwise(d0, c, ws), t0(c), first, second, s, nested)
                .into_iter()
                .map(|(cw_i, cw_j, coeff)| {
                    let mut out = ws.to_vec();
                    set_labels(d1, ci, cw_i, &mut out);
                    set_labels(d1, cj, cw_j, &mut out);
                    (out, coeff)
                })
                .collect()
        }
    }
}

/// The leftmost symmetric cup-cap pair of a layer not nested in any other
/// cup or cap of that layer.
pub fn leftmost_pair(d: &StackedDiagram, layer: usize) -> Option<Pair> {
    let l = &d.layers[layer];
    let free = |p: &Pair, arcs: &[Pair]| !arcs.iter().any(|&(a, b)| a < p.0 && p.1 < b);
    l.caps.iter().filter(|p| l.cups.contains(p) && free(p, &l.caps) && free(p, &l.cups)).min().copied()
}

/// Structural surgery: the cap and cup `pair` of `layer` become two
/// vertical strands.
pub fn surgery(d: &StackedDiagram, layer: usize, pair: Pair) -> Result<StackedDiagram> {
    let l = d.layers.get(layer).ok_or_else(|| Error::InvalidPair(format!("no layer {layer}")))?;
    let free = |arcs: &[Pair]| !arcs.iter().any(|&(a, b)| a < pair.0 && pair.1 < b);
    if !l.caps.contains(&pair) || !l.cups.contains(&pair) || !free(&l.caps) || !free(&l.cups) {
        return Err(Error::InvalidPair(format!("{pair:?} in layer {layer}")));
    }
    let mut e = d.clone();
    let l = &mut e.layers[layer];
    l.caps.retain(|p| *p != pair);
    l.cups.retain(|p| *p != pair);
    l.strands.push((pair.0, pair.0));
    l.strands.push((pair.1, pair.1));
    l.normalize();
    Ok(e)
}

fn surgery_transition(d: &StackedDiagram, layer: usize, pair: Pair) -> Transition {
    let (i, j) = pair;
    let v = |index| Vertex { baseline: layer, index };
    let b = &d.blocks[layer];
    let cup = d.layers[layer].cups.iter().position(|p| *p == pair).unwrap();
    Transition {
        merge_sides: (v(i), Vertex { baseline: layer + 1, index: i }),
        split_sides: (v(i), v(j)),
        ndot_starts: (b.position(i), b.position(j)),
        saddle: d.saddle_width(crate::diagram::ArcId::Cup { layer, idx: cup }),
        nested_merge_eps: false,
    }
}

/// Topological type of the surgery at `pair`.
pub fn classify_surgery(d: &StackedDiagram, layer: usize, pair: Pair) -> Result<SurgeryKind> {
    let e = surgery(d, layer, pair)?;
    let (bc, ac) = (d.components()?, e.components()?);
    let tr = surgery_transition(d, layer, pair);
    Ok(Change { before: d, after: &e, bc: &bc, ac: &ac }.kind(&tr))
}

/// Whether the surgery at `pair` is a nested split whose inner circle
/// contains the strand at `j`.
pub fn is_reflected_c(d: &StackedDiagram, layer: usize, pair: Pair) -> Result<bool> {
    let e = surgery(d, layer, pair)?;
    let (bc, ac) = (d.components()?, e.components()?);
    let tr = surgery_transition(d, layer, pair);
    let ch = Change { before: d, after: &e, bc: &bc, ac: &ac };
    Ok(ch.kind(&tr) == SurgeryKind::NestedSplit && !ch.split_first_inner(&tr))
}

/// One surgery applied to every state of `terms`. Nested splits use the
/// inner/outer rule regardless of the side the inner circle lies on.
pub fn surgery_step(d: &StackedDiagram, terms: &Terms, layer: usize, pair: Pair) -> Result<(StackedDiagram, Terms)> {
    surgery_step_with(d, terms, layer, pair, false)
}

/// As [`surgery_step`], failing with `CShapeUnsupported` on a reflected C.
pub fn surgery_step_strict(d: &StackedDiagram, terms: &Terms, layer: usize, pair: Pair) -> Result<(StackedDiagram, Terms)> {
    surgery_step_with(d, terms, layer, pair, true)
}

fn surgery_step_with(d: &StackedDiagram, terms: &Terms, layer: usize, pair: Pair, strict: bool) -> Result<(StackedDiagram, Terms)> {
    let e = surgery(d, layer, pair)?;
    let (bc, ac) = (d.components()?, e.components()?);
    let tr = surgery_transition(d, layer, pair);
    let ch = Change { before: d, after: &e, bc: &bc, ac: &ac };
    let kind = ch.kind(&tr);
    if strict && kind == SurgeryKind::NestedSplit && !ch.split_first_inner(&tr) {
        return Err(Error::CShapeUnsupported(format!("{pair:?} in layer {layer}")));
    }
    let mut out = Terms::new();
    for (ws, c) in terms {
        for (w, k) in ch.apply(&tr, ws, kind) {
            accumulate(&mut out, w, c.mul(&k));
        }
    }
    Ok((e, out))
}

/// Structural reverse surgery: the vertical strands at `i` and `j` of
/// `layer` become a cap and a cup.
pub fn reverse_surgery(d: &StackedDiagram, layer: usize, pair: Pair) -> Result<StackedDiagram> {
    let bad = || Error::InvalidSite(format!("{pair:?} in layer {layer}"));
    let l = d.layers.get(layer).ok_or_else(bad)?;
    let (i, j) = pair;
    if i >= j || !l.strands.contains(&(i, i)) || !l.strands.contains(&(j, j)) {
        return Err(bad());
    }
    if l.strands.iter().any(|&(a, b)| (i < a && a < j) || (i < b && b < j)) {
        return Err(bad());
    }
    let mut e = d.clone();
    let l = &mut e.layers[layer];
    l.strands.retain(|&s| s != (i, i) && s != (j, j));
    l.caps.push(pair);
    l.cups.push(pair);
    l.normalize();
    Ok(e)
}

/// Reverse surgery data. The bottom circle's non-dotted path starts at
/// `i` on the lower block, the top circle's at `j` on the upper block.
fn reverse_transition(d: &StackedDiagram, e: &StackedDiagram, layer: usize, pair: Pair) -> Transition {
    let (i, j) = pair;
    let cup = e.layers[layer].cups.iter().position(|p| *p == pair).unwrap();
    let v = |baseline, index| Vertex { baseline, index };
    Transition {
        merge_sides: (v(layer, i), v(layer, j)),
        split_sides: (v(layer, i), v(layer + 1, i)),
        ndot_starts: (d.blocks[layer].position(i), d.blocks[layer + 1].position(j)),
        saddle: e.saddle_width(crate::diagram::ArcId::Cup { layer, idx: cup }),
        nested_merge_eps: true,
    }
}

/// Topological type of the reverse surgery at `pair`.
pub fn classify_reverse(d: &StackedDiagram, layer: usize, pair: Pair) -> Result<SurgeryKind> {
    let e = reverse_surgery(d, layer, pair)?;
    let (bc, ac) = (d.components()?, e.components()?);
    let tr = reverse_transition(d, &e, layer, pair);
    Ok(Change { before: d, after: &e, bc: &bc, ac: &ac }.kind(&tr))
}

/// One reverse surgery applied to every state of `terms`.
pub fn reverse_step(d: &StackedDiagram, terms: &Terms, layer: usize, pair: Pair) -> Result<(StackedDiagram, Terms)> {
    let e = reverse_surgery(d, layer, pair)?;
    let (bc, ac) = (d.components()?, e.components()?);
    let tr = reverse_transition(d, &e, layer, pair);
    let ch = Change { before: d, after: &e, bc: &bc, ac: &ac };
    let kind = ch.kind(&tr);
    let mut out = Terms::new();
    for (ws, c) in terms {
        for (w, k) in ch.apply(&tr, ws, kind) {
            accumulate(&mut out, w, c.mul(&k));
        }
    }
    Ok((e, out))
}

/// Surgeries on `layer` in leftmost order until no pair is left.
pub fn reduce_layer(d: &StackedDiagram, terms: Terms, layer: usize) -> Result<(StackedDiagram, Terms)> {
    reduce_layer_with(d, terms, layer, false)
}

pub fn reduce_layer_with(d: &StackedDiagram, terms: Terms, layer: usize, strict: bool) -> Result<(StackedDiagram, Terms)> {
    let mut d = d.clone();
    let mut terms = terms;
    while let Some(p) = leftmost_pair(&d, layer) {
        let (e, t) = surgery_step_with(&d, &terms, layer, p, strict)?;
        d = e;
        terms = t;
    }
    Ok((d, terms))
}

/// Removes a layer of vertical strands between equal blocks, identifying
/// its two baselines.
pub fn collapse(d: &StackedDiagram, terms: Terms, layer: usize) -> Result<(StackedDiagram, Terms)> {
    let l = &d.layers[layer];
    if !l.caps.is_empty()
        || !l.cups.is_empty()
        || l.strands.iter().any(|(a, b)| a != b)
        || d.blocks[layer].symbols != d.blocks[layer + 1].symbols
    {
        return Err(Error::InvalidDiagram(format!("layer {layer} is not an identity")));
    }
    let mut e = d.clone();
    e.layers.remove(layer);
    e.blocks.remove(layer + 1);
    let mut out = Terms::new();
    for (mut ws, c) in terms {
        let upper = ws.remove(layer + 1);
        debug_assert_eq!(upper, ws[layer]);
        accumulate(&mut out, ws, c);
    }
    Ok((e, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Block, Layer};

    #[test]
    fn single_merge() {
        let b = Block::stars(2);
        let d = StackedDiagram {
            blocks: vec![b.clone(), b],
            bottom: vec![(0, 1)],
            layers: vec![Layer { caps: vec![(0, 1)], cups: vec![(0, 1)], strands: vec![] }],
            top: vec![(0, 1)],
        };
        assert_eq!(classify_surgery(&d, 0, (0, 1)).unwrap(), SurgeryKind::NonNestedMerge);
        assert!(matches!(classify_surgery(&d, 0, (0, 2)), Err(Error::InvalidPair(_))));
    }
}
