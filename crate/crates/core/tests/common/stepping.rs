//! Single products on star blocks, stepped one surgery at a time.

use arcalg::arcalg::{classify_surgery, leftmost_pair, surgery_step, SurgeryKind, Terms};
use arcalg::diagram::{Block, Layer, Orientation, Pair, StackedDiagram, Weight};
use arcalg::ring::{Coefficient, SymbolicScalar};

pub fn s(x: &str) -> SymbolicScalar {
    x.parse().unwrap()
}

/// `λ̲ μ̄` stacked on `μ̲ η̄` over `n` stars.
pub fn stacked(n: usize, lambda: &[Pair], mu: &[Pair], eta: &[Pair]) -> StackedDiagram {
    let b = Block::stars(n);
    StackedDiagram {
        blocks: vec![b.clone(), b],
        bottom: lambda.to_vec(),
        layers: vec![Layer { caps: mu.to_vec(), cups: mu.to_vec(), strands: vec![] }],
        top: eta.to_vec(),
    }
}

pub fn oriented(d: &StackedDiagram, clockwise: &[bool]) -> Vec<Weight> {
    let c = d.components().unwrap();
    d.weights(&c, &Orientation { clockwise: clockwise.to_vec() })
}

pub fn anticlockwise(d: &StackedDiagram) -> Vec<Weight> {
    let n = d.components().unwrap().circles.len();
    oriented(d, &vec![false; n])
}

/// Runs the leftmost surgery once, returning kind, diagram and terms.
pub fn step(d: &StackedDiagram, terms: &Terms) -> (SurgeryKind, StackedDiagram, Terms) {
    let p = leftmost_pair(d, 0).unwrap();
    let kind = classify_surgery(d, 0, p).unwrap();
    let (e, t) = surgery_step(d, terms, 0, p).unwrap();
    (kind, e, t)
}

pub fn single(ws: Vec<Weight>) -> Terms {
    [(ws, SymbolicScalar::one())].into()
}

pub fn scalars(t: &Terms) -> Vec<SymbolicScalar> {
    t.values().cloned().collect()
}

/// Merges the two anticlockwise circles of `λ̲ μ̄` and `μ̲ λ̄`, then splits
/// the result oriented as given.
pub fn split_after_merge(lambda: &[Pair], mu: &[Pair], clockwise: bool) -> (SurgeryKind, Terms, StackedDiagram) {
    let d = stacked(4, lambda, mu, lambda);
    let ws = oriented(&d, &[false, false]);
    let (k, d, _) = step(&d, &single(ws));
    assert_eq!(k, SurgeryKind::NonNestedMerge);
    let ws = oriented(&d, &[clockwise]);
    let (k, e, t) = step(&d, &single(ws));
    (k, t, e)
}

/// `(clockwise per circle, coefficient)`, sorted.
pub fn clockwise_pattern(d: &StackedDiagram, t: &Terms) -> Vec<(Vec<bool>, SymbolicScalar)> {
    let c = d.components().unwrap();
    let mut out: Vec<_> = t.iter().map(|(ws, x)| (d.orientation_of(&c, ws).unwrap().clockwise, x.clone())).collect();
    out.sort();
    out
}

pub const H_SHAPE: ([Pair; 2], [Pair; 2]) = ([(0, 1), (2, 3)], [(0, 3), (1, 2)]);
pub const C_SHAPE: ([Pair; 2], [Pair; 2]) = ([(0, 3), (1, 2)], [(0, 1), (2, 3)]);

/// The three-circle product on six stars whose last step is a nested merge.
pub fn six_star_product() -> StackedDiagram {
    stacked(6, &[(0, 5), (1, 4), (2, 3)], &[(0, 5), (1, 2), (3, 4)], &[(0, 3), (1, 2), (4, 5)])
}
