use serde::{Deserialize, Serialize};

use super::block::{Label, Symbol, Weight};
use super::stacked::{Circle, Components, StackedDiagram};
use crate::error::{Error, Result};

/// Orientation of every circle, `true` meaning clockwise.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Orientation {
    pub clockwise: Vec<bool>,
}

impl Orientation {
    pub fn anticlockwise(n: usize) -> Self {
        Orientation { clockwise: vec![false; n] }
    }

    /// All `2^n` orientations of `n` circles, as binary counters with circle
    /// 0 in the lowest bit.
    pub fn all(n: usize) -> impl Iterator<Item = Orientation> {
        (0u64..1 << n).map(move |m| Orientation { clockwise: (0..n).map(|k| m >> k & 1 == 1).collect() })
    }

    pub fn clockwise_count(&self) -> usize {
        self.clockwise.iter().filter(|c| **c).count()
    }
}

/// Labels along `c.vertices` taking the first vertex as `∧`, flipping across
/// cups and caps.
fn relative_labels(c: &Circle) -> Vec<Label> {
    let mut out = Vec::with_capacity(c.vertices.len());
    let mut l = Label::Up;
    for a in &c.arcs {
        out.push(l);
        if !a.is_strand() {
            l = l.flip();
        }
    }
    debug_assert_eq!(l, Label::Up, "odd number of turns on a circle");
    out
}

impl StackedDiagram {
    /// Labels on the circle's vertices for the given orientation.
    pub fn circle_labels(&self, c: &Circle, clockwise: bool) -> Vec<Label> {
        let rel = relative_labels(c);
        let right = self.rightmost(c);
        let k = c.vertices.iter().position(|v| *v == right).unwrap();
        let flip = (rel[k] == Label::Up) == clockwise;
        rel.into_iter().map(|l| if flip { l.flip() } else { l }).collect()
    }

    /// Weight on every baseline induced by an orientation.
    pub fn weights(&self, comps: &Components, o: &Orientation) -> Vec<Weight> {
        let mut ws: Vec<Weight> = self
            .blocks
            .iter()
            .map(|b| Weight {
                start: b.start,
                labels: b
                    .symbols
                    .iter()
                    .map(|s| match s {
                        Symbol::Empty => Label::Empty,
                        Symbol::Cross => Label::Cross,
                        Symbol::Star => Label::Up,
                    })
                    .collect(),
            })
            .collect();
        for (c, &cw) in comps.circles.iter().zip(&o.clockwise) {
            for (v, l) in c.vertices.iter().zip(self.circle_labels(c, cw)) {
                ws[v.baseline].labels[v.index] = l;
            }
        }
        ws
    }

    /// Orientation read off consistent baseline weights.
    pub fn orientation_of(&self, comps: &Components, ws: &[Weight]) -> Result<Orientation> {
        let mut clockwise = Vec::with_capacity(comps.len());
        for (n, c) in comps.circles.iter().enumerate() {
            let read = |cw| {
                self.circle_labels(c, cw)
                    .iter()
                    .zip(&c.vertices)
                    .all(|(l, v)| ws.get(v.baseline).and_then(|w| w.labels.get(v.index)) == Some(l))
            };
            if read(false) {
                clockwise.push(false);
            } else if read(true) {
                clockwise.push(true);
            } else {
                return Err(Error::InvalidDiagram(format!("weights do not orient circle {n}")));
            }
        }
        Ok(Orientation { clockwise })
    }

    /// Number of clockwise cups and caps: those whose right end is `∨`.
    pub fn degree(&self, ws: &[Weight]) -> usize {
        self.arcs()
            .into_iter()
            .filter(|a| !a.is_strand())
            .filter(|&a| {
                let (_, v) = self.endpoints(a);
                ws[v.baseline].labels[v.index] == Label::Down
            })
            .count()
    }

    pub fn oriented_degree(&self, comps: &Components, o: &Orientation) -> usize {
        self.degree(&self.weights(comps, o))
    }
}
