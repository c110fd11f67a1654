use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::block::Block;
use super::matching::{check_matching, Pair};
use crate::error::{Error, Result};

/// Arcs between baselines `k` and `k + 1`.
///
/// `caps` sit on baseline `k`, `cups` on baseline `k + 1`, and each strand
/// joins `(lower, upper)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Layer {
    pub caps: Vec<Pair>,
    pub cups: Vec<Pair>,
    pub strands: Vec<Pair>,
}

impl Layer {
    pub fn normalize(&mut self) {
        self.caps.sort();
        self.cups.sort();
        self.strands.sort();
    }

    /// Layer of vertical strands on every `★` of a block.
    pub fn identity(block: &Block) -> Self {
        Layer { strands: block.star_indices().into_iter().map(|i| (i, i)).collect(), ..Default::default() }
    }
}

/// Vertex `index` on baseline `baseline`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Vertex {
    pub baseline: usize,
    pub index: usize,
}

fn vx(baseline: usize, index: usize) -> Vertex {
    Vertex { baseline, index }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum ArcId {
    /// Cup below baseline 0.
    Bottom(usize),
    Cap {
        layer: usize,
        idx: usize,
    },
    Strand {
        layer: usize,
        idx: usize,
    },
    Cup {
        layer: usize,
        idx: usize,
    },
    /// Cap above the last baseline.
    Top(usize),
}

impl ArcId {
    pub fn is_cup(self) -> bool {
        matches!(self, ArcId::Bottom(_) | ArcId::Cup { .. })
    }

    pub fn is_cap(self) -> bool {
        matches!(self, ArcId::Top(_) | ArcId::Cap { .. })
    }

    pub fn is_strand(self) -> bool {
        matches!(self, ArcId::Strand { .. })
    }
}

/// A stack of baselines with layers between them, closed below by cups and
/// above by caps.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct StackedDiagram {
    pub blocks: Vec<Block>,
    pub bottom: Vec<Pair>,
    pub layers: Vec<Layer>,
    pub top: Vec<Pair>,
}

/// Circle: cyclic vertex list with `arcs[k]` joining `vertices[k]` and
/// `vertices[k + 1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Circle {
    pub vertices: Vec<Vertex>,
    pub arcs: Vec<ArcId>,
}

/// Circle decomposition of a stacked diagram.
#[derive(Clone, Debug)]
pub struct Components {
    pub circles: Vec<Circle>,
    of_vertex: HashMap<Vertex, usize>,
    of_arc: HashMap<ArcId, usize>,
}

impl Components {
    pub fn circle_of(&self, v: Vertex) -> usize {
        self.of_vertex[&v]
    }

    pub fn circle_of_arc(&self, a: ArcId) -> usize {
        self.of_arc[&a]
    }

    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }
}

impl StackedDiagram {
    /// Single baseline closed by `bottom` cups and `top` caps.
    pub fn closed(block: Block, bottom: Vec<Pair>, top: Vec<Pair>) -> Self {
        StackedDiagram { blocks: vec![block], bottom, layers: Vec::new(), top }
    }

    pub fn baseline_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn top_baseline(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.blocks[v.baseline].position(v.index)
    }

    pub fn normalize(&mut self) {
        self.bottom.sort();
        self.top.sort();
        for l in &mut self.layers {
            l.normalize();
        }
    }

    pub fn arcs(&self) -> Vec<ArcId> {
        let mut out: Vec<ArcId> = (0..self.bottom.len()).map(ArcId::Bottom).collect();
        for (k, l) in self.layers.iter().enumerate() {
            out.extend((0..l.caps.len()).map(|idx| ArcId::Cap { layer: k, idx }));
            out.extend((0..l.strands.len()).map(|idx| ArcId::Strand { layer: k, idx }));
            out.extend((0..l.cups.len()).map(|idx| ArcId::Cup { layer: k, idx }));
        }
        out.extend((0..self.top.len()).map(ArcId::Top));
        out
    }

    /// Endpoints with the left (or lower, for strands) one first.
    pub fn endpoints(&self, a: ArcId) -> (Vertex, Vertex) {
        match a {
            ArcId::Bottom(i) => {
                let (x, y) = self.bottom[i];
                (vx(0, x), vx(0, y))
            }
            ArcId::Top(i) => {
                let (x, y) = self.top[i];
                let b = self.top_baseline();
                (vx(b, x), vx(b, y))
            }
            ArcId::Cap { layer, idx } => {
                let (x, y) = self.layers[layer].caps[idx];
                (vx(layer, x), vx(layer, y))
            }
            ArcId::Cup { layer, idx } => {
                let (x, y) = self.layers[layer].cups[idx];
                (vx(layer + 1, x), vx(layer + 1, y))
            }
            ArcId::Strand { layer, idx } => {
                let (x, y) = self.layers[layer].strands[idx];
                (vx(layer, x), vx(layer + 1, y))
            }
        }
    }

    /// `|p(a) - p(b)|` over the endpoints, each measured on its own baseline.
    pub fn distance(&self, a: ArcId) -> usize {
        let (u, v) = self.endpoints(a);
        self.position(u).abs_diff(self.position(v))
    }

    /// `(d + 1) / 2` for a cup or cap of distance `d`.
    pub fn saddle_width(&self, a: ArcId) -> usize {
        self.distance(a).div_ceil(2)
    }

    /// `p` at the endpoint with smaller index.
    pub fn left_position(&self, a: ArcId) -> usize {
        let (u, v) = self.endpoints(a);
        let w = if (v.index, v.baseline) < (u.index, u.baseline) { v } else { u };
        self.position(w)
    }

    /// Signed change of `p` along a strand, upper minus lower.
    pub fn shift(&self, a: ArcId) -> i64 {
        let (u, v) = self.endpoints(a);
        self.position(v) as i64 - self.position(u) as i64
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDiagram(m));
        if self.blocks.is_empty() || self.layers.len() + 1 != self.blocks.len() {
            return bad(format!("{} blocks for {} layers", self.blocks.len(), self.layers.len()));
        }
        // each star must be met once from below and once from above
        let mut below: Vec<Vec<u8>> = self.blocks.iter().map(|b| vec![0; b.len()]).collect();
        let mut above = below.clone();
        let hit = |table: &mut Vec<Vec<u8>>, v: Vertex| -> Result<()> {
            let b = &self.blocks[v.baseline];
            if !b.is_star(v.index) {
                return Err(Error::InvalidDiagram(format!("vertex {} on baseline {} is not a star", v.index, v.baseline)));
            }
            table[v.baseline][v.index] += 1;
            Ok(())
        };
        for a in self.arcs() {
            let (u, v) = self.endpoints(a);
            match a {
                ArcId::Bottom(_) | ArcId::Cup { .. } => {
                    hit(&mut below, u)?;
                    hit(&mut below, v)?;
                }
                ArcId::Top(_) | ArcId::Cap { .. } => {
                    hit(&mut above, u)?;
                    hit(&mut above, v)?;
                }
                ArcId::Strand { .. } => {
                    hit(&mut above, u)?;
                    hit(&mut below, v)?;
                }
            }
        }
        for (b, block) in self.blocks.iter().enumerate() {
            for i in block.star_indices() {
                if below[b][i] != 1 || above[b][i] != 1 {
                    return bad(format!("vertex {i} on baseline {b} has degree {}/{}", below[b][i], above[b][i]));
                }
            }
        }
        check_matching(&self.blocks[0], &self.bottom, false)?;
        check_matching(&self.blocks[self.top_baseline()], &self.top, false)?;
        for (k, l) in self.layers.iter().enumerate() {
            check_matching(&self.blocks[k], &l.caps, false)?;
            check_matching(&self.blocks[k + 1], &l.cups, false)?;
            let mut s = l.strands.clone();
            s.sort();
            if s.windows(2).any(|w| w[1].1 <= w[0].1) {
                return bad(format!("strands of layer {k} cross"));
            }
            for &(lo, hi) in &l.strands {
                if l.caps.iter().any(|&(i, j)| i < lo && lo < j) {
                    return bad(format!("strand from {lo} in layer {k} is enclosed by a cap"));
                }
                if l.cups.iter().any(|&(i, j)| i < hi && hi < j) {
                    return bad(format!("strand to {hi} in layer {k} is enclosed by a cup"));
                }
            }
        }
        Ok(())
    }

    fn incidence(&self) -> (HashMap<Vertex, ArcId>, HashMap<Vertex, ArcId>) {
        let mut below = HashMap::new();
        let mut above = HashMap::new();
        for a in self.arcs() {
            let (u, v) = self.endpoints(a);
            if a.is_cup() {
                below.insert(u, a);
                below.insert(v, a);
            } else if a.is_cap() {
                above.insert(u, a);
                above.insert(v, a);
            } else {
                above.insert(u, a);
                below.insert(v, a);
            }
        }
        (below, above)
    }

    /// Traces all components. Each circle starts at its minimal vertex and
    /// leaves it upwards; circles are ordered by that vertex.
    pub fn components(&self) -> Result<Components> {
        let (below, above) = self.incidence();
        let mut vertices: Vec<Vertex> = below.keys().chain(above.keys()).copied().collect();
        vertices.sort();
        vertices.dedup();
        let mut of_vertex = HashMap::new();
        let mut of_arc = HashMap::new();
        let mut circles = Vec::new();
        for &v0 in &vertices {
            if of_vertex.contains_key(&v0) {
                continue;
            }
            let id = circles.len();
            let mut c = Circle { vertices: Vec::new(), arcs: Vec::new() };
            let mut v = v0;
            let mut arc = match above.get(&v0).or_else(|| below.get(&v0)) {
                Some(a) => *a,
                None => return Err(Error::OpenComponent(format!("isolated vertex {v0:?}"))),
            };
            loop {
                c.vertices.push(v);
                c.arcs.push(arc);
                of_vertex.insert(v, id);
                of_arc.insert(arc, id);
                let (p, q) = self.endpoints(arc);
                let w = if p == v { q } else { p };
                if w == v0 {
                    break;
                }
                let next = if below.get(&w) == Some(&arc) { above.get(&w) } else { below.get(&w) };
                match next {
                    Some(a) => {
                        arc = *a;
                        v = w;
                    }
                    None => return Err(Error::OpenComponent(format!("component ends at {w:?}"))),
                }
                if c.vertices.len() > vertices.len() {
                    return Err(Error::OpenComponent(format!("trace from {v0:?} does not close")));
                }
            }
            circles.push(c);
        }
        Ok(Components { circles, of_vertex, of_arc })
    }

    /// Vertex of maximal index on a circle, lowest baseline on ties.
    pub fn rightmost(&self, c: &Circle) -> Vertex {
        *c.vertices.iter().max_by_key(|v| (v.index, std::cmp::Reverse(v.baseline))).unwrap()
    }

    /// `t(C)`: position of the rightmost vertex.
    pub fn rightmost_position(&self, c: &Circle) -> usize {
        self.position(self.rightmost(c))
    }

    /// `d(C)`: total distance over the arcs of a circle.
    pub fn circle_distance(&self, c: &Circle) -> usize {
        c.arcs.iter().map(|&a| self.distance(a)).sum()
    }

    /// `q(C) = (d(C) - 2) / 4`.
    pub fn circle_q(&self, c: &Circle) -> i64 {
        let d = self.circle_distance(c) as i64;
        debug_assert_eq!(d.rem_euclid(4), 2, "circle distance {d}");
        (d - 2).div_euclid(4)
    }

    pub fn cup_count(&self, c: &Circle) -> usize {
        c.arcs.iter().filter(|a| a.is_cup()).count()
    }

    pub fn cap_count(&self, c: &Circle) -> usize {
        c.arcs.iter().filter(|a| a.is_cap()).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_diagram(bottom: Vec<Pair>, top: Vec<Pair>) -> StackedDiagram {
        StackedDiagram::closed(Block::stars(4), bottom, top)
    }

    #[test]
    fn circles_of_closed_diagrams() {
        let d = circle_diagram(vec![(0, 1), (2, 3)], vec![(0, 1), (2, 3)]);
        d.validate().unwrap();
        assert_eq!(d.components().unwrap().len(), 2);
        let d = circle_diagram(vec![(0, 1), (2, 3)], vec![(0, 3), (1, 2)]);
        let c = d.components().unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(d.circle_distance(&c.circles[0]), 6);
        assert_eq!(d.circle_q(&c.circles[0]), 1);
    }

    #[test]
    fn validation_catches_defects() {
        assert!(circle_diagram(vec![(0, 1)], vec![(0, 1), (2, 3)]).validate().is_err());
        assert!(circle_diagram(vec![(0, 2), (1, 3)], vec![(0, 1), (2, 3)]).validate().is_err());
        let mut d = StackedDiagram {
            blocks: vec![Block::stars(2), Block::stars(2)],
            bottom: vec![(0, 1)],
            layers: vec![Layer::identity(&Block::stars(2))],
            top: vec![(0, 1)],
        };
        d.validate().unwrap();
        assert_eq!(d.components().unwrap().len(), 1);
        d.layers[0].strands = vec![(0, 1), (1, 0)];
        assert!(d.validate().is_err());
    }

    #[test]
    fn trace_starts_upwards() {
        let d = circle_diagram(vec![(0, 3), (1, 2)], vec![(0, 1), (2, 3)]);
        let c = d.components().unwrap();
        let first = &c.circles[0];
        assert_eq!(first.vertices[0], vx(0, 0));
        assert!(first.arcs[0].is_cap());
        assert_eq!(d.rightmost_position(first), 3);
    }
}
