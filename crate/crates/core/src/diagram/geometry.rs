use std::cmp::Ordering;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::stacked::{ArcId, Circle, StackedDiagram};

/// Sort key of an arc crossing a vertical line, bottom to top.
#[derive(Clone, Copy, Debug)]
struct Height {
    band: usize,
    class: u8,
    num: i64,
    den: i64,
}

impl Height {
    fn cmp(&self, o: &Height) -> Ordering {
        (self.band, self.class).cmp(&(o.band, o.class)).then_with(|| (self.num * o.den).cmp(&(o.num * self.den)))
    }
}

/// A point at column `column + 1/2`, directly above or below an arc.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Probe {
    pub arc: ArcId,
    pub column: usize,
    pub above: bool,
}

impl Probe {
    pub fn above(arc: ArcId, column: usize) -> Self {
        Probe { arc, column, above: true }
    }

    pub fn below(arc: ArcId, column: usize) -> Self {
        Probe { arc, column, above: false }
    }
}

/// Per-circle arc classes used by the coefficient maps.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct ArcClasses {
    pub icup: Vec<ArcId>,
    pub ecup: Vec<ArcId>,
    pub icap: Vec<ArcId>,
    pub ecap: Vec<ArcId>,
    pub eright: Vec<ArcId>,
    pub iright: Vec<ArcId>,
    pub eleft: Vec<ArcId>,
    pub ileft: Vec<ArcId>,
}

impl ArcClasses {
    /// `(#icup, #icap, #ecup, #ecap)`.
    pub fn counts(&self) -> (usize, usize, usize, usize) {
        (self.icup.len(), self.icap.len(), self.ecup.len(), self.ecap.len())
    }
}

impl StackedDiagram {
    fn height(&self, a: ArcId, column: usize) -> Option<Height> {
        let (u, v) = self.endpoints(a);
        let (lo, hi) = (u.index.min(v.index), u.index.max(v.index));
        if !(lo <= column && column < hi) {
            return None;
        }
        let w = (hi - lo) as i64;
        let top = self.layers.len() + 1;
        let h = |band, class, num, den| Some(Height { band, class, num, den });
        match a {
            ArcId::Bottom(_) => h(0, 0, -w, 1),
            ArcId::Cap { layer, .. } => h(layer + 1, 0, w, 1),
            ArcId::Cup { layer, .. } => h(layer + 1, 2, -w, 1),
            ArcId::Top(_) => h(top, 0, w, 1),
            ArcId::Strand { layer, .. } => {
                let (l, r) = (u.index as i64, v.index as i64);
                let x2 = 2 * column as i64 + 1;
                let (num, den) = if r > l { (x2 - 2 * l, 2 * (r - l)) } else { (2 * l - x2, 2 * (l - r)) };
                h(layer + 1, 1, num, den)
            }
        }
    }

    /// Arcs among `arcs` crossing column `column + 1/2`, bottom to top.
    pub fn crossings(&self, arcs: impl IntoIterator<Item = ArcId>, column: usize) -> Vec<ArcId> {
        let mut hs: Vec<(Height, ArcId)> = arcs.into_iter().filter_map(|a| self.height(a, column).map(|h| (h, a))).collect();
        hs.sort_by(|x, y| x.0.cmp(&y.0));
        hs.into_iter().map(|(_, a)| a).collect()
    }

    /// Whether `probe` lies inside `circle`: an odd number of its arcs above.
    pub fn is_inside(&self, circle: &Circle, probe: Probe) -> bool {
        let mut arcs = circle.arcs.clone();
        if !arcs.contains(&probe.arc) {
            arcs.push(probe.arc);
        }
        let line = self.crossings(arcs, probe.column);
        let r = line.iter().position(|&a| a == probe.arc).expect("probe arc crosses its column");
        let start = if probe.above { r + 1 } else { r };
        let own: HashSet<ArcId> = circle.arcs.iter().copied().collect();
        line[start..].iter().filter(|a| own.contains(a)).count() % 2 == 1
    }

    /// Whether circle `inner` lies inside circle `outer`.
    pub fn circle_inside(&self, inner: &Circle, outer: &Circle) -> bool {
        let a = inner.arcs.iter().copied().find(|a| !a.is_strand()).expect("circle has a cup");
        let (u, v) = self.endpoints(a);
        self.is_inside(outer, Probe::above(a, u.index.min(v.index)))
    }

    pub fn classify(&self, circle: &Circle) -> ArcClasses {
        let mut out = ArcClasses::default();
        for &a in &circle.arcs {
            let (u, v) = self.endpoints(a);
            let col = u.index.min(v.index);
            if a.is_cup() {
                let inside = self.is_inside(circle, Probe::above(a, col));
                if inside { &mut out.ecup } else { &mut out.icup }.push(a);
            } else if a.is_cap() {
                let inside = self.is_inside(circle, Probe::below(a, col));
                if inside { &mut out.ecap } else { &mut out.icap }.push(a);
            } else if self.shift(a) != 0 {
                debug_assert_ne!(u.index, v.index, "vertical strand with nonzero shift");
                if u.index == v.index {
                    continue;
                }
                let inside = self.is_inside(circle, Probe::below(a, col));
                let leftward = v.index < u.index;
                match (leftward, inside) {
                    (true, false) => out.eright.push(a),
                    (true, true) => out.iright.push(a),
                    (false, false) => out.eleft.push(a),
                    (false, true) => out.ileft.push(a),
                }
            }
        }
        out
    }
}
