use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::morse::MorseWord;
use crate::arcalg::surgery::{is_clockwise, reverse_step, surgery_step, Terms};
use crate::diagram::{Orientation, StackedDiagram, Weight};
use crate::error::Result;
use crate::ring::{Coefficient, SpecTarget, Specialization, SymbolicScalar};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub h: i64,
    pub q: i64,
}

/// Sparse column: row index to entry.
pub type Column<T> = BTreeMap<usize, T>;

/// Bounded complex of free modules with `d[h]: C_h → C_{h+1}` stored by
/// columns.
#[derive(Clone, PartialEq, Debug)]
pub struct CubeComplex<T> {
    pub groups: BTreeMap<i64, Vec<Generator>>,
    pub d: BTreeMap<i64, Vec<Column<T>>>,
}

fn orientation_label(o: &Orientation) -> String {
    o.clockwise.iter().map(|c| if *c { 'c' } else { 'a' }).collect()
}

fn resolution_label(r: u64, n: usize) -> String {
    (0..n).map(|c| if r >> c & 1 == 1 { '1' } else { '0' }).collect()
}

struct Vertex {
    diagram: StackedDiagram,
    h: i64,
    gens: Vec<(Vec<Weight>, Generator)>,
}

fn cube_vertex(w: &MorseWord, r: u64, n: usize) -> Result<Vertex> {
    let res = w.resolve(r)?;
    let mut d = res.diagram;
    d.normalize();
    let comps = d.components()?;
    let mut gens = Vec::new();
    for o in Orientation::all(comps.len()) {
        let ws = d.weights(&comps, &o);
        let q: i64 = comps.circles.iter().map(|c| if is_clockwise(&d, c, &ws) { -1 } else { 1 }).sum::<i64>() + res.q_shift;
        let label = format!("{}:{}", resolution_label(r, n), orientation_label(&o));
        gens.push((ws, Generator { label, h: res.h, q }));
    }
    Ok(Vertex { diagram: d, h: res.h, gens })
}

/// The cube complex of a closed Morse word with generic coefficients.
///
/// Generators are the orientations of the circles of each resolution.
/// Quantum degree counts `+1` per anticlockwise and `−1` per clockwise
/// circle, plus the crossing shifts. The edge for crossing `c` is the
/// reverse surgery (positive crossings) or surgery (negative crossings) at
/// that crossing, times `(−1)^{#1-bits before c}`.
pub fn build_cube_generic(w: &MorseWord) -> Result<CubeComplex<SymbolicScalar>> {
    let crossings = w.crossings();
    let n = crossings.len();
    assert!(n < 63, "too many crossings");
    let vertices: Vec<Vertex> = (0..1u64 << n).into_par_iter().map(|r| cube_vertex(w, r, n)).collect::<Result<_>>()?;
    let mut groups: BTreeMap<i64, Vec<Generator>> = BTreeMap::new();
    let mut index: HashMap<(u64, &[Weight]), usize> = HashMap::new();
    for (r, v) in vertices.iter().enumerate() {
        let g = groups.entry(v.h).or_default();
        for (ws, gen) in &v.gens {
            index.insert((r as u64, ws.as_slice()), g.len());
            g.push(gen.clone());
        }
    }
    let edges: Vec<Vec<(usize, Column<SymbolicScalar>)>> = (0..1u64 << n)
        .into_par_iter()
        .map(|r| -> Result<Vec<(usize, Column<SymbolicScalar>)>> {
            let v = &vertices[r as usize];
            let mut cols = Vec::new();
            for (ws, _) in &v.gens {
                let mut col = Column::new();
                for (c, &(layer, positive)) in crossings.iter().enumerate() {
                    if r >> c & 1 == 1 {
                        continue;
                    }
                    let r2 = r | 1 << c;
                    let i = match w.tokens[layer] {
                        super::morse::Token::PosCross(i) | super::morse::Token::NegCross(i) => i,
                        _ => unreachable!(),
                    };
                    let terms: Terms = [(ws.clone(), SymbolicScalar::one())].into();
                    let (mut e, t) = if positive {
                        reverse_step(&v.diagram, &terms, layer, (i, i + 1))?
                    } else {
                        surgery_step(&v.diagram, &terms, layer, (i, i + 1))?
                    };
                    e.normalize();
                    debug_assert_eq!(e, vertices[r2 as usize].diagram);
                    let sign = if (r & ((1 << c) - 1)).count_ones() % 2 == 1 { SymbolicScalar::one().neg() } else { SymbolicScalar::one() };
                    for (ws2, k) in t {
                        let row = index[&(r2, ws2.as_slice())];
                        crate::arcalg::surgery::accumulate(&mut col, row, k.mul(&sign));
                    }
                }
                cols.push((index[&(r, ws.as_slice())], col));
            }
            Ok(cols)
        })
        .collect::<Result<_>>()?;
    let mut d: BTreeMap<i64, Vec<Column<SymbolicScalar>>> = groups.iter().map(|(h, g)| (*h, vec![Column::new(); g.len()])).collect();
    for (r, cols) in edges.into_iter().enumerate() {
        let h = vertices[r].h;
        for (k, col) in cols {
            d.get_mut(&h).unwrap()[k] = col;
        }
    }
    Ok(CubeComplex { groups, d })
}

/// The cube complex with entries specialized by `spec`.
pub fn build_cube<T: SpecTarget>(w: &MorseWord, spec: &Specialization) -> Result<CubeComplex<T>> {
    build_cube_generic(w)?.specialize(spec)
}

impl CubeComplex<SymbolicScalar> {
    pub fn specialize<T: SpecTarget>(&self, spec: &Specialization) -> Result<CubeComplex<T>> {
        self.try_map(|c| spec.apply::<T>(c))
    }
}

impl<T: Coefficient> CubeComplex<T> {
    pub fn try_map<U: Coefficient>(&self, f: impl Fn(&T) -> Result<U>) -> Result<CubeComplex<U>> {
        let mut d = BTreeMap::new();
        for (h, cols) in &self.d {
            let mut out = Vec::with_capacity(cols.len());
            for col in cols {
                let mut c = Column::new();
                for (r, x) in col {
                    crate::arcalg::surgery::accumulate(&mut c, *r, f(x)?);
                }
                out.push(c);
            }
            d.insert(*h, out);
        }
        Ok(CubeComplex { groups: self.groups.clone(), d })
    }

    pub fn rank(&self, h: i64) -> usize {
        self.groups.get(&h).map_or(0, |g| g.len())
    }

    /// Chain ranks from the lowest to the highest nonempty degree.
    pub fn chain_ranks(&self) -> Vec<(i64, usize)> {
        self.groups.iter().filter(|(_, g)| !g.is_empty()).map(|(h, g)| (*h, g.len())).collect()
    }

    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|g| g.len()).sum()
    }

    /// Whether `d[h + 1] ∘ d[h] = 0` for every `h`.
    pub fn d_squared_is_zero(&self) -> bool {
        for (h, cols) in &self.d {
            let Some(next) = self.d.get(&(h + 1)) else { continue };
            for col in cols {
                let mut acc: Column<T> = Column::new();
                for (mid, a) in col {
                    for (r, b) in &next[*mid] {
                        crate::arcalg::surgery::accumulate(&mut acc, *r, b.mul(a));
                    }
                }
                if !acc.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Whether every nonzero entry preserves the quantum degree.
    pub fn is_graded(&self) -> bool {
        self.d
            .iter()
            .all(|(h, cols)| cols.iter().enumerate().all(|(k, col)| col.keys().all(|r| self.groups[&(h + 1)][*r].q == self.groups[h][k].q)))
    }

    /// `Σ (−1)^h dim C_{h,q}` by quantum degree.
    pub fn euler(&self) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        for (h, g) in &self.groups {
            for x in g {
                *out.entry(x.q).or_insert(0) += if h.rem_euclid(2) == 0 { 1 } else { -1 };
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Cancels unit entries of the differentials until none is left.
    pub fn gaussian_eliminate(&self) -> Self {
        let mut alive: BTreeMap<i64, Vec<bool>> = self.groups.iter().map(|(h, g)| (*h, vec![true; g.len()])).collect();
        let mut d = self.d.clone();
        // rows[h][y]: columns of d[h] with an entry in row y
        let mut rows: BTreeMap<i64, Vec<BTreeSet<usize>>> = BTreeMap::new();
        for (h, cols) in &d {
            let mut rs = vec![BTreeSet::new(); self.rank(h + 1)];
            for (x, col) in cols.iter().enumerate() {
                for y in col.keys() {
                    rs[*y].insert(x);
                }
            }
            rows.insert(*h, rs);
        }
        let hs: Vec<i64> = d.keys().copied().collect();
        for h in hs {
            loop {
                let cols = &d[&h];
                let pivot = (0..cols.len()).find_map(|x| {
                    if !alive[&h][x] {
                        return None;
                    }
                    cols[x].iter().find(|(_, b)| b.unit_inverse().is_some()).map(|(y, b)| (x, *y, b.unit_inverse().unwrap()))
                });
                let Some((x, y, binv)) = pivot else { break };
                let cols = d.get_mut(&h).unwrap();
                let rs = rows.get_mut(&h).unwrap();
                let col_x: Vec<(usize, T)> = cols[x].iter().filter(|(r, _)| **r != y).map(|(r, c)| (*r, c.clone())).collect();
                let row_y: Vec<(usize, T)> = rs[y].iter().filter(|c| **c != x).map(|c| (*c, cols[*c][&y].clone())).collect();
                for (x2, r) in &row_y {
                    let f = binv.mul(r);
                    for (y2, c) in &col_x {
                        crate::arcalg::surgery::accumulate(&mut cols[*x2], *y2, c.mul(&f).neg());
                        if cols[*x2].contains_key(y2) {
                            rs[*y2].insert(*x2);
                        } else {
                            rs[*y2].remove(x2);
                        }
                    }
                }
                // drop column x and row y of d[h]
                for r in cols[x].keys().copied().collect::<Vec<_>>() {
                    rs[r].remove(&x);
                }
                cols[x].clear();
                for c in std::mem::take(&mut rs[y]) {
                    cols[c].remove(&y);
                }
                // x is also a row of d[h - 1], y a column of d[h + 1]
                if let (Some(prev), Some(prs)) = (d.get_mut(&(h - 1)), rows.get_mut(&(h - 1))) {
                    for c in std::mem::take(&mut prs[x]) {
                        prev[c].remove(&x);
                    }
                }
                if let (Some(next), Some(nrs)) = (d.get_mut(&(h + 1)), rows.get_mut(&(h + 1))) {
                    for r in next[y].keys().copied().collect::<Vec<_>>() {
                        nrs[r].remove(&y);
                    }
                    next[y].clear();
                }
                alive.get_mut(&h).unwrap()[x] = false;
                alive.get_mut(&(h + 1)).unwrap()[y] = false;
            }
        }
        // reindex the survivors
        let new_index: BTreeMap<i64, Vec<Option<usize>>> = alive
            .iter()
            .map(|(h, a)| {
                let mut k = 0;
                (
                    *h,
                    a.iter()
                        .map(|&l| {
                            l.then(|| {
                                k += 1;
                                k - 1
                            })
                        })
                        .collect(),
                )
            })
            .collect();
        let groups =
            self.groups.iter().map(|(h, g)| (*h, g.iter().zip(&alive[h]).filter(|(_, a)| **a).map(|(x, _)| x.clone()).collect())).collect();
        let mut out_d = BTreeMap::new();
        for (h, cols) in d {
            let empty = Vec::new();
            let target = new_index.get(&(h + 1)).unwrap_or(&empty);
            let new_cols: Vec<Column<T>> = cols
                .into_iter()
                .zip(&new_index[&h])
                .filter(|(_, k)| k.is_some())
                .map(|(col, _)| col.into_iter().map(|(r, c)| (target[r].expect("row of a cancelled generator"), c)).collect())
                .collect();
            out_d.insert(h, new_cols);
        }
        CubeComplex { groups, d: out_d }
    }
}
