//! Brute-force Khovanov homology over 𝔽ₚ: union-find circles, the usual
//! merge and split maps on v±, and Koszul signs.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use arcalg::homology::{MorseWord, Token};

const P: i64 = 2_147_483_647;

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a.max(b)] = a.min(b);
    }
}

/// Circle label of every point, the smallest point on it, and the corner
/// points of every crossing.
fn circles(w: &MorseWord, mask: u64) -> (Vec<usize>, Vec<usize>) {
    let counts = w.strand_counts().unwrap();
    let base: Vec<usize> = counts
        .iter()
        .scan(0, |acc, n| {
            let b = *acc;
            *acc += n;
            Some(b)
        })
        .collect();
    let total: usize = counts.iter().sum();
    let pt = |l: usize, j: usize| base[l] + j;
    let mut d = Dsu((0..total).collect());
    let mut c = 0;
    for (k, t) in w.tokens.iter().enumerate() {
        let n = counts[k];
        match *t {
            Token::Cup(i) => {
                d.union(pt(k + 1, i), pt(k + 1, i + 1));
                for j in 0..n {
                    d.union(pt(k, j), pt(k + 1, if j < i { j } else { j + 2 }));
                }
            }
            Token::Cap(i) => {
                d.union(pt(k, i), pt(k, i + 1));
                for j in (0..n).filter(|&j| j != i && j != i + 1) {
                    d.union(pt(k, j), pt(k + 1, if j < i { j } else { j - 2 }));
                }
            }
            Token::PosCross(i) | Token::NegCross(i) => {
                let bit = mask >> c & 1 == 1;
                c += 1;
                for j in (0..n).filter(|&j| j != i && j != i + 1) {
                    d.union(pt(k, j), pt(k + 1, j));
                }
                if bit == matches!(t, Token::PosCross(_)) {
                    d.union(pt(k, i), pt(k, i + 1));
                    d.union(pt(k + 1, i), pt(k + 1, i + 1));
                } else {
                    d.union(pt(k, i), pt(k + 1, i));
                    d.union(pt(k, i + 1), pt(k + 1, i + 1));
                }
            }
        }
    }
    let labels: Vec<usize> = (0..total).map(|x| d.find(x)).collect();
    // the four points around each crossing
    let corners = w
        .crossings()
        .iter()
        .flat_map(|&(k, _)| {
            let i = match w.tokens[k] {
                Token::PosCross(i) | Token::NegCross(i) => i,
                _ => unreachable!(),
            };
            [pt(k, i), pt(k, i + 1), pt(k + 1, i), pt(k + 1, i + 1)]
        })
        .collect();
    (labels, corners)
}

/// Generators of one vertex: a bitmask over its sorted circles, bit set for v₋.
struct Vertex {
    circles: Vec<usize>,
    labels: Vec<usize>,
}

impl Vertex {
    fn new(w: &MorseWord, mask: u64) -> (Self, Vec<usize>) {
        let (labels, corners) = circles(w, mask);
        let mut cs = labels.clone();
        cs.sort();
        cs.dedup();
        (Vertex { circles: cs, labels }, corners)
    }

    fn slot(&self, point: usize) -> usize {
        self.circles.binary_search(&self.labels[point]).unwrap()
    }
}

pub type Table = BTreeMap<(i64, i64), usize>;

fn rank_mod_p(mut a: Vec<Vec<i64>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        let inv = pow(a[r][c], P - 2);
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c] * inv % P;
                for k in 0..cols {
                    a[i][k] = (a[i][k] - f * a[r][k]).rem_euclid(P);
                }
            }
        }
        r += 1;
    }
    r
}

fn pow(mut b: i64, mut e: i64) -> i64 {
    let mut out = 1;
    b = b.rem_euclid(P);
    while e > 0 {
        if e & 1 == 1 {
            out = out * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    out
}

/// Graded Khovanov homology over 𝔽ₚ, with `signs` the crossing signs.
pub fn khovanov(w: &MorseWord, signs: &[bool]) -> Table {
    let n = signs.len();
    let n_plus = signs.iter().filter(|s| **s).count() as i64;
    let n_minus = n as i64 - n_plus;
    let vertices: Vec<(Vertex, Vec<usize>)> = (0..1u64 << n).map(|m| Vertex::new(w, m)).collect();
    // generator index by (mask, state)
    let mut index: BTreeMap<(u64, u64), ((i64, i64), usize)> = BTreeMap::new();
    let mut dims: Table = BTreeMap::new();
    for (m, (v, _)) in vertices.iter().enumerate() {
        let r = (m as u64).count_ones() as i64;
        let k = v.circles.len();
        for s in 0..1u64 << k {
            let minus = s.count_ones() as i64;
            let key = (r - n_minus, (k as i64 - 2 * minus) + r + n_plus - 2 * n_minus);
            let slot = dims.entry(key).or_insert(0);
            index.insert((m as u64, s), (key, *slot));
            *slot += 1;
        }
    }
    // one matrix per (h, q): rows in h + 1
    let mut mats: BTreeMap<(i64, i64), Vec<Vec<i64>>> = BTreeMap::new();
    for (m, (v, corners)) in vertices.iter().enumerate() {
        let m = m as u64;
        for c in (0..n).filter(|c| m >> c & 1 == 0) {
            let m2 = m | 1 << c;
            let (v2, _) = &vertices[m2 as usize];
            let sign = if (m & ((1 << c) - 1)).count_ones().is_multiple_of(2) { 1 } else { P - 1 };
            let cs = &corners[4 * c..4 * c + 4];
            let mut touched: Vec<usize> = cs.iter().map(|&p| v.slot(p)).collect();
            touched.sort();
            touched.dedup();
            let mut touched2: Vec<usize> = cs.iter().map(|&p| v2.slot(p)).collect();
            touched2.sort();
            touched2.dedup();
            // untouched circles keep their smallest point
            let carry: Vec<(usize, usize)> = (0..v.circles.len())
                .filter(|i| !touched.contains(i))
                .map(|i| (i, v2.circles.binary_search(&v.circles[i]).unwrap()))
                .collect();
            for s in 0..1u64 << v.circles.len() {
                let mut base = 0u64;
                for &(i, j) in &carry {
                    base |= (s >> i & 1) << j;
                }
                let images: Vec<u64> = if touched.len() == 2 {
                    let (a, b) = (s >> touched[0] & 1, s >> touched[1] & 1);
                    match a + b {
                        0 => vec![base],
                        1 => vec![base | 1 << touched2[0]],
                        _ => vec![],
                    }
                } else if s >> touched[0] & 1 == 0 {
                    vec![base | 1 << touched2[0], base | 1 << touched2[1]]
                } else {
                    vec![base | 1 << touched2[0] | 1 << touched2[1]]
                };
                let (key, col) = index[&(m, s)];
                for t in images {
                    let (key2, row) = index[&(m2, t)];
                    assert_eq!(key2, (key.0 + 1, key.1), "oracle differential not graded");
                    let rows = dims[&key2];
                    let mat = mats.entry(key).or_insert_with(|| vec![vec![0; dims[&key]]; rows]);
                    mat[row][col] = (mat[row][col] + sign) % P;
                }
            }
        }
    }
    let ranks: BTreeMap<(i64, i64), usize> = mats.into_iter().map(|(k, a)| (k, rank_mod_p(a))).collect();
    dims.iter()
        .map(|(&(h, q), &d)| {
            let out = ranks.get(&(h, q)).copied().unwrap_or(0);
            let inc = ranks.get(&(h - 1, q)).copied().unwrap_or(0);
            ((h, q), d - out - inc)
        })
        .filter(|(_, r)| *r > 0)
        .collect()
}
