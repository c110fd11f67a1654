//! Dense rank and Smith normal form.

#![allow(clippy::needless_range_loop)]

use crate::ring::{Euclidean, Field};

pub type Dense<T> = Vec<Vec<T>>;

/// Rank over a field by row reduction.
pub fn rank<T: Field>(m: &Dense<T>) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].unit_inverse().expect("field");
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            for k in c..cols {
                let v = a[i][k].sub(&f.mul(&a[r][k]));
                a[i][k] = v;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Nonzero invariant factors `d₁ | d₂ | …`, each normalized.
pub fn invariant_factors<T: Euclidean>(m: &Dense<T>) -> Vec<T> {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].norm() < a[bi][bj].norm()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, _) = a[i][t].div_rem(&a[t][t]);
                for k in t..cols {
                    let v = a[i][k].sub(&q.mul(&a[t][k]));
                    a[i][k] = v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, _) = a[t][j].div_rem(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = row[j].sub(&q.mul(&row[t]));
                    row[j] = v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: fold a row that the pivot does not divide
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].div_rem(&a[t][t]).1.is_zero()));
            match bad {
                Some(i) => {
                    for k in t..cols {
                        let v = a[t][k].add(&a[i][k]);
                        a[t][k] = v;
                    }
                }
                None => break,
            }
        }
        let u = a[t][t].normalizing_unit();
        diag.push(a[t][t].mul(&u));
        t += 1;
    }
    diag
}

pub fn euclidean_rank<T: Euclidean>(m: &Dense<T>) -> usize {
    invariant_factors(m).len()
}
