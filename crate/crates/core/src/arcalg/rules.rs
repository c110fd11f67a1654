//! Scalars attached to one topology change, as functions of the circle
//! statistics involved.

use crate::ring::{Coefficient, SymbolicScalar as S};

fn eps(k: i64) -> S {
    S::epsilon_pow(k)
}

/// Orientation and scalar of the merged circle, given the orientations and
/// rightmost positions of the two input circles and `t(C)` of the output.
pub fn merge(cw_i: bool, cw_j: bool, t_i: i64, t_j: i64, t_c: i64) -> (bool, S) {
    match (cw_i, cw_j) {
        (false, false) => (false, S::one()),
        (true, false) => (true, eps(t_i + t_c)),
        (false, true) => (true, eps(t_j + t_c)),
        (true, true) => (false, S::alpha().mul(&eps(t_i + t_c)).mul(&eps(t_j + t_c))),
    }
}

/// Extra factor of a nested merge: `ε · ε^{q(C_in)} · ε^{s}`.
pub fn nested_merge_factor(q_in: i64, saddle: i64) -> S {
    eps(1 + q_in + saddle)
}

/// The circle that gets split, seen from one of the two resulting circles.
#[derive(Clone, Copy, Debug)]
pub struct SplitSide {
    /// `t` of the resulting circle.
    pub t: i64,
    /// `p` at the vertex the non-dotted path starts from.
    pub start: i64,
}

/// Nesting data of a split: `q(C_in)` and whether the first side is inner.
#[derive(Clone, Copy, Debug)]
pub struct Nesting {
    pub q_in: i64,
    pub first_inner: bool,
}

/// The two terms `(cw_first, cw_second, scalar)` of a split of a circle with
/// orientation `cw_c` and rightmost position `t_c`.
pub fn split(cw_c: bool, t_c: i64, first: SplitSide, second: SplitSide, saddle: i64, nested: Option<Nesting>) -> [(bool, bool, S); 2] {
    let w = S::omega();
    let ew = S::epsilon().mul(&w);
    let aew = S::alpha().mul(&ew);
    match (nested, cw_c) {
        (None, false) => {
            let nd_i = first.start + first.t;
            let nd_j = second.start + second.t;
            [(true, false, w.mul(&eps(nd_i + saddle))), (false, true, ew.mul(&eps(nd_j + saddle)))]
        }
        (None, true) => {
            let dot_j = t_c + second.t;
            let nd_i = first.start + first.t;
            let nd_j = second.start + second.t;
            [(true, true, w.mul(&eps(dot_j + nd_i + saddle))), (false, false, aew.mul(&eps(dot_j + nd_j + saddle)))]
        }
        (Some(n), false) => {
            let q = eps(n.q_in);
            let (inner_cw, outer_cw) = ((true, false), (false, true));
            let swap = |(a, b): (bool, bool)| if n.first_inner { (a, b) } else { (b, a) };
            let a = swap(inner_cw);
            let b = swap(outer_cw);
            [(a.0, a.1, w.mul(&q)), (b.0, b.1, ew.mul(&q))]
        }
        (Some(n), true) => {
            let q = eps(n.q_in);
            [(true, true, w.mul(&q)), (false, false, aew.mul(&q))]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_table() {
        assert_eq!(merge(false, false, 1, 3, 3).1, S::one());
        assert_eq!(merge(true, false, 1, 3, 2), (true, S::epsilon()));
        assert_eq!(merge(true, true, 1, 1, 1), (false, S::alpha()));
    }

    #[test]
    fn h_shape_split() {
        // left circle ends at 1, right at 3; split at vertices 1 and 2
        let l = SplitSide { t: 1, start: 1 };
        let r = SplitSide { t: 3, start: 2 };
        let [a, b] = split(false, 3, l, r, 1, None);
        assert_eq!(a.2, "e w".parse().unwrap());
        assert_eq!(b.2, "e w".parse().unwrap());
        let [a, b] = split(true, 3, l, r, 1, None);
        assert_eq!(a.2, "e w".parse().unwrap());
        assert_eq!(b.2, "a e w".parse().unwrap());
    }
}
