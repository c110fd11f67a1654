//! Khovanov-type cube complexes of closed Morse words and their homology.

mod cube;
pub mod linalg;
mod morse;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub use cube::{build_cube, build_cube_generic, Column, CubeComplex, Generator};
pub use morse::{MorseWord, Resolved, Token};

use crate::error::{Error, Result};
use crate::ring::{AlphaImage, Coefficient, Euclidean, Field, GaussInt, GaussRational, SpecTarget, Specialization};
use linalg::Dense;

/// Coefficient ring for homology.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum HomologyRing {
    /// ℚ
    Q,
    /// ℤ
    Z,
    /// ℤ[i]
    ZI,
    /// ℚ(i)
    QI,
}

impl FromStr for HomologyRing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" | "Q" => Ok(HomologyRing::Q),
            "z" | "Z" => Ok(HomologyRing::Z),
            "zi" | "ZI" => Ok(HomologyRing::ZI),
            "qi" | "QI" => Ok(HomologyRing::QI),
            _ => Err(Error::Parse(format!("unknown ring {s:?}; expected q, z, zi or qi"))),
        }
    }
}

impl fmt::Display for HomologyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HomologyRing::Q => "q",
            HomologyRing::Z => "z",
            HomologyRing::ZI => "zi",
            HomologyRing::QI => "qi",
        };
        write!(f, "{s}")
    }
}

/// One row of a Poincaré table. `q` is absent when α ≠ 0, where the
/// differential does not preserve the quantum degree.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub h: i64,
    pub q: Option<i64>,
    pub rank: usize,
    pub torsion: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HomologyResult {
    pub ring: HomologyRing,
    pub entries: Vec<HomologyEntry>,
}

impl HomologyResult {
    /// Graded dimensions `(h, q) ↦ rank`.
    pub fn ranks(&self) -> BTreeMap<(i64, i64), usize> {
        self.entries.iter().filter(|e| e.rank > 0).map(|e| ((e.h, e.q.unwrap_or(0)), e.rank)).collect()
    }

    pub fn torsion(&self) -> BTreeMap<(i64, i64), Vec<String>> {
        self.entries.iter().filter(|e| !e.torsion.is_empty()).map(|e| ((e.h, e.q.unwrap_or(0)), e.torsion.clone())).collect()
    }

    pub fn total_rank(&self) -> usize {
        self.entries.iter().map(|e| e.rank).sum()
    }

    /// `Σ (−1)^h rank` by quantum degree.
    pub fn euler(&self) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.q.unwrap_or(0)).or_insert(0) += if e.h.rem_euclid(2) == 0 { e.rank as i64 } else { -(e.rank as i64) };
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "h\tq\trank\ttorsion")?;
        for e in &self.entries {
            let q = e.q.map_or("-".to_string(), |q| q.to_string());
            let t = if e.torsion.is_empty() { "-".to_string() } else { e.torsion.join(",") };
            writeln!(f, "{}\t{}\t{}\t{}", e.h, q, e.rank, t)?;
        }
        Ok(())
    }
}

type Key = (i64, Option<i64>);

/// Dense blocks of `d[h]` between generators of equal key.
fn blocks<T: Coefficient>(c: &CubeComplex<T>, graded: bool) -> (BTreeMap<Key, usize>, BTreeMap<Key, Dense<T>>) {
    let key = |g: &Generator| (g.h, graded.then_some(g.q));
    let mut dims: BTreeMap<Key, usize> = BTreeMap::new();
    let mut local: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (h, gs) in &c.groups {
        let l = local.entry(*h).or_default();
        for g in gs {
            let n = dims.entry(key(g)).or_insert(0);
            l.push(*n);
            *n += 1;
        }
    }
    let mut mats: BTreeMap<Key, Dense<T>> = BTreeMap::new();
    for (h, cols) in &c.d {
        for (x, col) in cols.iter().enumerate() {
            let k = key(&c.groups[h][x]);
            for (y, v) in col {
                let tk = key(&c.groups[&(h + 1)][*y]);
                debug_assert_eq!(tk.1, k.1);
                let m = mats.entry(k).or_insert_with(|| vec![vec![T::zero(); dims[&k]]; dims.get(&(h + 1, k.1)).copied().unwrap_or(0)]);
                m[local[&(h + 1)][*y]][local[h][x]] = v.clone();
            }
        }
    }
    (dims, mats)
}

fn collect(ring: HomologyRing, dims: &BTreeMap<Key, usize>, mut f: impl FnMut(&Key, usize) -> (usize, Vec<String>)) -> HomologyResult {
    let entries = dims
        .iter()
        .filter_map(|(k, n)| {
            let (rank, torsion) = f(k, *n);
            (rank > 0 || !torsion.is_empty()).then_some(HomologyEntry { h: k.0, q: k.1, rank, torsion })
        })
        .collect();
    HomologyResult { ring, entries }
}

/// Homology over a field by rank counting in every bidegree.
pub fn homology_field<T: Field>(c: &CubeComplex<T>, ring: HomologyRing, graded: bool) -> HomologyResult {
    let (dims, mats) = blocks(c, graded);
    let ranks: BTreeMap<Key, usize> = mats.iter().map(|(k, m)| (*k, linalg::rank(m))).collect();
    collect(ring, &dims, |k, n| {
        let out = ranks.get(k).copied().unwrap_or(0);
        let inc = ranks.get(&(k.0 - 1, k.1)).copied().unwrap_or(0);
        (n - out - inc, Vec::new())
    })
}

/// Homology over a Euclidean domain from Smith normal forms.
pub fn homology_pid<T: Euclidean>(c: &CubeComplex<T>, ring: HomologyRing, graded: bool) -> HomologyResult {
    let (dims, mats) = blocks(c, graded);
    let factors: BTreeMap<Key, Vec<T>> = mats.iter().map(|(k, m)| (*k, linalg::invariant_factors(m))).collect();
    collect(ring, &dims, |k, n| {
        let out = factors.get(k).map_or(0, |f| f.len());
        let inc = factors.get(&(k.0 - 1, k.1)).cloned().unwrap_or_default();
        let torsion = inc.iter().filter(|x| x.unit_inverse().is_none()).map(|x| x.to_string()).collect();
        (n - out - inc.len(), torsion)
    })
}

fn compute<T: SpecTarget>(
    w: &MorseWord,
    spec: &Specialization,
    eliminate: bool,
    h: impl Fn(&CubeComplex<T>, bool) -> HomologyResult,
) -> Result<HomologyResult> {
    let c: CubeComplex<T> = build_cube(w, spec)?;
    let c = if eliminate { c.gaussian_eliminate() } else { c };
    Ok(h(&c, spec.alpha_is_zero()))
}

/// Graded homology of a closed Morse word. α must go to a constant.
pub fn homology(w: &MorseWord, spec: &Specialization, ring: HomologyRing, eliminate: bool) -> Result<HomologyResult> {
    if spec.alpha == AlphaImage::Generic {
        return Err(Error::RingNotSupported(format!("{spec} leaves alpha generic; homology needs a principal ideal domain")));
    }
    let unsupported = |e: Error| match e {
        Error::ImageNotRepresentable(m) => Error::RingNotSupported(format!("{spec} over {ring}: {m}")),
        other => other,
    };
    match ring {
        HomologyRing::Q => compute::<BigRational>(w, spec, eliminate, |c, g| homology_field(c, ring, g)),
        HomologyRing::QI => compute::<GaussRational>(w, spec, eliminate, |c, g| homology_field(c, ring, g)),
        HomologyRing::Z => compute::<BigInt>(w, spec, eliminate, |c, g| homology_pid(c, ring, g)),
        HomologyRing::ZI => compute::<GaussInt>(w, spec, eliminate, |c, g| homology_pid(c, ring, g)),
    }
    .map_err(unsupported)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kbn0() -> Specialization {
        Specialization::kbn().with_alpha(0)
    }

    fn table(w: &str, ring: HomologyRing) -> BTreeMap<(i64, i64), usize> {
        homology(&w.parse().unwrap(), &kbn0(), ring, false).unwrap().ranks()
    }

    #[test]
    fn unknot() {
        assert_eq!(table("u0 n0", HomologyRing::Q), [((0, -1), 1), ((0, 1), 1)].into());
    }

    #[test]
    fn hopf_link() {
        let w: MorseWord = "u0 u2 x+1 x+1 n2 n0".parse().unwrap();
        let c = build_cube_generic(&w).unwrap();
        assert!(c.d_squared_is_zero());
        assert!(!c.is_graded());
        assert!(c.specialize::<crate::ring::SymbolicScalar>(&kbn0()).unwrap().is_graded());
        assert_eq!(table("u0 u2 x+1 x+1 n2 n0", HomologyRing::Q), [((0, 0), 1), ((0, 2), 1), ((2, 4), 1), ((2, 6), 1)].into());
    }

    #[test]
    fn trefoil() {
        let w = MorseWord::braid_closure(&[1, 1, 1], 2).unwrap();
        let c = build_cube::<BigRational>(&w, &kbn0()).unwrap();
        assert_eq!(c.chain_ranks(), vec![(0, 4), (1, 6), (2, 12), (3, 8)]);
        let expect: BTreeMap<(i64, i64), usize> = [((0, 1), 1), ((0, 3), 1), ((2, 5), 1), ((3, 9), 1)].into();
        for eliminate in [false, true] {
            assert_eq!(homology(&w, &kbn0(), HomologyRing::Q, eliminate).unwrap().ranks(), expect);
            let z = homology(&w, &kbn0(), HomologyRing::Z, eliminate).unwrap();
            assert_eq!(z.ranks(), expect);
            assert_eq!(z.torsion(), [((3, 7), vec!["2".to_string()])].into());
        }
        assert_eq!(c.gaussian_eliminate().total_rank(), 4);
    }

    #[test]
    fn generic_alpha_is_rejected() {
        let w: MorseWord = "u0 n0".parse().unwrap();
        assert!(matches!(homology(&w, &Specialization::kbn(), HomologyRing::Q, false), Err(Error::RingNotSupported(_))));
        let ca = Specialization::ca().with_alpha(0);
        let hopf: MorseWord = "u0 u2 x+1 x+1 n2 n0".parse().unwrap();
        assert!(matches!(homology(&hopf, &ca, HomologyRing::Z, false), Err(Error::RingNotSupported(_))));
        assert!(homology(&hopf, &ca, HomologyRing::ZI, false).is_ok());
    }
}
