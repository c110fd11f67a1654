//! Hulls, the ideal and the quotient algebra on small blocks.

use std::collections::BTreeMap;

use arcalg::arcalg::{mult_basis, ArcElement, BasisDiagram};
use arcalg::diagram::{Block, Symbol};
use arcalg::genalg::{ideal_basis, m_hull, minimal_m, CanonicalKey, HullData, QuotientAlgebra};
use arcalg::ring::{Coefficient, Specialization, SymbolicScalar};
use arcalg::Error;

/// Blocks with at most two stars and one cross, every up-count, starting
/// at `-1` or `0`.
fn bases() -> Vec<Block> {
    let syms = [Symbol::Empty, Symbol::Cross, Symbol::Star];
    let mut out = Vec::new();
    for len in 1..=3usize {
        for code in 0..3usize.pow(len as u32) {
            let s: Vec<Symbol> = (0..len).map(|k| syms[code / 3usize.pow(k as u32) % 3]).collect();
            let stars = s.iter().filter(|x| **x == Symbol::Star).count();
            let crosses = s.iter().filter(|x| **x == Symbol::Cross).count();
            if stars == 0 || stars > 2 || crosses > 1 || s[0] == Symbol::Empty {
                continue;
            }
            for start in [-1, 0] {
                for ups in 0..=stars {
                    let mut b = Block::with_start(start, s.clone());
                    b.ups = ups;
                    out.push(b);
                }
            }
        }
    }
    out
}

fn alpha_zero() -> Specialization {
    "0,e,w".parse().unwrap()
}

fn specialized(d: &BasisDiagram, e: &BasisDiagram, spec: &Specialization) -> Vec<(BasisDiagram, SymbolicScalar)> {
    mult_basis(d, e)
        .unwrap()
        .into_iter()
        .map(|(z, c)| (z, spec.apply::<SymbolicScalar>(&c).unwrap()))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Products with one factor in the ideal that leave the ideal.
fn ideal_escapes(h: &HullData, spec: &Specialization) -> usize {
    let sub = h.truncated_basis();
    let ideal: Vec<BasisDiagram> = sub.iter().filter(|d| !h.contains(&d.weight)).cloned().collect();
    let mut bad = 0;
    for x in &sub {
        for i in &ideal {
            for (a, b) in [(x, i), (i, x)] {
                bad += specialized(a, b, spec).iter().filter(|(z, _)| h.contains(&z.weight)).count();
            }
        }
    }
    bad
}

#[test]
fn ideal_is_two_sided_at_alpha_zero() {
    let spec = alpha_zero();
    let mut checked = 0;
    for b in bases() {
        for m in minimal_m(&b)..=3 {
            let h = m_hull(&b, m).unwrap();
            assert!(h.hull.is_balanced(), "{b} m={m}");
            assert_eq!(ideal_escapes(&h, &spec), 0, "{b} ups={} m={m}", b.ups);
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn ideal_fails_for_generic_alpha() {
    let h = m_hull(&"**".parse().unwrap(), 2).unwrap();
    assert!(ideal_escapes(&h, &Specialization::generic()) > 0);
    assert!(matches!(ideal_basis(&h, &Specialization::generic()), Err(Error::AlphaNotZero(_))));
    assert!(matches!(QuotientAlgebra::new(h, Specialization::kbn()), Err(Error::AlphaNotZero(_))));
}

#[test]
fn radius_must_cover_the_block() {
    let b = Block::with_start(-1, vec![Symbol::Star, Symbol::Empty, Symbol::Star, Symbol::Star]);
    assert_eq!(minimal_m(&b), 2);
    assert!(matches!(m_hull(&b, 1), Err(Error::MTooSmall(_))));
    assert!(m_hull(&b, 2).is_ok());
}

type Table = BTreeMap<(CanonicalKey, CanonicalKey), Vec<(CanonicalKey, SymbolicScalar)>>;

fn table(q: &QuotientAlgebra) -> Table {
    let mut t = Table::new();
    for x in &q.basis {
        for y in &q.basis {
            let v = q.mult_basis(x, y).unwrap().into_iter().map(|(z, c)| (q.hull.canonical_key(&z), c)).collect();
            t.insert((q.hull.canonical_key(x), q.hull.canonical_key(y)), v);
        }
    }
    t
}

#[test]
fn quotient_does_not_depend_on_m() {
    for b in bases() {
        let m0 = minimal_m(&b).max(2);
        let q2 = QuotientAlgebra::new(m_hull(&b, m0).unwrap(), alpha_zero()).unwrap();
        let q3 = QuotientAlgebra::new(m_hull(&b, m0 + 1).unwrap(), alpha_zero()).unwrap();
        assert_eq!(q2.basis.len(), q3.basis.len(), "{b}");
        assert_eq!(table(&q2), table(&q3), "{b} ups={}", b.ups);
    }
}

#[test]
fn quotient_is_unital_and_graded() {
    for b in bases() {
        let q = QuotientAlgebra::new(HullData::minimal(&b).unwrap(), alpha_zero()).unwrap();
        let one: ArcElement = q.unit();
        for x in &q.basis {
            let e = ArcElement::from_basis(x.clone());
            assert_eq!(q.mult(&one, &e).unwrap(), e);
            assert_eq!(q.mult(&e, &one).unwrap(), e);
            assert_eq!(x.degree() == 0, x.is_idempotent(), "{b} {x}");
            for y in &q.basis {
                for (z, _) in q.mult_basis(x, y).unwrap() {
                    assert_eq!(z.degree(), x.degree() + y.degree());
                }
            }
        }
    }
}

#[test]
fn two_star_quiver_under_kbn() {
    let q = QuotientAlgebra::new(m_hull(&"**".parse().unwrap(), 2).unwrap(), "0,1,1".parse().unwrap()).unwrap();
    let qv = q.quiver().unwrap();
    let vals: Vec<_> = qv.relations.iter().map(|r| r.value.clone()).collect();
    assert_eq!(vals, vec![vec![], vec![("1".to_string(), "x[v^,v^;2]".to_string())]]);
    let e: ArcElement = ArcElement::from_basis(q.basis[0].clone());
    assert_eq!(q.mult(&e, &e).unwrap(), e);
}
