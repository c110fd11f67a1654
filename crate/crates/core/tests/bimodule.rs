//! Bimodule bases, coefficient maps and the isomorphisms between
//! specializations.

use arcalg::arcalg::{basis, ArcElement};
use arcalg::bimodule::{bimodule_basis, CompositeMatching};
use arcalg::coeffmap::{basis_coeff, coeff_inverse, coeff_map, iso_factor, iso_new, CoeffKind};
use arcalg::diagram::Block;
use arcalg::ring::{Coefficient, GaussPoly, IntPoly, Specialization, SymbolicScalar};
use arcalg::selftest::Scope;
use arcalg::Error;

fn rank_six() -> CompositeMatching {
    CompositeMatching::from_moves("**ox".parse().unwrap(), &["+a2".parse().unwrap()]).unwrap()
}

#[test]
fn rank_six_example() {
    let m = rank_six();
    let bs = bimodule_basis(&m).unwrap();
    assert_eq!(bs.iter().map(|x| x.degree(&m)).collect::<Vec<_>>(), vec![0, 2, 2, 4, 1, 3]);
    let shift = m.shift();
    assert!(bs.iter().all(|x| x.shifted_degree(&m) == x.degree(&m) as i64 + shift));
}

#[test]
fn explicit_shape_index_is_validated() {
    let b: Block = "**ox".parse().unwrap();
    assert!(CompositeMatching::from_moves(b.clone(), &["+a2".parse().unwrap()]).is_ok());
    assert!(CompositeMatching::from_moves(b, &["+a2:1".parse().unwrap()]).is_err());
}

#[test]
fn coeff_is_degree_preserving_and_invertible() {
    for b in Scope::new(4).blocks() {
        let bs = basis(&b);
        for x in &bs {
            let e = ArcElement::from_basis(x.clone());
            let y = coeff_map(CoeffKind::Algebra, &e);
            assert_eq!(y.terms.len(), 1);
            assert!(y.terms.values().all(|c| c.is_signed_monomial() && c.homogeneous_degree() == Some(0)));
            assert_eq!(coeff_inverse(CoeffKind::Algebra, &y), e);
        }
    }
}

#[test]
fn kbn_to_bl_on_two_stars() {
    let bs = basis(&"**".parse().unwrap());
    let (kbn, bl) = (Specialization::kbn(), Specialization::bl());
    let e = |i: usize| ArcElement::<IntPoly>::from_basis(bs[i].clone());
    assert_eq!(basis_coeff(CoeffKind::Algebra, &bs[1]), SymbolicScalar::epsilon());
    assert_eq!(iso_new(CoeffKind::Algebra, &kbn, &bl, &e(0)).unwrap(), e(0));
    assert_eq!(iso_new(CoeffKind::Algebra, &kbn, &bl, &e(1)).unwrap(), e(1).scale(&IntPoly::from_i64(-1)));
}

#[test]
fn iso_needs_matching_alpha() {
    let bs = basis(&"**".parse().unwrap());
    let r = iso_factor::<GaussPoly>(CoeffKind::Algebra, &Specialization::kbn(), &Specialization::ca().with_alpha(0), &bs[1]);
    assert!(matches!(r, Err(Error::CheckFailed(_))));
}
