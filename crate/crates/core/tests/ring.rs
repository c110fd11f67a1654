//! Ring axioms for the symbolic scalars and the specialization maps out of
//! them.

use arcalg::ring::{
    AlphaImage, Coefficient, EpsilonImage, Euclidean, GaussInt, GaussPoly, Monomial, OmegaImage, Specialization, SymbolicScalar,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn monomial() -> impl Strategy<Value = (i64, Monomial)> {
    (-3i64..=3, 0u32..3, -3i32..=3, 0u32..2).prop_map(|(c, a, w, e)| (c, Monomial::new(a, w, e)))
}

fn scalar() -> impl Strategy<Value = SymbolicScalar> {
    prop::collection::vec(monomial(), 0..4)
        .prop_map(|ms| ms.into_iter().fold(SymbolicScalar::zero(), |acc, (c, m)| acc.add(&SymbolicScalar::monomial(c, m))))
}

fn specialization() -> impl Strategy<Value = Specialization> {
    let alpha = prop_oneof![Just(AlphaImage::Generic), (-2i64..=2).prop_map(|a| AlphaImage::Value(BigInt::from(a)))];
    let eps = prop::sample::select(vec![EpsilonImage::Generic, EpsilonImage::Plus, EpsilonImage::Minus]);
    let omega = prop::sample::select(vec![OmegaImage::Generic, OmegaImage::One, OmegaImage::MinusOne, OmegaImage::I, OmegaImage::MinusI]);
    (alpha, eps, omega).prop_map(|(a, e, w)| Specialization::new("test", a, e, w))
}

/// Images over ℤ[α, i] need ω sent to a unit of ℤ[i].
fn numeric(s: &Specialization) -> bool {
    s.omega != OmegaImage::Generic && s.epsilon != EpsilonImage::Generic
}

#[test]
fn relations_hold() {
    let (e, w, wi) = (SymbolicScalar::epsilon(), SymbolicScalar::omega(), SymbolicScalar::omega_inv());
    assert!(e.mul(&e).is_one());
    assert!(w.mul(&wi).is_one());
    assert_eq!(SymbolicScalar::epsilon_pow(3), e);
    assert_eq!(w.unit_inverse(), Some(wi));
    assert_eq!(SymbolicScalar::alpha().unit_inverse(), None);
    assert_eq!(SymbolicScalar::alpha().homogeneous_degree(), Some(4));
}

#[test]
fn named_specializations() {
    let x: SymbolicScalar = "a e w^-1 + 2 e".parse().unwrap();
    let kbn: GaussPoly = Specialization::kbn().apply(&x).unwrap();
    let ca: GaussPoly = Specialization::ca().apply(&x).unwrap();
    assert_ne!(kbn, ca);
    assert!(Specialization::ca().apply::<SymbolicScalar>(&x).is_err());
    let zero = Specialization::kbn().with_alpha(0);
    assert!(zero.alpha_is_zero());
    assert_eq!("0,e,w".parse::<Specialization>().unwrap().apply::<SymbolicScalar>(&x).unwrap(), "2 e".parse().unwrap());
}

#[test]
fn gaussian_division() {
    let a = GaussInt::new(BigInt::from(7), BigInt::from(-3));
    let b = GaussInt::new(BigInt::from(2), BigInt::from(1));
    let (q, r) = a.div_rem(&b);
    assert_eq!(q.mul(&b).add(&r), a);
    assert!(r.norm() < b.norm());
}

proptest! {
    #[test]
    fn commutative_ring(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.add(&SymbolicScalar::zero()), x.clone());
        prop_assert_eq!(x.mul(&SymbolicScalar::one()), x.clone());
        prop_assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn text_and_json_round_trip(x in scalar()) {
        prop_assert_eq!(x.to_string().parse::<SymbolicScalar>().unwrap(), x.clone());
        let j = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<SymbolicScalar>(&j).unwrap(), x);
    }

    #[test]
    fn monomial_units(m in monomial()) {
        let (_, m) = m;
        let x = SymbolicScalar::monomial(1, m);
        prop_assert_eq!(x.unit_inverse().is_some(), m.a == 0);
        if let Some(y) = x.unit_inverse() {
            prop_assert!(x.mul(&y).is_one());
        }
    }

    #[test]
    fn specialization_is_a_homomorphism(s in specialization(), x in scalar(), y in scalar()) {
        if numeric(&s) {
            let f = |v: &SymbolicScalar| -> GaussPoly { s.apply(v).unwrap() };
            prop_assert_eq!(f(&x.add(&y)), f(&x).add(&f(&y)));
            prop_assert_eq!(f(&x.mul(&y)), f(&x).mul(&f(&y)));
            prop_assert!(f(&SymbolicScalar::one()).is_one());
        }
        let symbolic = !matches!(s.omega, OmegaImage::I | OmegaImage::MinusI);
        if symbolic {
            let f = |v: &SymbolicScalar| -> SymbolicScalar { s.apply(v).unwrap() };
            prop_assert_eq!(f(&x.add(&y)), f(&x).add(&f(&y)));
            prop_assert_eq!(f(&x.mul(&y)), f(&x).mul(&f(&y)));
            prop_assert_eq!(f(&f(&x)), f(&x));
        }
    }

    #[test]
    fn spec_text_round_trip(s in specialization()) {
        let a = match &s.alpha { AlphaImage::Generic => "a".to_string(), AlphaImage::Value(v) => v.to_string() };
        let e = match s.epsilon { EpsilonImage::Generic => "e", EpsilonImage::Plus => "1", EpsilonImage::Minus => "-1" };
        let w = match s.omega { OmegaImage::Generic => "w", OmegaImage::One => "1", OmegaImage::MinusOne => "-1", OmegaImage::I => "i", OmegaImage::MinusI => "-i" };
        let p: Specialization = format!("custom:{a},{e},{w}").parse().unwrap();
        prop_assert_eq!((p.alpha, p.epsilon, p.omega), (s.alpha, s.epsilon, s.omega));
    }

    #[test]
    fn gaussian_euclid(a in (-20i64..20, -20i64..20), b in (-9i64..9, -9i64..9)) {
        let a = GaussInt::new(BigInt::from(a.0), BigInt::from(a.1));
        let b = GaussInt::new(BigInt::from(b.0), BigInt::from(b.1));
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.norm() < b.norm());
    }
}
