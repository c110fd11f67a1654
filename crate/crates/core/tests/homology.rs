//! Cube complexes against a brute-force Khovanov oracle, plus Reidemeister
//! invariance and agreement across specializations.

mod common;

use std::collections::BTreeMap;

use arcalg::homology::{build_cube, build_cube_generic, homology, HomologyRing, MorseWord, Token};
use arcalg::ring::{GaussPoly, Specialization};
use common::khovanov::{khovanov, Table};
use num_rational::BigRational;
use proptest::prelude::*;

fn kbn0() -> Specialization {
    Specialization::kbn().with_alpha(0)
}

fn at_alpha_zero() -> [Specialization; 3] {
    [kbn0(), Specialization::bl().with_alpha(0), Specialization::ca().with_alpha(0)]
}

fn table(w: &MorseWord, spec: &Specialization, ring: HomologyRing) -> Table {
    homology(w, spec, ring, false).unwrap().ranks()
}

fn oracle(w: &MorseWord) -> Table {
    khovanov(w, &w.crossing_signs().unwrap())
}

/// Reads choices as tokens, at most `max_cross` crossings and six strands,
/// then closes every remaining strand.
fn word_from(choices: &[(u8, u8)], max_cross: usize) -> MorseWord {
    let (mut n, mut crosses) = (0usize, 0usize);
    let mut tokens = Vec::new();
    for &(c, x) in choices {
        let x = x as usize;
        let t = match c % 3 {
            0 if n < 6 => Token::Cup(x % (n + 1)),
            2 if n >= 2 && crosses < max_cross => {
                crosses += 1;
                if x.is_multiple_of(2) {
                    Token::PosCross(x / 2 % (n - 1))
                } else {
                    Token::NegCross(x / 2 % (n - 1))
                }
            }
            _ if n >= 2 => Token::Cap(x % (n - 1)),
            _ => Token::Cup(0),
        };
        n = match t {
            Token::Cup(_) => n + 2,
            Token::Cap(_) => n - 2,
            _ => n,
        };
        tokens.push(t);
    }
    while n > 0 {
        tokens.push(Token::Cap(0));
        n -= 2;
    }
    MorseWord::new(tokens).unwrap()
}

fn word(s: &str) -> MorseWord {
    s.parse().unwrap()
}

fn figure_eight() -> MorseWord {
    MorseWord::braid_closure(&[1, -2, 1, -2], 3).unwrap()
}

fn trefoil() -> MorseWord {
    MorseWord::braid_closure(&[1, 1, 1], 2).unwrap()
}

#[test]
fn oracle_reproduces_known_tables() {
    assert_eq!(oracle(&word("u0 n0")), [((0, -1), 1), ((0, 1), 1)].into());
    assert_eq!(oracle(&trefoil()), [((0, 1), 1), ((0, 3), 1), ((2, 5), 1), ((3, 9), 1)].into());
    let fig8: Table = [((-2, -5), 1), ((-1, -1), 1), ((0, -1), 1), ((0, 1), 1), ((1, 1), 1), ((2, 5), 1)].into();
    assert_eq!(oracle(&figure_eight()), fig8);
}

#[test]
fn crossing_signs_follow_the_orientation() {
    assert_eq!(word("u0 u2 x+1 x+1 n2 n0").crossing_signs().unwrap(), vec![true, true]);
    assert_eq!(word("u0 u2 x-1 x-1 n2 n0").crossing_signs().unwrap(), vec![false, false]);
    assert_eq!(figure_eight().crossing_signs().unwrap(), vec![true, false, true, false]);
    // the two strands of one cup run in opposite directions
    assert_eq!(word("u0 x+0 x-0 n0").crossing_signs().unwrap(), vec![false, true]);
    assert_eq!(word("u0 x+0 n0").crossing_signs().unwrap(), vec![false]);
}

#[test]
fn knot_tables() {
    for w in [word("u0 u2 x+1 x+1 n2 n0"), word("u0 u2 x-1 x-1 n2 n0"), trefoil(), figure_eight()] {
        for spec in at_alpha_zero() {
            assert_eq!(table(&w, &spec, HomologyRing::QI), oracle(&w), "{w} under {spec}");
        }
        assert_eq!(table(&w, &kbn0(), HomologyRing::Q), oracle(&w), "{w}");
    }
}

#[test]
fn figure_eight_is_amphichiral_and_torsion() {
    let w = figure_eight();
    let mirror = MorseWord::braid_closure(&[-1, 2, -1, 2], 3).unwrap();
    let t = table(&w, &kbn0(), HomologyRing::Q);
    let m: Table = table(&mirror, &kbn0(), HomologyRing::Q).into_iter().map(|((h, q), r)| ((-h, -q), r)).collect();
    assert_eq!(t, m);
    let z = homology(&w, &kbn0(), HomologyRing::Z, true).unwrap();
    assert_eq!(z.torsion(), [((-1, -3), vec!["2".to_string()]), ((2, 3), vec!["2".to_string()])].into());
}

#[test]
fn kink_eliminates_to_the_unknot() {
    let unknot = table(&word("u0 n0"), &kbn0(), HomologyRing::Q);
    for kink in ["u0 u2 x+1 n2 n0", "u0 u2 x-1 n2 n0", "u0 u1 x+0 n1 n0", "u0 u1 x-0 n1 n0"] {
        let w = word(kink);
        let c = build_cube::<BigRational>(&w, &kbn0()).unwrap().gaussian_eliminate();
        assert_eq!(c.total_rank(), 2, "{kink}");
        assert_eq!(homology(&w, &kbn0(), HomologyRing::Q, true).unwrap().ranks(), unknot, "{kink}");
    }
}

/// Inserts `ins` before token `at`, a no-op unless the strand count fits.
fn insert(w: &MorseWord, at: usize, ins: &[Token]) -> Option<MorseWord> {
    let mut t = w.tokens.clone();
    let at = at % (t.len() + 1);
    t.splice(at..at, ins.iter().copied());
    MorseWord::new(t).ok()
}

/// Both words carry the same signs on the crossings they share.
fn same_orientation(w: &MorseWord, v: &MorseWord, at: usize, inserted: usize) -> bool {
    let at = at % (w.tokens.len() + 1);
    let before = w.crossings().iter().filter(|(k, _)| *k < at).count();
    let mut s = v.crossing_signs().unwrap();
    s.drain(before..before + inserted);
    s == w.crossing_signs().unwrap()
}

fn braid() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop::sample::select(vec![1i64, -1, 2, -2]), 0..=2)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn d_squared_vanishes(choices in prop::collection::vec((0u8..3, 0u8..12), 1..12)) {
        let w = word_from(&choices, 4);
        let c = build_cube_generic(&w).unwrap();
        prop_assert!(c.d_squared_is_zero(), "{}", w);
        for spec in [Specialization::kbn(), Specialization::bl(), Specialization::ca(), kbn0()] {
            prop_assert!(c.specialize::<GaussPoly>(&spec).unwrap().d_squared_is_zero(), "{} {}", w, spec);
        }
    }

    #[test]
    fn homology_matches_the_oracle(choices in prop::collection::vec((0u8..3, 0u8..12), 1..12)) {
        let w = word_from(&choices, 4);
        let expect = oracle(&w);
        for spec in at_alpha_zero() {
            prop_assert_eq!(&table(&w, &spec, HomologyRing::QI), &expect, "{} {}", w, spec);
        }
    }

    #[test]
    fn elimination_and_euler(choices in prop::collection::vec((0u8..3, 0u8..12), 1..12)) {
        let w = word_from(&choices, 4);
        let c = build_cube::<BigRational>(&w, &kbn0()).unwrap();
        let full = homology(&w, &kbn0(), HomologyRing::Q, false).unwrap();
        let small = homology(&w, &kbn0(), HomologyRing::Q, true).unwrap();
        prop_assert_eq!(full.ranks(), small.ranks());
        prop_assert_eq!(full.euler(), c.euler());
        prop_assert_eq!(c.gaussian_eliminate().euler(), c.euler());
        let z = homology(&w, &kbn0(), HomologyRing::Z, true).unwrap();
        prop_assert_eq!(z.ranks(), full.ranks());
    }

    #[test]
    fn r1_invariance(choices in prop::collection::vec((0u8..3, 0u8..12), 1..10), at in 0usize..20, i in 0usize..6, pos in any::<bool>()) {
        let w = word_from(&choices, 3);
        let n = w.strand_counts().unwrap()[at % (w.tokens.len() + 1)];
        prop_assume!(n > 0);
        let i = i % n;
        let x = if pos { Token::PosCross(i) } else { Token::NegCross(i) };
        let v = insert(&w, at, &[Token::Cup(i + 1), x, Token::Cap(i + 1)]).unwrap();
        prop_assume!(same_orientation(&w, &v, at, 1));
        prop_assert_eq!(table(&v, &kbn0(), HomologyRing::Q), table(&w, &kbn0(), HomologyRing::Q), "{} vs {}", v, w);
    }

    #[test]
    fn r2_invariance(choices in prop::collection::vec((0u8..3, 0u8..12), 1..10), at in 0usize..20, i in 0usize..6, flip in any::<bool>()) {
        // covers both the braid-like and the mixed move
        let w = word_from(&choices, 3);
        let n = w.strand_counts().unwrap()[at % (w.tokens.len() + 1)];
        prop_assume!(n >= 2);
        let i = i % (n - 1);
        let pair = if flip { [Token::PosCross(i), Token::NegCross(i)] } else { [Token::NegCross(i), Token::PosCross(i)] };
        let v = insert(&w, at, &pair).unwrap();
        prop_assume!(same_orientation(&w, &v, at, 2));
        prop_assert_eq!(table(&v, &kbn0(), HomologyRing::Q), table(&w, &kbn0(), HomologyRing::Q), "{} vs {}", v, w);
    }

    #[test]
    fn r3_invariance(pre in braid(), rel in 0usize..4) {
        let [a, b] = [
            [[1i64, 2, 1], [2, 1, 2]],
            [[-1, -2, -1], [-2, -1, -2]],
            [[1, 2, -1], [-2, 1, 2]],
            [[-1, 2, 1], [2, 1, -2]],
        ][rel]
        .map(|s| s.to_vec());
        let l = MorseWord::braid_closure(&[pre.clone(), a].concat(), 3).unwrap();
        let r = MorseWord::braid_closure(&[pre, b].concat(), 3).unwrap();
        prop_assert_eq!(table(&l, &kbn0(), HomologyRing::Q), table(&r, &kbn0(), HomologyRing::Q), "{} vs {}", l, r);
    }
}

#[test]
fn mixed_r2_on_the_unknot() {
    let unknot = table(&word("u0 n0"), &kbn0(), HomologyRing::Q);
    for w in ["u0 x+0 x-0 n0", "u0 x-0 x+0 n0", "u0 u2 x+1 x-1 n2 n0"] {
        let w = word(w);
        let expect: BTreeMap<(i64, i64), usize> =
            if w.tokens.len() == 4 { unknot.clone() } else { table(&word("u0 u2 n2 n0"), &kbn0(), HomologyRing::Q) };
        assert_eq!(table(&w, &kbn0(), HomologyRing::Q), expect, "{w}");
    }
}
