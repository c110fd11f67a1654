//! Exhaustive property suites over a bounded scope of blocks and
//! matchings, shared by the CLI `selftest` command and the test targets.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arcalg::{basis, leftmost_pair, mult_basis, surgery, unit, ArcElement};
use crate::bimodule::{act_left, act_right, bimodule_basis, reverse_matching, rmult, CompositeMatching, Move, Sign};
use crate::coeffmap::{chi_by_caps, chi_by_cups, circle_coeff, CoeffKind};
use crate::diagram::{Block, Circle, Layer, StackedDiagram, Symbol};
use crate::genalg::{ideal_basis, m_hull, minimal_m};
use crate::homology::{build_cube, build_cube_generic, homology, HomologyRing, MorseWord};
use crate::ring::{Coefficient, GaussPoly, IntPoly, SpecTarget, Specialization, SymbolicScalar};

/// Size bound for the exhaustive suites.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Scope {
    pub max_stars: usize,
    pub max_crosses: usize,
    /// `∘` symbols allowed strictly inside a block.
    pub max_empties: usize,
}

impl Scope {
    pub fn new(max_stars: usize) -> Self {
        Scope { max_stars, max_crosses: 1, max_empties: 1 }
    }

    /// Balanced blocks in scope that neither start nor end with `∘`,
    /// including the empty block.
    pub fn blocks(&self) -> Vec<Block> {
        let max_len = self.max_stars + self.max_crosses + self.max_empties;
        let mut out = vec![Block::new(Vec::new())];
        let mut frontier: Vec<Vec<Symbol>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for s in &frontier {
                for x in [Symbol::Empty, Symbol::Cross, Symbol::Star] {
                    let mut t = s.clone();
                    t.push(x);
                    let count = |y: Symbol| t.iter().filter(|z| **z == y).count();
                    if count(Symbol::Star) <= self.max_stars
                        && count(Symbol::Cross) <= self.max_crosses
                        && count(Symbol::Empty) <= self.max_empties
                    {
                        next.push(t);
                    }
                }
            }
            for t in &next {
                if t[0] != Symbol::Empty && *t.last().unwrap() != Symbol::Empty {
                    let b = Block::new(t.clone());
                    if b.is_balanced() {
                        out.push(b);
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// Composites of one or two basic moves out of every block in scope,
    /// padded by `∘` on both ends, plus one identity layer on each block.
    /// Every later block has at most `max_stars + 1` stars, so a cup or
    /// cap move out of a block in scope is always included.
    pub fn matchings(&self) -> Vec<CompositeMatching> {
        let moves = |b: &Block| {
            let n = b.len() as i64;
            [Sign::Plus, Sign::Minus].into_iter().flat_map(move |s| (-1..n - 2).map(move |i| Move::new(s, i, None)))
        };
        let mut out = Vec::new();
        for b in self.blocks() {
            let b = padded(&b);
            out.push(CompositeMatching { blocks: vec![b.clone(), b.clone()], layers: vec![Layer::identity(&b)] });
            for mv in moves(&b) {
                let Ok(m) = CompositeMatching::from_moves(b.clone(), &[mv]) else { continue };
                for mv2 in moves(m.target()) {
                    if let Ok((g, l)) = mv2.apply(m.target()) {
                        if g.star_count() <= self.max_stars + 1 {
                            let mut m2 = m.clone();
                            m2.blocks.push(g);
                            m2.layers.push(l);
                            out.push(m2);
                        }
                    }
                }
                if m.target().star_count() <= self.max_stars + 1 {
                    out.push(m);
                }
            }
        }
        out
    }
}

fn padded(b: &Block) -> Block {
    let mut s = vec![Symbol::Empty];
    s.extend(b.symbols.iter().cloned());
    s.push(Symbol::Empty);
    Block::with_start(-1, s)
}

/// Outcome of one suite: number of checks, number of failures and the
/// first few failing cases.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checked: usize,
    pub failed: usize,
    pub samples: Vec<String>,
}

const SAMPLES: usize = 5;

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), ..Default::default() }
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.samples.len() < SAMPLES {
                self.samples.push(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }

    pub fn merge(mut self, o: Report) -> Report {
        self.checked += o.checked;
        self.failed += o.failed;
        self.samples.extend(o.samples.into_iter().take(SAMPLES - self.samples.len().min(SAMPLES)));
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{}: {} ({} checks, {} failures)", self.suite, status, self.checked, self.failed)?;
        for s in &self.samples {
            write!(f, "\n  {s}")?;
        }
        Ok(())
    }
}

/// Runs `f` on every item in parallel and merges the partial reports.
pub fn par_suite<I: Sync, F: Fn(&I, &mut Report) + Sync + Send>(name: &str, items: &[I], f: F) -> Report {
    items
        .par_iter()
        .map(|i| {
            let mut r = Report::new(name);
            f(i, &mut r);
            r
        })
        .reduce(|| Report::new(name), Report::merge)
}

/// Associativity, unit, orthogonal idempotents and degree additivity
/// (with `deg α = 4`) on all basis triples.
pub fn algebra_axioms(scope: &Scope) -> Report {
    par_suite("algebra axioms", &scope.blocks(), |b, r| {
        let bs = basis(b);
        let els: Vec<ArcElement> = bs.iter().cloned().map(ArcElement::from_basis).collect();
        let one: ArcElement = unit(b);
        for (x, ex) in bs.iter().zip(&els) {
            r.check(one.mult(ex).unwrap() == *ex && ex.mult(&one).unwrap() == *ex, || format!("unit on {x}"));
            for (y, ey) in bs.iter().zip(&els) {
                let xy = ex.mult(ey).unwrap();
                let graded =
                    xy.terms.iter().all(|(z, c)| c.homogeneous_degree() == Some((x.degree() + y.degree()) as i64 - z.degree() as i64));
                r.check(graded, || format!("degree of {x} * {y}"));
                if x.is_idempotent() && y.is_idempotent() {
                    let want = if x == y { ex.clone() } else { ArcElement::zero(b.clone()) };
                    r.check(xy == want, || format!("idempotents {x}, {y}"));
                }
                if xy.is_zero() {
                    continue;
                }
                for ez in &els {
                    let ok = xy.mult(ez).unwrap() == ex.mult(&ey.mult(ez).unwrap()).unwrap();
                    r.check(ok, || format!("associativity {x} | {y} | {ez}"));
                }
            }
        }
    })
}

/// `Iso(x · y) = Iso(x) · Iso(y)` between two specializations over `T`.
pub fn iso_multiplicative<T: SpecTarget + Send + Sync>(scope: &Scope, source: &Specialization, target: &Specialization) -> Report {
    let name = format!("iso {source} -> {target}");
    par_suite(&name, &scope.blocks(), |b, r| {
        let bs = basis(b);
        for x in &bs {
            for y in &bs {
                let ex = ArcElement::<T>::from_basis(x.clone());
                let ey = ArcElement::<T>::from_basis(y.clone());
                let iso = |e: &ArcElement<T>| crate::coeffmap::iso_new(CoeffKind::Algebra, source, target, e).unwrap();
                let lhs = iso(&ex.mult_in(&ey, source).unwrap());
                let rhs = iso(&ex).mult_in(&iso(&ey), target).unwrap();
                r.check(lhs == rhs, || format!("{x} * {y}"));
            }
        }
    })
}

/// `KBN ↔ Bl` over ℤ[α] and `KBN ↔ Ca` over ℤ[α, i], both directions.
pub fn iso_suites(scope: &Scope) -> Vec<Report> {
    let (kbn, bl, ca) = (Specialization::kbn(), Specialization::bl(), Specialization::ca());
    vec![
        iso_multiplicative::<IntPoly>(scope, &kbn, &bl),
        iso_multiplicative::<IntPoly>(scope, &bl, &kbn),
        iso_multiplicative::<GaussPoly>(scope, &kbn, &ca),
        iso_multiplicative::<GaussPoly>(scope, &ca, &kbn),
    ]
}

/// Left and right actions commute, and the units act trivially.
pub fn bimodule_actions(scope: &Scope) -> Report {
    par_suite("bimodule actions", &scope.matchings(), |m, r| {
        let bs = bimodule_basis(m).unwrap();
        let (a0, a1) = (basis(m.source()), basis(m.target()));
        for x in &bs {
            let id = [(x.clone(), SymbolicScalar::one())];
            let left: BTreeMap<_, _> = a0.iter().filter(|a| a.is_idempotent()).flat_map(|a| act_left(a, m, x).unwrap()).collect();
            let right: BTreeMap<_, _> = a1.iter().filter(|b| b.is_idempotent()).flat_map(|b| act_right(m, x, b).unwrap()).collect();
            r.check(left == id.clone().into() && right == id.into(), || format!("unit on {x}"));
            for a in &a0 {
                for b in &a1 {
                    let mut lr = BTreeMap::new();
                    for (y, c) in act_left(a, m, x).unwrap() {
                        for (z, k) in act_right(m, &y, b).unwrap() {
                            crate::arcalg::surgery::accumulate(&mut lr, z, c.mul(&k));
                        }
                    }
                    let mut rl = BTreeMap::new();
                    for (y, c) in act_right(m, x, b).unwrap() {
                        for (z, k) in act_left(a, m, &y).unwrap() {
                            crate::arcalg::surgery::accumulate(&mut rl, z, c.mul(&k));
                        }
                    }
                    r.check(lr == rl, || format!("{a} . {x} . {b}"));
                }
            }
        }
    })
}

/// Reverse-surgery sites of a matching: pairs of vertical strands in one layer.
pub fn rmult_sites(m: &CompositeMatching) -> Vec<(usize, (usize, usize))> {
    let mut out = Vec::new();
    for (k, l) in m.layers.iter().enumerate() {
        let st: Vec<usize> = l.strands.iter().filter(|(a, b)| a == b).map(|s| s.0).collect();
        for (u, &i) in st.iter().enumerate() {
            for &j in &st[u + 1..] {
                if reverse_matching(m, k, (i, j)).is_ok() {
                    out.push((k, (i, j)));
                }
            }
        }
    }
    out
}

/// `rmult` commutes with both actions.
pub fn rmult_bimodule_maps(scope: &Scope) -> Report {
    par_suite("rmult bimodule maps", &scope.matchings(), |m, r| {
        let bs = bimodule_basis(m).unwrap();
        for (k, site) in rmult_sites(m) {
            let m2 = reverse_matching(m, k, site).unwrap();
            let image = |x: &crate::bimodule::BimoduleBasisDiagram| rmult(m, x, k, site).unwrap().1;
            for x in &bs {
                for a in basis(m.source()) {
                    let mut p = BTreeMap::new();
                    for (y, c) in act_left(&a, m, x).unwrap() {
                        for (z, c2) in image(&y) {
                            crate::arcalg::surgery::accumulate(&mut p, z, c.mul(&c2));
                        }
                    }
                    let mut q = BTreeMap::new();
                    for (y, c) in image(x) {
                        for (z, c2) in act_left(&a, &m2, &y).unwrap() {
                            crate::arcalg::surgery::accumulate(&mut q, z, c.mul(&c2));
                        }
                    }
                    r.check(p == q, || format!("left {a} at layer {k} {site:?} on {x}"));
                }
                for b in basis(m.target()) {
                    let mut p = BTreeMap::new();
                    for (y, c) in act_right(m, x, &b).unwrap() {
                        for (z, c2) in image(&y) {
                            crate::arcalg::surgery::accumulate(&mut p, z, c.mul(&c2));
                        }
                    }
                    let mut q = BTreeMap::new();
                    for (y, c) in image(x) {
                        for (z, c2) in act_right(&m2, &y, &b).unwrap() {
                            crate::arcalg::surgery::accumulate(&mut q, z, c.mul(&c2));
                        }
                    }
                    r.check(p == q, || format!("right {b} at layer {k} {site:?} on {x}"));
                }
            }
        }
    })
}

/// Every stacked diagram met while multiplying basis diagrams of `b`.
pub fn product_diagrams(b: &Block) -> Vec<StackedDiagram> {
    let mut cups: Vec<_> = basis(b).into_iter().map(|x| x.cup).collect();
    cups.dedup();
    let mut out = Vec::new();
    for lo in &cups {
        for mid in &cups {
            for hi in &cups {
                let mut d = StackedDiagram {
                    blocks: vec![b.clone(), b.clone()],
                    bottom: lo.clone(),
                    layers: vec![Layer { caps: mid.clone(), cups: mid.clone(), strands: Vec::new() }],
                    top: hi.clone(),
                };
                out.push(d.clone());
                while let Some(p) = leftmost_pair(&d, 0) {
                    d = surgery(&d, 0, p).unwrap();
                    out.push(d.clone());
                }
            }
        }
    }
    out
}

fn lemma_checks(d: &StackedDiagram, c: &Circle, r: &mut Report) {
    let k = d.classify(c);
    let (icup, icap, ecup, ecap) = k.counts();
    r.check(icup + 1 == ecap && icap + 1 == ecup, || format!("cup/cap counts {d:?}"));
    let t = d.rightmost_position(c) % 2;
    let par = |arcs: &[crate::diagram::ArcId], want: usize| arcs.iter().all(|a| d.left_position(*a) % 2 == want);
    let ok = par(&k.icup, t) && par(&k.icap, t) && par(&k.ecup, 1 - t) && par(&k.ecap, 1 - t);
    let ok = ok && par(&k.eright, 1 - t) && par(&k.eleft, t) && par(&k.iright, t) && par(&k.ileft, 1 - t);
    r.check(ok, || format!("parities {d:?}"));
    let sum = |arcs: &[crate::diagram::ArcId], shift: i64| arcs.iter().map(|a| d.saddle_width(*a) as i64 + shift).sum::<i64>();
    let q = d.circle_q(c);
    let i = (k.ileft.len() + k.iright.len()) as i64;
    let e = (k.eleft.len() + k.eright.len()) as i64;
    let ok = sum(&k.icup, 0) + sum(&k.ecap, -1) + i == q && sum(&k.icap, 0) + sum(&k.ecup, -1) + e == q;
    let stated = -sum(&k.ecup, -1) + sum(&k.ecap, -1) + i == -sum(&k.icup, 0) + sum(&k.icap, 0) + e;
    r.check(ok && stated, || format!("saddle sums {d:?}"));
    let chi = chi_by_cups(d, c);
    let ok = chi == chi_by_caps(d, c)
        && [false, true]
            .iter()
            .all(|&cw| circle_coeff(CoeffKind::Reverse, d, c, cw) == circle_coeff(CoeffKind::Bimodule, d, c, cw).mul(&chi));
    r.check(ok, || format!("chi factorization {d:?}"));
}

/// Counting, parity, saddle-sum and χ identities on every circle of every
/// product diagram and bimodule diagram in scope.
pub fn lemmas(scope: &Scope) -> Report {
    let a = par_suite("lemmas", &scope.blocks(), |b, r| {
        for d in product_diagrams(b) {
            for c in &d.components().unwrap().circles {
                lemma_checks(&d, c, r);
            }
        }
    });
    let m = par_suite("lemmas", &scope.matchings(), |m, r| {
        for x in bimodule_basis(m).unwrap() {
            let d = x.diagram(m);
            for c in &d.components().unwrap().circles {
                lemma_checks(&d, c, r);
            }
        }
    });
    a.merge(m)
}

/// The ideal of the generalized algebra is two-sided at α = 0 for every
/// hull radius up to one past the minimal one.
pub fn ideal_closure(scope: &Scope) -> Report {
    let spec: Specialization = "0,e,w".parse().expect("valid specialization");
    let bases: Vec<Block> = scope.blocks().into_iter().filter(|b| b.star_count() > 0 && b.star_count() <= 2).collect();
    par_suite("generalized ideal", &bases, |b, r| {
        for ups in 0..=b.star_count() {
            let mut b = b.clone();
            b.ups = ups;
            let m0 = minimal_m(&b);
            for m in m0..=m0 + 1 {
                let h = m_hull(&b, m).unwrap();
                let ideal = ideal_basis(&h, &spec).unwrap();
                let sub = h.truncated_basis();
                for x in &sub {
                    for i in &ideal {
                        for (u, v) in [(x, i), (i, x)] {
                            for (z, c) in mult_basis(u, v).unwrap() {
                                let c: SymbolicScalar = spec.apply(&c).unwrap();
                                r.check(c.is_zero() || !h.contains(&z.weight), || format!("{u} * {v} leaves the ideal (m = {m})"));
                            }
                        }
                    }
                }
            }
        }
    })
}

/// Closed test words: unknot, Hopf links, trefoil, figure-eight and all
/// braid closures on three strands of length at most `max_len`.
pub fn test_words(max_len: usize) -> Vec<MorseWord> {
    let mut out: Vec<MorseWord> =
        ["u0 n0", "u0 u2 x+1 x+1 n2 n0", "u0 u2 x-1 x-1 n2 n0", "u0 x+0 x-0 n0"].iter().map(|s| s.parse().expect("valid word")).collect();
    out.push(MorseWord::braid_closure(&[1, 1, 1], 2).unwrap());
    out.push(MorseWord::braid_closure(&[1, -2, 1, -2], 3).unwrap());
    let gens = [1i64, -1, 2, -2];
    let mut words: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..max_len {
        words = words.iter().flat_map(|w| gens.iter().map(move |g| [w.as_slice(), &[*g]].concat())).collect();
        out.extend(words.iter().map(|w| MorseWord::braid_closure(w, 3).unwrap()));
    }
    out
}

/// d² = 0 over the generic ring, Gaussian elimination and the ℤ table
/// agree with the ℚ table, and all three specializations agree over ℚ(i).
pub fn homology_checks(words: &[MorseWord]) -> Report {
    par_suite("homology", words, |w, r| {
        r.check(build_cube_generic(w).unwrap().d_squared_is_zero(), || format!("d^2 on {w}"));
        let specs = [Specialization::kbn(), Specialization::bl(), Specialization::ca()].map(|s| s.with_alpha(0));
        let q = homology(w, &specs[0], HomologyRing::Q, false).unwrap();
        let small = homology(w, &specs[0], HomologyRing::Q, true).unwrap();
        r.check(q.ranks() == small.ranks(), || format!("elimination on {w}"));
        let cube = build_cube::<num_rational::BigRational>(w, &specs[0]).unwrap();
        r.check(q.euler() == cube.euler(), || format!("euler characteristic on {w}"));
        let z = homology(w, &specs[0], HomologyRing::Z, true).unwrap();
        r.check(z.ranks() == q.ranks(), || format!("free part over Z on {w}"));
        for s in &specs {
            let qi = homology(w, s, HomologyRing::QI, true).unwrap();
            r.check(qi.ranks() == q.ranks(), || format!("{s} over QI on {w}"));
        }
    })
}

/// All suites, in a fixed order.
pub fn run_all(scope: &Scope) -> Vec<Report> {
    let mut out = vec![algebra_axioms(scope)];
    out.push(crate::coeffmap::check_intertwine(CoeffKind::Algebra, scope));
    out.push(crate::coeffmap::check_intertwine(CoeffKind::Bimodule, scope));
    out.push(crate::coeffmap::check_intertwine(CoeffKind::Reverse, scope));
    out.extend(iso_suites(scope));
    out.push(bimodule_actions(scope));
    out.push(rmult_bimodule_maps(scope));
    out.push(lemmas(scope));
    out.push(ideal_closure(scope));
    out.push(homology_checks(&test_words(scope.max_stars.min(3))));
    out
}
