//! Basis-diagonal coefficient maps and the isomorphisms between
//! specializations they induce.

use serde::{Deserialize, Serialize};

use crate::arcalg::surgery::{accumulate, leftmost_pair, surgery_step, Terms};
use crate::arcalg::{ArcElement, BasisDiagram};
use crate::bimodule::{act_left, act_right, bimodule_basis, rmult, BimoduleBasisDiagram};
use crate::diagram::{ArcId, Circle, Components, Layer, StackedDiagram, Weight};
use crate::error::{Error, Result};
use crate::ring::{Coefficient, SpecTarget, Specialization, SymbolicScalar as S};
use crate::selftest::{par_suite, rmult_sites, Report, Scope};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CoeffKind {
    Algebra,
    Bimodule,
    Reverse,
}

impl std::str::FromStr for CoeffKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "algebra" => Ok(CoeffKind::Algebra),
            "bimodule" => Ok(CoeffKind::Bimodule),
            "reverse" => Ok(CoeffKind::Reverse),
            _ => Err(Error::Parse(format!("unknown coefficient kind {s:?}"))),
        }
    }
}

fn term(e: i64, w: i64) -> S {
    S::epsilon_pow(e).mul(&S::omega_pow(w as i32))
}

/// Coefficient of one circle; `clockwise` adds `ε^{t(C)}`.
pub fn circle_coeff(kind: CoeffKind, d: &StackedDiagram, c: &Circle, clockwise: bool) -> S {
    let cl = d.classify(c);
    let ps = |a: &ArcId| (d.left_position(*a) as i64, d.saddle_width(*a) as i64);
    let mut e = 0i64;
    let mut w = 0i64;
    if matches!(kind, CoeffKind::Algebra | CoeffKind::Bimodule) {
        for (p, s) in cl.icup.iter().map(ps) {
            e += (s + 1) * p;
            w -= s;
        }
        for (p, s) in cl.icap.iter().map(ps) {
            e += s * (p + 1);
            w += s - 1;
        }
    }
    if kind == CoeffKind::Bimodule {
        for (p, _) in cl.eright.iter().map(ps) {
            e += p;
            w += 1;
        }
        for (p, _) in cl.eleft.iter().map(ps) {
            e += p + 1;
            w += 1;
        }
    }
    if kind == CoeffKind::Reverse {
        for (p, s) in cl.ecup.iter().map(ps) {
            e += s * (p + 1);
            w += 1 - s;
        }
        for (p, s) in cl.ecap.iter().map(ps) {
            e += (s + 1) * p;
            w += s;
        }
        for (p, _) in cl.iright.iter().map(ps) {
            e += p + 1;
            w += 1;
        }
        for (p, _) in cl.ileft.iter().map(ps) {
            e += p;
            w += 1;
        }
    }
    if clockwise {
        e += d.rightmost_position(c) as i64;
    }
    term(e, w)
}

/// Product of circle coefficients for the orientation given by `ws`.
pub fn state_coeff(kind: CoeffKind, d: &StackedDiagram, comps: &Components, ws: &[Weight]) -> S {
    comps.circles.iter().fold(S::one(), |acc, c| {
        let cw = crate::arcalg::surgery::is_clockwise(d, c, ws);
        acc.mul(&circle_coeff(kind, d, c, cw))
    })
}

pub fn basis_coeff(kind: CoeffKind, x: &BasisDiagram) -> S {
    let d = x.diagram();
    let comps = d.components().expect("closed diagram");
    state_coeff(kind, &d, &comps, std::slice::from_ref(&x.weight))
}

/// `χ_ε(C) · χ_ω(C)` read off the cups: `Π ε^{p+s} · ω^{#cups}`.
pub fn chi_by_cups(d: &StackedDiagram, c: &Circle) -> S {
    let cups: Vec<ArcId> = c.arcs.iter().copied().filter(|a| a.is_cup()).collect();
    let e: i64 = cups.iter().map(|a| (d.left_position(*a) + d.saddle_width(*a)) as i64).sum();
    term(e, cups.len() as i64)
}

/// The same factor read off caps and strands with nonzero shift.
pub fn chi_by_caps(d: &StackedDiagram, c: &Circle) -> S {
    let caps: Vec<ArcId> = c.arcs.iter().copied().filter(|a| a.is_cap()).collect();
    let shifts = c.arcs.iter().filter(|a| a.is_strand() && d.shift(**a) != 0).count() as i64;
    let e: i64 = caps.iter().map(|a| (d.left_position(*a) + d.saddle_width(*a)) as i64).sum::<i64>() + shifts;
    term(e, caps.len() as i64)
}

/// `coeff_kind` applied termwise to a generic element.
pub fn coeff_map(kind: CoeffKind, x: &ArcElement) -> ArcElement {
    x.map(|d, c| Ok(c.mul(&basis_coeff(kind, d)))).unwrap()
}

pub fn coeff_inverse(kind: CoeffKind, x: &ArcElement) -> ArcElement {
    x.map(|d, c| Ok(c.mul(&basis_coeff(kind, d).unit_inverse().expect("coefficients are units")))).unwrap()
}

/// Ratio `spec_target(coeff) / spec_source(coeff)` on one basis diagram.
/// Both specializations must send α to the same place.
pub fn iso_factor<T: SpecTarget>(kind: CoeffKind, source: &Specialization, target: &Specialization, d: &BasisDiagram) -> Result<T> {
    if source.alpha != target.alpha {
        return Err(Error::CheckFailed(format!("{source} and {target} specialize alpha differently")));
    }
    let c = basis_coeff(kind, d);
    let from: T = source.apply(&c)?;
    let to: T = target.apply(&c)?;
    let inv = from.unit_inverse().ok_or_else(|| Error::ImageNotRepresentable(format!("{c} under {source} is not a unit")))?;
    Ok(to.mul(&inv))
}

/// `Iso = coeff^{target} ∘ (coeff^{source})^{-1}` on an element over the
/// source specialization.
pub fn iso_new<T: SpecTarget>(
    kind: CoeffKind,
    source: &Specialization,
    target: &Specialization,
    x: &ArcElement<T>,
) -> Result<ArcElement<T>> {
    x.map(|d, c| Ok(c.mul(&iso_factor::<T>(kind, source, target, d)?)))
}

/// Circle coefficient used by the checks; [`circle_coeff`] by default.
pub type CircleCoeff = dyn Fn(CoeffKind, &StackedDiagram, &Circle, bool) -> S + Sync;

fn state_with(f: &CircleCoeff, kind: CoeffKind, d: &StackedDiagram, ws: &[Weight]) -> S {
    let comps = d.components().expect("closed diagram");
    comps.circles.iter().fold(S::one(), |acc, c| acc.mul(&f(kind, d, c, crate::arcalg::surgery::is_clockwise(d, c, ws))))
}

/// Checks that `kind` intertwines KBN with the generic structure maps on
/// everything in scope. Algebra: `coeff(D_l) · c = coeff(D_{l+1}) · c_KBN`
/// for every surgery step of every product, then across the final
/// collapse. Bimodule: both actions. Reverse: the `rmult` square, and
/// `coeff̄ = coeff · χ` on every circle.
pub fn check_intertwine(kind: CoeffKind, scope: &Scope) -> Report {
    check_intertwine_with(kind, scope, &circle_coeff)
}

pub fn check_intertwine_with(kind: CoeffKind, scope: &Scope, f: &CircleCoeff) -> Report {
    let kbn = Specialization::kbn();
    let to_kbn = |c: &S| -> S { kbn.apply(c).expect("KBN is symbolic") };
    let name = format!("intertwine {kind:?}").to_lowercase();
    match kind {
        CoeffKind::Algebra => par_suite(&name, &scope.blocks(), |b, r| {
            let bs = crate::arcalg::basis(b);
            for x in &bs {
                for y in bs.iter().filter(|y| y.cup == x.cap) {
                    let mut d = StackedDiagram {
                        blocks: vec![b.clone(), b.clone()],
                        bottom: x.cup.clone(),
                        layers: vec![Layer { caps: x.cap.clone(), cups: y.cup.clone(), strands: Vec::new() }],
                        top: y.cap.clone(),
                    };
                    let mut terms: Terms = [(vec![x.weight.clone(), y.weight.clone()], S::one())].into();
                    while let Some(p) = leftmost_pair(&d, 0) {
                        let mut next = Terms::new();
                        let mut e = d.clone();
                        for (ws, c) in &terms {
                            let single: Terms = [(ws.clone(), S::one())].into();
                            let (d2, out) = surgery_step(&d, &single, 0, p).expect("surgery in scope");
                            let before = state_with(f, kind, &d, ws);
                            for (ws2, k) in out {
                                let ok = before.mul(&k) == state_with(f, kind, &d2, &ws2).mul(&to_kbn(&k));
                                r.check(ok, || format!("{x} * {y}: step at {p:?} to {:?}", ws2));
                                accumulate(&mut next, ws2, c.mul(&k));
                            }
                            e = d2;
                        }
                        d = e;
                        terms = next;
                    }
                    for ws in terms.keys() {
                        let z = BasisDiagram { cup: x.cup.clone(), weight: ws[0].clone(), cap: y.cap.clone() };
                        let ok = state_with(f, kind, &d, ws) == state_with(f, kind, &z.diagram(), std::slice::from_ref(&z.weight));
                        r.check(ok, || format!("{x} * {y}: collapse to {z}"));
                    }
                }
            }
        }),
        CoeffKind::Bimodule => par_suite(&name, &scope.matchings(), |m, r| {
            let bc = |x: &BimoduleBasisDiagram| state_with(f, CoeffKind::Bimodule, &x.diagram(m), &x.weights);
            let ac = |a: &BasisDiagram| state_with(f, CoeffKind::Algebra, &a.diagram(), std::slice::from_ref(&a.weight));
            let (a0, a1) = (crate::arcalg::basis(m.source()), crate::arcalg::basis(m.target()));
            for x in bimodule_basis(m).expect("matching in scope") {
                for a in &a0 {
                    for (z, c) in act_left(a, m, &x).expect("action") {
                        r.check(ac(a).mul(&bc(&x)).mul(&c) == bc(&z).mul(&to_kbn(&c)), || format!("{a} . {x} -> {z}"));
                    }
                }
                for b in &a1 {
                    for (z, c) in act_right(m, &x, b).expect("action") {
                        r.check(ac(b).mul(&bc(&x)).mul(&c) == bc(&z).mul(&to_kbn(&c)), || format!("{x} . {b} -> {z}"));
                    }
                }
            }
        }),
        CoeffKind::Reverse => par_suite(&name, &scope.matchings(), |m, r| {
            let bs = bimodule_basis(m).expect("matching in scope");
            for x in &bs {
                let d = x.diagram(m);
                for c in &d.components().expect("closed diagram").circles {
                    for cw in [false, true] {
                        let ok = f(CoeffKind::Reverse, &d, c, cw) == f(CoeffKind::Bimodule, &d, c, cw).mul(&chi_by_cups(&d, c));
                        r.check(ok, || format!("chi on {x} in {m:?}"));
                    }
                }
            }
            for (k, site) in rmult_sites(m) {
                let m2 = crate::bimodule::reverse_matching(m, k, site).expect("site");
                for x in &bs {
                    let before = state_with(f, kind, &x.diagram(m), &x.weights);
                    for (z, c) in rmult(m, x, k, site).expect("site").1 {
                        let ok = before.mul(&c) == state_with(f, kind, &z.diagram(&m2), &z.weights).mul(&to_kbn(&c));
                        r.check(ok, || format!("square at layer {k} {site:?}: {x} -> {z}"));
                    }
                }
            }
        }),
    }
}
