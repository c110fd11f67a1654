#![allow(dead_code)]

pub mod khovanov;
pub mod stepping;

use arcalg::arcalg::{basis, leftmost_pair, surgery};
use arcalg::bimodule::{CompositeMatching, Move, Sign};
use arcalg::diagram::{Block, Layer, StackedDiagram, Symbol};

/// Blocks with first and last symbol not `∘`, at most `max_stars` stars,
/// at most `max_crosses` crosses and length at most `max_len`, balanced.
pub fn small_blocks(max_len: usize, max_stars: usize, max_crosses: usize) -> Vec<Block> {
    let mut out = vec![Block::new(vec![])];
    let syms = [Symbol::Empty, Symbol::Cross, Symbol::Star];
    let mut frontier: Vec<Vec<Symbol>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for &x in &syms {
                let mut t = s.clone();
                t.push(x);
                let stars = t.iter().filter(|y| **y == Symbol::Star).count();
                let crosses = t.iter().filter(|y| **y == Symbol::Cross).count();
                if stars <= max_stars && crosses <= max_crosses {
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

/// Every stacked diagram met while multiplying two basis diagrams of a
/// block, from the first stacking to the last surgery.
pub fn product_diagrams(b: &Block) -> Vec<StackedDiagram> {
    let bs = basis(b);
    let mut cups: Vec<_> = bs.iter().map(|x| x.cup.clone()).collect();
    cups.dedup();
    let mut out = Vec::new();
    for lo in &cups {
        for mid in &cups {
            for hi in &cups {
                let mut d = StackedDiagram {
                    blocks: vec![b.clone(), b.clone()],
                    bottom: lo.clone(),
                    layers: vec![Layer { caps: mid.clone(), cups: mid.clone(), strands: vec![] }],
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

/// `∘` on both sides, so that moves can reach the ends.
pub fn padded(b: &Block) -> Block {
    let mut s = vec![Symbol::Empty];
    s.extend(b.symbols.iter().cloned());
    s.push(Symbol::Empty);
    Block::with_start(-1, s)
}

/// Composite matchings of one and two basic moves out of padded blocks
/// with at most `max_stars` stars and one cross; every block on the way
/// keeps at most `max_stars` stars.
pub fn matchings(max_len: usize, max_stars: usize) -> Vec<CompositeMatching> {
    let mut out = Vec::new();
    let moves = |b: &Block| {
        let n = b.len() as i64;
        [Sign::Plus, Sign::Minus].into_iter().flat_map(move |s| (-1..n - 2).map(move |i| Move::new(s, i, None)))
    };
    for b in small_blocks(max_len, max_stars, 1) {
        let b = padded(&b);
        let one: Vec<CompositeMatching> = moves(&b).filter_map(|mv| CompositeMatching::from_moves(b.clone(), &[mv]).ok()).collect();
        for m in &one {
            for mv in moves(m.target()) {
                if let Ok((g, l)) = mv.apply(m.target()) {
                    if g.star_count() <= max_stars {
                        let mut m2 = m.clone();
                        m2.blocks.push(g);
                        m2.layers.push(l);
                        out.push(m2);
                    }
                }
            }
        }
        out.extend(one.into_iter().filter(|m| m.target().star_count() <= max_stars));
    }
    out
}

/// One layer of vertical strands on each padded block.
pub fn identities(max_len: usize, max_stars: usize) -> Vec<CompositeMatching> {
    small_blocks(max_len, max_stars, 1)
        .iter()
        .map(|b| {
            let b = padded(b);
            CompositeMatching { blocks: vec![b.clone(), b.clone()], layers: vec![Layer::identity(&b)] }
        })
        .collect()
}
