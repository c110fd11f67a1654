use serde::{Deserialize, Serialize};

use super::block::{Block, Label, Weight};
use crate::error::{Error, Result};

/// Arc between local indices `i < j`.
pub type Pair = (usize, usize);

fn crosses(a: Pair, b: Pair) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

/// Checks that `pairs` is a non-crossing matching with `i < j` on `★`
/// positions of `block`, each used at most once. With `perfect`, every `★`
/// must be used.
pub fn check_matching(block: &Block, pairs: &[Pair], perfect: bool) -> Result<()> {
    let mut used = vec![false; block.len()];
    for &(i, j) in pairs {
        if i >= j || !block.is_star(i) || !block.is_star(j) {
            return Err(Error::InvalidMatching(format!("arc ({i},{j}) on block {block}")));
        }
        for k in [i, j] {
            if std::mem::replace(&mut used[k], true) {
                return Err(Error::InvalidMatching(format!("index {k} used twice on block {block}")));
            }
        }
    }
    for (n, &a) in pairs.iter().enumerate() {
        if let Some(&b) = pairs[n + 1..].iter().find(|&&b| crosses(a, b)) {
            return Err(Error::InvalidMatching(format!("arcs {a:?} and {b:?} cross")));
        }
    }
    if perfect {
        if let Some(k) = block.star_indices().into_iter().find(|&k| !used[k]) {
            return Err(Error::InvalidMatching(format!("index {k} of block {block} is unmatched")));
        }
    }
    Ok(())
}

/// Cup diagram on a block: a perfect non-crossing matching of its `★`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct CupDiagram {
    pub block: Block,
    pub cups: Vec<Pair>,
}

impl CupDiagram {
    pub fn new(block: Block, mut cups: Vec<Pair>) -> Result<Self> {
        cups.sort();
        check_matching(&block, &cups, true)?;
        Ok(CupDiagram { block, cups })
    }

    /// The weight `λ` with `λ̲ = self`: every cup oriented anticlockwise.
    pub fn weight(&self) -> Weight {
        anticlockwise_weight(&self.block, &self.cups)
    }
}

/// Weight with `∨` at the left and `∧` at the right end of every arc.
pub fn anticlockwise_weight(block: &Block, pairs: &[Pair]) -> Weight {
    let mut labels: Vec<Label> = block
        .symbols
        .iter()
        .map(|s| match s {
            super::block::Symbol::Empty => Label::Empty,
            super::block::Symbol::Cross => Label::Cross,
            super::block::Symbol::Star => Label::Up,
        })
        .collect();
    for &(i, j) in pairs {
        labels[i] = Label::Down;
        labels[j] = Label::Up;
    }
    Weight { start: block.start, labels }
}

/// All perfect non-crossing matchings of the `★` of `block`, in
/// lexicographic order of their sorted pair lists.
pub fn all_matchings(block: &Block) -> Vec<Vec<Pair>> {
    fn go(stars: &[usize]) -> Vec<Vec<Pair>> {
        if stars.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        // partner of the first star must leave an even count inside
        for k in (1..stars.len()).step_by(2) {
            for inner in go(&stars[1..k]) {
                for outer in go(&stars[k + 1..]) {
                    let mut m = vec![(stars[0], stars[k])];
                    m.extend(inner.iter().copied());
                    m.extend(outer.iter().copied());
                    m.sort();
                    out.push(m);
                }
            }
        }
        out
    }
    let stars = block.star_indices();
    if stars.len() % 2 == 1 {
        return Vec::new();
    }
    let mut all = go(&stars);
    all.sort();
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts() {
        for (n, c) in [(0, 1), (2, 1), (4, 2), (6, 5), (8, 14)] {
            assert_eq!(all_matchings(&Block::stars(n)).len(), c);
        }
        assert!(all_matchings(&Block::stars(3)).is_empty());
    }

    #[test]
    fn rejects_crossing_and_uncovered() {
        let b = Block::stars(4);
        assert!(CupDiagram::new(b.clone(), vec![(0, 2), (1, 3)]).is_err());
        assert!(CupDiagram::new(b.clone(), vec![(0, 1)]).is_err());
        assert!(CupDiagram::new(b, vec![(0, 3), (1, 2)]).is_ok());
    }

    #[test]
    fn weight_round_trip() {
        let b: Block = "*x**o*".parse().unwrap();
        for m in all_matchings(&b) {
            let d = CupDiagram::new(b.clone(), m.clone()).unwrap();
            assert_eq!(d.weight().underline().unwrap(), m);
        }
    }
}
