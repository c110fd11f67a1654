use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entry of a block sequence.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Symbol {
    Empty,
    Cross,
    Star,
}

impl Symbol {
    /// Contribution to the position of every later index.
    pub fn width(self) -> usize {
        match self {
            Symbol::Empty => 0,
            Symbol::Star => 1,
            Symbol::Cross => 2,
        }
    }

    fn to_char(self) -> char {
        match self {
            Symbol::Empty => 'o',
            Symbol::Cross => 'x',
            Symbol::Star => '*',
        }
    }
}

/// Entry of a weight.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Label {
    Empty,
    Cross,
    Down,
    Up,
}

impl Label {
    pub fn symbol(self) -> Symbol {
        match self {
            Label::Empty => Symbol::Empty,
            Label::Cross => Symbol::Cross,
            Label::Down | Label::Up => Symbol::Star,
        }
    }

    pub fn flip(self) -> Label {
        match self {
            Label::Down => Label::Up,
            Label::Up => Label::Down,
            other => other,
        }
    }

    fn to_char(self) -> char {
        match self {
            Label::Empty => 'o',
            Label::Cross => 'x',
            Label::Down => 'v',
            Label::Up => '^',
        }
    }
}

/// Block sequence over `∘ × ★` starting at integer `start`, together with
/// the number of `∧` its weights carry on the `★` positions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Block {
    pub start: i64,
    pub symbols: Vec<Symbol>,
    pub ups: usize,
}

impl Block {
    /// Block with `#★ / 2` symbols `∧`, the cup-only convention.
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Self::with_start(0, symbols)
    }

    pub fn with_start(start: i64, symbols: Vec<Symbol>) -> Self {
        let stars = symbols.iter().filter(|s| **s == Symbol::Star).count();
        Block { start, symbols, ups: stars / 2 }
    }

    pub fn stars(n: usize) -> Self {
        Self::new(vec![Symbol::Star; n])
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn star_count(&self) -> usize {
        self.count(Symbol::Star)
    }

    pub fn cross_count(&self) -> usize {
        self.count(Symbol::Cross)
    }

    fn count(&self, s: Symbol) -> usize {
        self.symbols.iter().filter(|x| **x == s).count()
    }

    pub fn star_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.symbols[i] == Symbol::Star).collect()
    }

    pub fn is_star(&self, i: usize) -> bool {
        self.symbols.get(i) == Some(&Symbol::Star)
    }

    /// Number of `∧`, counting `×` as both.
    pub fn up(&self) -> usize {
        self.ups + self.cross_count()
    }

    /// Number of `∨`, counting `×` as both.
    pub fn down(&self) -> usize {
        self.star_count() - self.ups + self.cross_count()
    }

    pub fn is_balanced(&self) -> bool {
        self.up() == self.down()
    }

    /// `p_Λ(i)`: weighted count of `★` (1) and `×` (2) strictly left of `i`.
    pub fn position(&self, i: usize) -> usize {
        self.symbols[..i.min(self.len())].iter().map(|s| s.width()).sum()
    }

    /// Absolute coordinate of local index `i`.
    pub fn coordinate(&self, i: usize) -> i64 {
        self.start + i as i64
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.symbols.iter().map(|s| s.to_char()).collect();
        write!(f, "{s}")
    }
}

fn symbols_of(s: &str) -> impl Iterator<Item = char> + '_ {
    s.chars().filter(|c| !c.is_whitespace())
}

impl FromStr for Block {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = symbols_of(s)
            .map(|c| match c {
                'o' | '∘' | '.' => Ok(Symbol::Empty),
                'x' | '×' => Ok(Symbol::Cross),
                '*' | '★' | 's' => Ok(Symbol::Star),
                _ => Err(Error::Parse(format!("bad block symbol {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Block::new(symbols))
    }
}

/// Weight over `∘ × ∨ ∧` starting at integer `start`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Weight {
    pub start: i64,
    pub labels: Vec<Label>,
}

impl Weight {
    pub fn new(labels: Vec<Label>) -> Self {
        Weight { start: 0, labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The block containing this weight.
    pub fn block(&self) -> Block {
        let symbols = self.labels.iter().map(|l| l.symbol()).collect();
        let ups = self.labels.iter().filter(|l| **l == Label::Up).count();
        Block { start: self.start, symbols, ups }
    }

    pub fn agrees_with(&self, b: &Block) -> bool {
        self.len() == b.len() && self.labels.iter().zip(&b.symbols).all(|(l, s)| l.symbol() == *s)
    }

    /// `λ̲`: repeatedly match neighbouring `∨∧` pairs, ignoring `∘`, `×` and
    /// matched symbols.
    pub fn underline(&self) -> Result<Vec<(usize, usize)>> {
        let mut stack: Vec<usize> = Vec::new();
        let mut cups = Vec::new();
        let mut leftover_up = false;
        for (i, l) in self.labels.iter().enumerate() {
            match l {
                Label::Down => stack.push(i),
                Label::Up => match stack.pop() {
                    Some(j) => cups.push((j, i)),
                    None => leftover_up = true,
                },
                _ => {}
            }
        }
        if leftover_up || !stack.is_empty() {
            return Err(Error::RaysRequired(self.to_string()));
        }
        cups.sort();
        Ok(cups)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.labels.iter().map(|l| l.to_char()).collect();
        write!(f, "{s}")
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let labels = symbols_of(s)
            .map(|c| match c {
                'o' | '∘' | '.' => Ok(Label::Empty),
                'x' | '×' => Ok(Label::Cross),
                'v' | '∨' => Ok(Label::Down),
                '^' | '∧' => Ok(Label::Up),
                _ => Err(Error::Parse(format!("bad weight symbol {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight::new(labels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn b(s: &str) -> Block {
        s.parse().unwrap()
    }

    #[test]
    fn underline_examples() {
        assert_eq!(w("v^v^").underline().unwrap(), vec![(0, 1), (2, 3)]);
        assert_eq!(w("vv^^").underline().unwrap(), vec![(0, 3), (1, 2)]);
        assert!(matches!(w("^v").underline(), Err(Error::RaysRequired(_))));
        assert_eq!(w("vox^").underline().unwrap(), vec![(0, 3)]);
    }

    #[test]
    fn positions() {
        assert_eq!(b("**").position(0), 0);
        assert_eq!(b("**").position(1), 1);
        assert_eq!(b("*x*").position(2), 3);
        assert_eq!(b("oo**").position(2), 0);
    }

    #[test]
    fn up_down_count_cross_as_both() {
        let x = b("*x*");
        assert_eq!((x.up(), x.down()), (2, 2));
        assert!(x.is_balanced());
        assert!(!w("^").block().is_balanced());
    }
}
