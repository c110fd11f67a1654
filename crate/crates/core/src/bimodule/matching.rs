use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{Block, Layer, StackedDiagram, Symbol};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// A basic move of type `±α_i` at absolute positions `i, i + 1`.
///
/// Shapes, bottom symbols to top symbols at `(i, i + 1)`:
///
/// | shape | `+α_i`  | `−α_i`  |
/// |-------|---------|---------|
/// | 1     | `★∘→∘★` | `∘★→★∘` |
/// | 2     | `★×→×★` | `×★→★×` |
/// | 3     | `∘×→★★` | `×∘→★★` |
/// | 4     | `★★→×∘` | `★★→∘×` |
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Move {
    pub sign: Sign,
    pub i: i64,
    /// Shape 1 to 4; `None` lets the source block decide.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<u8>,
}

use Symbol::{Cross as X, Empty as O, Star as S};

fn patterns(sign: Sign) -> [([Symbol; 2], [Symbol; 2]); 4] {
    match sign {
        Sign::Plus => [([S, O], [O, S]), ([S, X], [X, S]), ([O, X], [S, S]), ([S, S], [X, O])],
        Sign::Minus => [([O, S], [S, O]), ([X, S], [S, X]), ([X, O], [S, S]), ([S, S], [O, X])],
    }
}

impl Move {
    pub fn new(sign: Sign, i: i64, shape: Option<u8>) -> Self {
        Move { sign, i, shape }
    }

    /// Target block and layer of this move applied to `source`.
    pub fn apply(&self, source: &Block) -> Result<(Block, Layer)> {
        let bad = |m: String| Error::InvalidMatching(format!("{self}: {m}"));
        let k = usize::try_from(self.i - source.start).map_err(|_| bad("left of the block".into()))?;
        if k + 1 >= source.len() {
            return Err(bad("right of the block".into()));
        }
        let here = [source.symbols[k], source.symbols[k + 1]];
        let found = patterns(self.sign).iter().position(|(lo, _)| *lo == here);
        let shape = match (found, self.shape) {
            (Some(f), None) => f as u8 + 1,
            (Some(f), Some(s)) if s as usize == f + 1 => s,
            _ => return Err(bad(format!("does not fit {}{}", symbol_char(here[0]), symbol_char(here[1])))),
        };
        let (_, hi) = patterns(self.sign)[shape as usize - 1];
        let mut symbols = source.symbols.clone();
        symbols[k] = hi[0];
        symbols[k + 1] = hi[1];
        let ups = match shape {
            3 => source.ups + 1,
            4 => source.ups - 1,
            _ => source.ups,
        };
        let target = Block { start: source.start, symbols, ups };
        let mut layer = Layer::default();
        for j in source.star_indices() {
            if j != k && j != k + 1 {
                layer.strands.push((j, j));
            }
        }
        match (shape, self.sign) {
            (1 | 2, Sign::Plus) => layer.strands.push((k, k + 1)),
            (1 | 2, Sign::Minus) => layer.strands.push((k + 1, k)),
            (3, _) => layer.cups.push((k, k + 1)),
            _ => layer.caps.push((k, k + 1)),
        }
        layer.normalize();
        Ok((target, layer))
    }
}

fn symbol_char(s: Symbol) -> char {
    match s {
        O => 'o',
        X => 'x',
        S => '*',
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Plus { '+' } else { '-' };
        write!(f, "{s}a{}", self.i)?;
        if let Some(k) = self.shape {
            write!(f, ":{k}")?;
        }
        Ok(())
    }
}

/// `+a2`, `-a0`, `+a2:3`.
impl FromStr for Move {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad move {s:?}"));
        let t = s.trim();
        let sign = match t.chars().next() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            _ => return Err(bad()),
        };
        let rest = t[1..].strip_prefix('a').ok_or_else(bad)?;
        let (i, shape) = match rest.split_once(':') {
            Some((i, k)) => (i, Some(k.parse::<u8>().map_err(|_| bad())?)),
            None => (rest, None),
        };
        if matches!(shape, Some(k) if !(1..=4).contains(&k)) {
            return Err(bad());
        }
        Ok(Move { sign, i: i.parse().map_err(|_| bad())?, shape })
    }
}

/// Blocks `Λ₀, …, Λ_r` with the layers between them.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct CompositeMatching {
    pub blocks: Vec<Block>,
    pub layers: Vec<Layer>,
}

impl CompositeMatching {
    pub fn identity(block: Block) -> Self {
        CompositeMatching { blocks: vec![block], layers: Vec::new() }
    }

    /// Moves applied bottom to top starting from `source`.
    pub fn from_moves(source: Block, moves: &[Move]) -> Result<Self> {
        let mut m = Self::identity(source);
        for mv in moves {
            let (b, l) = mv.apply(m.blocks.last().unwrap())?;
            m.blocks.push(b);
            m.layers.push(l);
        }
        Ok(m)
    }

    pub fn source(&self) -> &Block {
        &self.blocks[0]
    }

    pub fn target(&self) -> &Block {
        self.blocks.last().unwrap()
    }

    /// Closes the matching with `cup` below and `cap` above.
    pub fn diagram(&self, cup: &[(usize, usize)], cap: &[(usize, usize)]) -> StackedDiagram {
        StackedDiagram { blocks: self.blocks.clone(), bottom: cup.to_vec(), layers: self.layers.clone(), top: cap.to_vec() }
    }

    /// `−(up(Λ₀) + down(Λ₀))`.
    pub fn shift(&self) -> i64 {
        -((self.source().up() + self.source().down()) as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moves_parse_and_apply() {
        let m: Move = "+a2".parse().unwrap();
        let (g, l) = m.apply(&"**ox".parse().unwrap()).unwrap();
        assert_eq!(g.to_string(), "****");
        assert_eq!(g.ups, 2);
        assert_eq!(l.cups, vec![(2, 3)]);
        assert_eq!(l.strands, vec![(0, 0), (1, 1)]);
        assert!("+a2:1".parse::<Move>().unwrap().apply(&"**ox".parse().unwrap()).is_err());
        let (g, l) = "-a0".parse::<Move>().unwrap().apply(&"x*".parse().unwrap()).unwrap();
        assert_eq!(g.to_string(), "*x");
        assert_eq!(l.strands, vec![(1, 0)]);
        assert!("a0".parse::<Move>().is_err());
        assert_eq!("-a3:4".parse::<Move>().unwrap().to_string(), "-a3:4");
    }
}
