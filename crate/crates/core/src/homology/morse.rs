use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{Block, Layer, StackedDiagram};
use crate::error::{Error, Result};

/// One generator of a tangle diagram, read bottom to top.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Token {
    /// New strands at positions `i, i + 1`.
    Cup(usize),
    /// Strands `i, i + 1` close up.
    Cap(usize),
    PosCross(usize),
    NegCross(usize),
}

impl Token {
    pub fn is_crossing(self) -> bool {
        matches!(self, Token::PosCross(_) | Token::NegCross(_))
    }

    fn index(self) -> usize {
        match self {
            Token::Cup(i) | Token::Cap(i) | Token::PosCross(i) | Token::NegCross(i) => i,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Cup(i) => write!(f, "u{i}"),
            Token::Cap(i) => write!(f, "n{i}"),
            Token::PosCross(i) => write!(f, "x+{i}"),
            Token::NegCross(i) => write!(f, "x-{i}"),
        }
    }
}

impl FromStr for Token {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad Morse token {s:?}"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if let Some(r) = s.strip_prefix("x+") {
            Ok(Token::PosCross(num(r)?))
        } else if let Some(r) = s.strip_prefix("x-") {
            Ok(Token::NegCross(num(r)?))
        } else if let Some(r) = s.strip_prefix('u') {
            Ok(Token::Cup(num(r)?))
        } else if let Some(r) = s.strip_prefix('n') {
            Ok(Token::Cap(num(r)?))
        } else {
            Err(bad())
        }
    }
}

/// A tangle diagram as a word in cups, caps and crossings.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct MorseWord {
    /// Strands entering at the bottom.
    pub inputs: usize,
    pub tokens: Vec<Token>,
}

impl MorseWord {
    pub fn new(tokens: Vec<Token>) -> Result<Self> {
        let w = MorseWord { inputs: 0, tokens };
        w.strand_counts()?;
        Ok(w)
    }

    /// Strand count below each token and after the last one.
    pub fn strand_counts(&self) -> Result<Vec<usize>> {
        if self.inputs % 2 == 1 {
            return Err(Error::Parse(format!("odd number of inputs {}", self.inputs)));
        }
        let mut n = self.inputs;
        let mut out = vec![n];
        for (k, t) in self.tokens.iter().enumerate() {
            let i = t.index();
            let ok = match t {
                Token::Cup(_) => i <= n,
                _ => i + 1 < n,
            };
            if !ok {
                return Err(Error::Parse(format!("token {k} ({t}) does not fit {n} strands")));
            }
            match t {
                Token::Cup(_) => n += 2,
                Token::Cap(_) => n -= 2,
                _ => {}
            }
            out.push(n);
        }
        Ok(out)
    }

    pub fn outputs(&self) -> usize {
        *self.strand_counts().expect("validated word").last().unwrap()
    }

    pub fn is_closed(&self) -> bool {
        self.inputs == 0 && self.outputs() == 0
    }

    /// Token indices of the crossings, with `true` for `x+` tokens.
    pub fn crossings(&self) -> Vec<(usize, bool)> {
        self.tokens.iter().enumerate().filter(|(_, t)| t.is_crossing()).map(|(k, t)| (k, matches!(t, Token::PosCross(_)))).collect()
    }

    /// Closure of a braid on `strands` strands. Generator `k` crosses strands `k - 1`
    /// and `k` positively, `-k` negatively. Strand `k` returns on the right
    /// through nested cups and caps.
    pub fn braid_closure(word: &[i64], strands: usize) -> Result<Self> {
        let mut tokens: Vec<Token> = (0..strands).map(Token::Cup).collect();
        for &g in word {
            let k = g.unsigned_abs() as usize;
            if k == 0 || k >= strands {
                return Err(Error::Parse(format!("braid generator {g} on {strands} strands")));
            }
            tokens.push(if g > 0 { Token::PosCross(k - 1) } else { Token::NegCross(k - 1) });
        }
        tokens.extend((0..strands).rev().map(Token::Cap));
        Self::new(tokens)
    }

    /// Sign of every crossing, reading `x+` as the positive crossing of two
    /// upward strands. Components are oriented to make as many crossings
    /// as possible join co-oriented strands; ties go to the orientation
    /// leaving each lowest-leftmost point upwards.
    pub fn crossing_signs(&self) -> Result<Vec<bool>> {
        if !self.is_closed() {
            return Err(Error::NotClosed(self.to_string()));
        }
        let counts = self.strand_counts()?;
        // up[level][pos]: neighbour through the layer above; down: below
        let mut up: Vec<Vec<(usize, usize)>> = counts.iter().map(|&n| vec![(0, 0); n]).collect();
        let mut down = up.clone();
        for (k, t) in self.tokens.iter().enumerate() {
            let n = counts[k];
            let mut link = |a: (usize, usize), b: (usize, usize)| {
                for (p, o) in [(a, b), (b, a)] {
                    if p.0 == k {
                        up[p.0][p.1] = o;
                    } else {
                        down[p.0][p.1] = o;
                    }
                }
            };
            match *t {
                Token::Cup(i) => {
                    link((k + 1, i), (k + 1, i + 1));
                    for j in 0..n {
                        link((k, j), (k + 1, if j < i { j } else { j + 2 }));
                    }
                }
                Token::Cap(i) => {
                    link((k, i), (k, i + 1));
                    for j in (0..n).filter(|j| *j != i && *j != i + 1) {
                        link((k, j), (k + 1, if j < i { j } else { j - 2 }));
                    }
                }
                Token::PosCross(i) | Token::NegCross(i) => {
                    for j in (0..n).filter(|j| *j != i && *j != i + 1) {
                        link((k, j), (k + 1, j));
                    }
                    link((k, i), (k + 1, i + 1));
                    link((k, i + 1), (k + 1, i));
                }
            }
        }
        // upward[k][j]: the arc leaving (k, j) into layer k is run upwards
        let mut upward: Vec<Vec<Option<bool>>> = counts.iter().map(|&n| vec![None; n]).collect();
        let mut comp: Vec<Vec<Option<usize>>> = counts.iter().map(|&n| vec![None; n]).collect();
        let mut n_comp = 0;
        for k0 in 0..counts.len() {
            for j0 in 0..counts[k0] {
                if comp[k0][j0].is_some() {
                    continue;
                }
                let (mut p, mut going_up) = ((k0, j0), true);
                loop {
                    comp[p.0][p.1] = Some(n_comp);
                    let q = if going_up { up[p.0][p.1] } else { down[p.0][p.1] };
                    if going_up && q.0 == p.0 + 1 {
                        upward[p.0][p.1] = Some(true);
                    } else if !going_up && q.0 + 1 == p.0 {
                        upward[q.0][q.1] = Some(false);
                    }
                    // arriving from below leaves upwards, and vice versa
                    going_up = if q.0 == p.0 { !going_up } else { going_up };
                    p = q;
                    if p == (k0, j0) {
                        break;
                    }
                }
                n_comp += 1;
            }
        }
        // (component, component, co-oriented, x+) per crossing
        let arms: Vec<(usize, usize, bool, bool)> = self
            .crossings()
            .into_iter()
            .map(|(k, positive)| {
                let i = self.tokens[k].index();
                (comp[k][i].unwrap(), comp[k][i + 1].unwrap(), upward[k][i] == upward[k][i + 1], positive)
            })
            .collect();
        let flips_for = |f: u64| arms.iter().map(move |&(a, b, same, _)| same ^ (f >> a & 1 == 1) ^ (f >> b & 1 == 1));
        let best = if n_comp <= 16 {
            (0..1u64 << n_comp.saturating_sub(1))
                .max_by_key(|&f| (flips_for(f << 1).filter(|x| *x).count(), std::cmp::Reverse(f)))
                .unwrap_or(0)
                << 1
        } else {
            0
        };
        Ok(flips_for(best).zip(&arms).map(|(same, a)| a.3 == same).collect())
    }

    /// Every crossing replaced by its smoothing for `resolution`: bit `c`
    /// of the mask belongs to crossing `c`. Returns the diagram with the
    /// homological and quantum shifts.
    pub fn resolve(&self, resolution: u64) -> Result<Resolved> {
        if !self.is_closed() {
            return Err(Error::NotClosed(format!("{self} has {} inputs and {} outputs", self.inputs, self.outputs())));
        }
        let counts = self.strand_counts()?;
        let signs = self.crossing_signs()?;
        let blocks: Vec<Block> = counts.iter().map(|&n| Block::stars(n)).collect();
        let mut layers = Vec::new();
        let (mut h, mut q) = (0i64, 0i64);
        let mut c = 0;
        for (k, t) in self.tokens.iter().enumerate() {
            let n = counts[k];
            let mut l = Layer::default();
            match *t {
                Token::Cup(i) => {
                    l.cups.push((i, i + 1));
                    l.strands = (0..n).map(|j| (j, if j < i { j } else { j + 2 })).collect();
                }
                Token::Cap(i) => {
                    l.caps.push((i, i + 1));
                    l.strands = (0..n).filter(|j| *j != i && *j != i + 1).map(|j| (j, if j < i { j } else { j - 2 })).collect();
                }
                Token::PosCross(i) | Token::NegCross(i) => {
                    let bit = resolution >> c & 1 == 1;
                    let positive = signs[c];
                    c += 1;
                    let smoothing = bit == matches!(t, Token::PosCross(_));
                    if smoothing {
                        l.caps.push((i, i + 1));
                        l.cups.push((i, i + 1));
                        l.strands = (0..n).filter(|j| *j != i && *j != i + 1).map(|j| (j, j)).collect();
                    } else {
                        l.strands = (0..n).map(|j| (j, j)).collect();
                    }
                    h += bit as i64;
                    q += match (positive, bit) {
                        (true, false) => 1,
                        (true, true) => 2,
                        (false, false) => -2,
                        (false, true) => -1,
                    };
                    if !positive {
                        h -= 1;
                    }
                }
            }
            layers.push(l);
        }
        let diagram = StackedDiagram { blocks, bottom: Vec::new(), layers, top: Vec::new() };
        Ok(Resolved { diagram, h, q_shift: q })
    }
}

/// A resolved closed diagram: disjoint circles and the shifts of its cube vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Resolved {
    pub diagram: StackedDiagram,
    pub h: i64,
    pub q_shift: i64,
}

impl fmt::Display for MorseWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ts: Vec<String> = self.tokens.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", ts.join(" "))
    }
}

/// Whitespace-separated tokens `u<i>`, `n<i>`, `x+<i>`, `x-<i>`.
impl FromStr for MorseWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = s.split_whitespace().map(str::parse).collect::<Result<Vec<Token>>>()?;
        Self::new(tokens)
    }
}
