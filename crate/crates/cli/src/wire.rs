//! JSON shapes read and written by the command line.

use serde::{Deserialize, Serialize};

use arcalg::bimodule::Move;
use arcalg::diagram::{Layer, Pair};
use arcalg::genalg::Quiver;
use arcalg::homology::HomologyResult;
use arcalg::selftest::Report;

/// One term of an algebra element; `scalar` in the text syntax of the
/// coefficient ring, e.g. `"a e w^-1 + 2"`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Term {
    pub cup: Vec<Pair>,
    pub weight: String,
    pub cap: Vec<Pair>,
    pub scalar: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Element {
    pub block: String,
    pub terms: Vec<Term>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BasisEntry {
    pub index: usize,
    pub cup: Vec<Pair>,
    pub weight: String,
    pub cap: Vec<Pair>,
    pub degree: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Basis {
    pub block: String,
    pub rank: usize,
    pub basis: Vec<BasisEntry>,
}

/// A composite matching given by its source block and basic moves. Later
/// blocks are optional on input and checked when present.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Matching {
    pub blocks: Vec<String>,
    pub moves: Vec<Move>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LayerJson {
    pub caps: Vec<Pair>,
    pub cups: Vec<Pair>,
    pub strands: Vec<Pair>,
}

impl From<&Layer> for LayerJson {
    fn from(l: &Layer) -> Self {
        LayerJson { caps: l.caps.clone(), cups: l.cups.clone(), strands: l.strands.clone() }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BimoduleEntry {
    pub index: usize,
    pub cup: Vec<Pair>,
    pub weights: Vec<String>,
    pub cap: Vec<Pair>,
    pub degree: usize,
    pub shifted_degree: i64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BimoduleBasis {
    pub matching: Matching,
    pub shift: i64,
    pub rank: usize,
    pub basis: Vec<BimoduleEntry>,
}

/// `index` refers to the basis of the matching the term lives on.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BimoduleTerm {
    pub index: usize,
    pub cup: Vec<Pair>,
    pub weights: Vec<String>,
    pub cap: Vec<Pair>,
    pub scalar: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Action {
    pub matching: Matching,
    pub side: String,
    pub terms: Vec<BimoduleTerm>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ReverseProduct {
    pub matching: Matching,
    pub layer: usize,
    pub pair: Pair,
    pub blocks: Vec<String>,
    pub layers: Vec<LayerJson>,
    pub terms: Vec<BimoduleTerm>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub index: usize,
    pub diagram: String,
    pub coeff: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Coefficients {
    pub kind: String,
    pub matching: Matching,
    pub entries: Vec<CoeffEntry>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Suites {
    pub max_stars: usize,
    pub passed: bool,
    pub reports: Vec<Report>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QuiverOut {
    pub block: String,
    pub hull: usize,
    pub quiver: Quiver,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Homology {
    pub word: String,
    pub spec: String,
    pub eliminate: bool,
    pub result: HomologyResult,
}

/// Error report written to stderr.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ErrorOut {
    pub error: String,
    pub detail: String,
}
