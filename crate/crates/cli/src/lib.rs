//! The `arcalg` command line: flags, JSON I/O and the command runners.
//!
//! Every command produces one JSON document and an equivalent text form.
//! Flags are turned into typed values first; a failure there is a usage
//! error. Errors raised by the library afterwards are domain errors.

pub mod wire;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use arcalg::arcalg::{basis, mult_basis_with, surgery::accumulate, BasisDiagram};
use arcalg::bimodule::{act_left, act_right, bimodule_basis, rmult, BimoduleBasisDiagram, CompositeMatching, Move};
use arcalg::coeffmap::{basis_coeff, check_intertwine, state_coeff, CoeffKind};
use arcalg::diagram::{Block, Pair, Weight};
use arcalg::genalg::{m_hull, QuotientAlgebra};
use arcalg::homology::{homology, HomologyRing, MorseWord};
use arcalg::ring::{AlphaImage, Coefficient, GaussPoly, OmegaImage, Specialization, SymbolicScalar};
use arcalg::selftest::{self, Report, Scope};
use arcalg::Error;
use wire::*;

#[derive(Parser, Debug)]
#[command(name = "arcalg", version, about = "Signed arc algebras, arc bimodules and Khovanov cube complexes")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub out: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Basis of the arc algebra of a block.
    Basis {
        #[arg(long)]
        block: String,
    },
    /// Product of two elements.
    Mult {
        #[arg(long)]
        block: String,
        /// Element JSON or a basis index.
        #[arg(long)]
        x: String,
        /// Element JSON or a basis index.
        #[arg(long)]
        y: String,
        #[arg(long, default_value = "generic")]
        spec: String,
        /// Fail on reflected C-shape surgeries.
        #[arg(long)]
        strict: bool,
    },
    /// Basis of the bimodule of a composite matching.
    BimodBasis(MatchingArgs),
    /// Left or right action of an algebra element on a bimodule element.
    Act {
        #[command(flatten)]
        matching: MatchingArgs,
        #[arg(long, value_enum)]
        side: Side,
        /// Algebra element JSON or basis index, on the source block for
        /// `left` and on the target block for `right`.
        #[arg(long)]
        a: String,
        /// Bimodule basis index.
        #[arg(long)]
        x: usize,
    },
    /// Reverse surgery at a pair of vertical strands.
    Rmult {
        #[command(flatten)]
        matching: MatchingArgs,
        #[arg(long)]
        layer: usize,
        /// Strand indices `i,j` in the block below the layer.
        #[arg(long)]
        pair: String,
        /// Bimodule basis index.
        #[arg(long)]
        x: usize,
    },
    /// Coefficient map on every basis diagram.
    Coeff {
        #[arg(long, value_enum, default_value_t = Kind::Algebra)]
        kind: Kind,
        #[command(flatten)]
        matching: MatchingArgs,
    },
    /// Exhaustive intertwining and isomorphism checks.
    IsoCheck {
        #[arg(long, value_enum, default_value_t = Kind::Algebra)]
        kind: Kind,
        #[arg(long, default_value_t = 3)]
        max_stars: usize,
        /// Specializations compared with the first, for `--kind algebra`.
        #[arg(long, default_value = "kbn,bl,ca")]
        specs: String,
    },
    /// Quiver and relations of the generalized algebra.
    Quiver {
        #[arg(long)]
        block: String,
        /// Hull radius m.
        #[arg(long)]
        hull: usize,
        #[arg(long, default_value = "0,e,w")]
        spec: String,
    },
    /// Graded homology of a closed Morse word or braid closure.
    Homology {
        #[arg(long, conflicts_with = "braid", required_unless_present = "braid")]
        morse: Option<String>,
        /// Braid word, e.g. "1 1 1" or "1 -2 1 -2".
        #[arg(long, requires = "strands")]
        braid: Option<String>,
        #[arg(long)]
        strands: Option<usize>,
        /// Specialization; a generic α is sent to 0.
        #[arg(long, default_value = "kbn")]
        spec: String,
        #[arg(long, value_enum, default_value_t = RingArg::Q)]
        ring: RingArg,
        /// Reduce the complex by Gaussian elimination first.
        #[arg(long)]
        eliminate: bool,
    },
    /// All property suites.
    Selftest {
        #[arg(long, default_value_t = 3)]
        max_stars: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct MatchingArgs {
    /// Source block, optionally followed by the expected later blocks.
    #[arg(long, alias = "block", value_delimiter = ',', required_unless_present = "matching")]
    pub blocks: Vec<String>,
    /// Basic moves, e.g. "+a2,-a0".
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub moves: Vec<String>,
    /// Matching JSON `{"blocks":[...],"moves":[...]}` instead of the two flags above.
    #[arg(long, conflicts_with_all = ["blocks", "moves"])]
    pub matching: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Kind {
    Algebra,
    Bimodule,
    Reverse,
}

impl From<Kind> for CoeffKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Algebra => CoeffKind::Algebra,
            Kind::Bimodule => CoeffKind::Bimodule,
            Kind::Reverse => CoeffKind::Reverse,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum RingArg {
    Q,
    Z,
    Zi,
    Qi,
}

impl From<RingArg> for HomologyRing {
    fn from(r: RingArg) -> Self {
        match r {
            RingArg::Q => HomologyRing::Q,
            RingArg::Z => HomologyRing::Z,
            RingArg::Zi => HomologyRing::ZI,
            RingArg::Qi => HomologyRing::QI,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(Error),
    /// A suite ran and reported failures; the report is still printed.
    Failed(Output),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Failed(_) => 1,
        }
    }

    pub fn to_json(&self) -> String {
        let e = match self {
            CliError::Usage(m) => ErrorOut { error: "Usage".into(), detail: m.clone() },
            CliError::Domain(e) => {
                let v = serde_json::to_value(e).expect("errors serialize");
                ErrorOut {
                    error: v["error"].as_str().unwrap_or("Error").to_string(),
                    detail: v["detail"].as_str().unwrap_or_default().to_string(),
                }
            }
            CliError::Failed(_) => ErrorOut { error: "CheckFailed".into(), detail: "at least one suite failed".into() },
        };
        serde_json::to_string(&e).expect("plain struct")
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(r: arcalg::Result<T>) -> CliResult<T> {
    r.map_err(|e| CliError::Usage(e.to_string()))
}

/// Rendered output of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub json: String,
    pub text: String,
}

impl Output {
    fn new<T: Serialize>(value: &T, text: String) -> Self {
        Output { json: serde_json::to_string(value).expect("wire types serialize"), text }
    }

    pub fn render(&self, f: Format) -> &str {
        match f {
            Format::Json => &self.json,
            Format::Text => &self.text,
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Basis { block } => cmd_basis(&usage(block.parse())?),
        Command::Mult { block, x, y, spec, strict } => {
            let block: Block = usage(block.parse())?;
            let bs = basis(&block);
            let x = parse_element(x, &block, &bs)?;
            let y = parse_element(y, &block, &bs)?;
            cmd_mult(&block, &x, &y, &usage(spec.parse())?, *strict)
        }
        Command::BimodBasis(m) => cmd_bimod_basis(&parse_matching(m)?),
        Command::Act { matching, side, a, x } => {
            let (wm, m) = parse_matching(matching)?;
            let block = if *side == Side::Left { m.source().clone() } else { m.target().clone() };
            let a = parse_element(a, &block, &basis(&block))?;
            cmd_act(&wm, &m, *side, &a, *x)
        }
        Command::Rmult { matching, layer, pair, x } => cmd_rmult(&parse_matching(matching)?, *layer, parse_pair(pair)?, *x),
        Command::Coeff { kind, matching } => cmd_coeff((*kind).into(), &parse_matching(matching)?),
        Command::IsoCheck { kind, max_stars, specs } => {
            let specs = specs.split(',').map(|s| usage(s.trim().parse())).collect::<CliResult<Vec<Specialization>>>()?;
            if specs.is_empty() {
                return Err(CliError::Usage("--specs is empty".into()));
            }
            cmd_iso_check((*kind).into(), *max_stars, &specs)
        }
        Command::Quiver { block, hull, spec } => cmd_quiver(block, &usage(block.parse())?, *hull, &usage(spec.parse())?),
        Command::Homology { morse, braid, strands, spec, ring, eliminate } => {
            let w = match (morse, braid) {
                (Some(m), _) => usage(m.parse::<MorseWord>())?,
                (None, Some(b)) => {
                    let gens = b
                        .split(|c: char| c.is_whitespace() || c == ',')
                        .filter(|s| !s.is_empty())
                        .map(|s| s.parse::<i64>().map_err(|_| CliError::Usage(format!("bad braid generator {s:?}"))))
                        .collect::<CliResult<Vec<_>>>()?;
                    usage(MorseWord::braid_closure(&gens, strands.unwrap_or(0)))?
                }
                (None, None) => return Err(CliError::Usage("one of --morse or --braid is required".into())),
            };
            let mut spec: Specialization = usage(spec.parse())?;
            if spec.alpha == AlphaImage::Generic {
                spec = spec.with_alpha(0);
            }
            cmd_homology(&w, &spec, (*ring).into(), *eliminate)
        }
        Command::Selftest { max_stars } => cmd_selftest(*max_stars),
    }
}

fn parse_pair(s: &str) -> CliResult<Pair> {
    let bad = || CliError::Usage(format!("bad pair {s:?}; expected i,j"));
    let (i, j) = s.split_once(',').ok_or_else(bad)?;
    Ok((i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?))
}

/// Basis index or element JSON, checked against the basis of `block`.
fn parse_element(s: &str, block: &Block, bs: &[BasisDiagram]) -> CliResult<Vec<(BasisDiagram, SymbolicScalar)>> {
    if let Ok(i) = s.trim().parse::<usize>() {
        let d = bs.get(i).ok_or_else(|| CliError::Usage(format!("basis index {i} out of range 0..{}", bs.len())))?;
        return Ok(vec![(d.clone(), SymbolicScalar::one())]);
    }
    let e: Element = serde_json::from_str(s).map_err(|e| CliError::Usage(format!("bad element JSON: {e}")))?;
    if e.block != block.to_string() {
        return Err(Error::BlockMismatch(format!("element on {} used on {block}", e.block)).into());
    }
    let mut out = Vec::new();
    for t in e.terms {
        let d = BasisDiagram { cup: t.cup, weight: usage(t.weight.parse::<Weight>())?, cap: t.cap };
        if !bs.contains(&d) {
            return Err(Error::InvalidDiagram(format!("{d} is not a basis diagram of {block}")).into());
        }
        out.push((d, usage(t.scalar.parse())?));
    }
    Ok(out)
}

fn parse_matching(a: &MatchingArgs) -> CliResult<(Matching, CompositeMatching)> {
    let wm = match &a.matching {
        Some(j) => serde_json::from_str::<Matching>(j).map_err(|e| CliError::Usage(format!("bad matching JSON: {e}")))?,
        None => {
            let moves = a.moves.iter().filter(|m| !m.trim().is_empty()).map(|m| usage(m.parse::<Move>())).collect::<CliResult<Vec<_>>>()?;
            Matching { blocks: a.blocks.clone(), moves }
        }
    };
    let source: Block = usage(wm.blocks.first().ok_or_else(|| Error::Parse("no source block".into())).and_then(|b| b.parse()))?;
    let m = CompositeMatching::from_moves(source, &wm.moves)?;
    for (k, b) in wm.blocks.iter().enumerate().skip(1) {
        let have = m.blocks.get(k).map(|x| x.to_string());
        if have.as_deref() != Some(usage(b.parse::<Block>())?.to_string().as_str()) {
            return Err(Error::BlockMismatch(format!("block {k} is {}, not {b}", have.unwrap_or_else(|| "missing".into()))).into());
        }
    }
    let all = Matching { blocks: m.blocks.iter().map(|b| b.to_string()).collect(), moves: wm.moves };
    Ok((all, m))
}

fn cmd_basis(block: &Block) -> CliResult<Output> {
    let bs = basis(block);
    let entries: Vec<BasisEntry> = bs
        .iter()
        .enumerate()
        .map(|(index, d)| BasisEntry { index, cup: d.cup.clone(), weight: d.weight.to_string(), cap: d.cap.clone(), degree: d.degree() })
        .collect();
    let mut text = format!("block {block}: rank {}\n", bs.len());
    for (e, d) in entries.iter().zip(&bs) {
        let _ = writeln!(text, "{}\tdeg {}\t{d}", e.index, e.degree);
    }
    Ok(Output::new(&Basis { block: block.to_string(), rank: bs.len(), basis: entries }, text))
}

/// Coefficients shown in the specialized ring: ℤ[α, i] when ω goes to ±i,
/// the symbolic ring otherwise.
fn specialized(spec: &Specialization, c: &SymbolicScalar) -> arcalg::Result<Option<String>> {
    if matches!(spec.omega, OmegaImage::I | OmegaImage::MinusI) {
        let v: GaussPoly = spec.apply(c)?;
        Ok((!v.is_zero()).then(|| v.to_string()))
    } else {
        let v: SymbolicScalar = spec.apply(c)?;
        Ok((!v.is_zero()).then(|| v.to_string()))
    }
}

fn cmd_mult(
    block: &Block,
    x: &[(BasisDiagram, SymbolicScalar)],
    y: &[(BasisDiagram, SymbolicScalar)],
    spec: &Specialization,
    strict: bool,
) -> CliResult<Output> {
    let mut acc: BTreeMap<BasisDiagram, SymbolicScalar> = BTreeMap::new();
    for (a, ca) in x {
        for (b, cb) in y {
            for (z, c) in mult_basis_with(a, b, strict)? {
                accumulate(&mut acc, z, ca.mul(cb).mul(&c));
            }
        }
    }
    let mut terms = Vec::new();
    for (d, c) in &acc {
        if let Some(s) = specialized(spec, c)? {
            terms.push(Term { cup: d.cup.clone(), weight: d.weight.to_string(), cap: d.cap.clone(), scalar: s });
        }
    }
    let text = element_text(&terms);
    Ok(Output::new(&Element { block: block.to_string(), terms }, text))
}

fn element_text(terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0\n".into();
    }
    terms.iter().map(|t| format!("{}\t{:?} {} {:?}\n", t.scalar, t.cup, t.weight, t.cap)).collect()
}

fn bimodule_entries(m: &CompositeMatching) -> CliResult<(Vec<BimoduleBasisDiagram>, Vec<BimoduleEntry>)> {
    let bs = bimodule_basis(m)?;
    let entries = bs
        .iter()
        .enumerate()
        .map(|(index, x)| BimoduleEntry {
            index,
            cup: x.cup.clone(),
            weights: x.weights.iter().map(|w| w.to_string()).collect(),
            cap: x.cap.clone(),
            degree: x.degree(m),
            shifted_degree: x.shifted_degree(m),
        })
        .collect();
    Ok((bs, entries))
}

fn cmd_bimod_basis((wm, m): &(Matching, CompositeMatching)) -> CliResult<Output> {
    let (bs, entries) = bimodule_entries(m)?;
    let mut text = format!("blocks {}: rank {}, shift {}\n", wm.blocks.join(" -> "), bs.len(), m.shift());
    for (e, x) in entries.iter().zip(&bs) {
        let _ = writeln!(text, "{}\tdeg {}\t{x}", e.index, e.degree);
    }
    Ok(Output::new(&BimoduleBasis { matching: wm.clone(), shift: m.shift(), rank: bs.len(), basis: entries }, text))
}

fn bimodule_terms(basis: &[BimoduleBasisDiagram], acc: &BTreeMap<BimoduleBasisDiagram, SymbolicScalar>) -> Vec<BimoduleTerm> {
    acc.iter()
        .map(|(z, c)| BimoduleTerm {
            index: basis.iter().position(|b| b == z).expect("result lies in the basis"),
            cup: z.cup.clone(),
            weights: z.weights.iter().map(|w| w.to_string()).collect(),
            cap: z.cap.clone(),
            scalar: c.to_string(),
        })
        .collect()
}

fn bimodule_text(terms: &[BimoduleTerm]) -> String {
    if terms.is_empty() {
        return "0\n".into();
    }
    terms.iter().map(|t| format!("{}\t#{} {:?} {} {:?}\n", t.scalar, t.index, t.cup, t.weights.join("|"), t.cap)).collect()
}

fn pick(bs: &[BimoduleBasisDiagram], x: usize) -> CliResult<&BimoduleBasisDiagram> {
    bs.get(x).ok_or_else(|| CliError::Usage(format!("bimodule basis index {x} out of range 0..{}", bs.len())))
}

fn cmd_act(wm: &Matching, m: &CompositeMatching, side: Side, a: &[(BasisDiagram, SymbolicScalar)], x: usize) -> CliResult<Output> {
    let bs = bimodule_basis(m)?;
    let x = pick(&bs, x)?;
    let mut acc = BTreeMap::new();
    for (d, c) in a {
        let out = match side {
            Side::Left => act_left(d, m, x)?,
            Side::Right => act_right(m, x, d)?,
        };
        for (z, k) in out {
            accumulate(&mut acc, z, c.mul(&k));
        }
    }
    let terms = bimodule_terms(&bs, &acc);
    let text = bimodule_text(&terms);
    let side = if side == Side::Left { "left" } else { "right" };
    Ok(Output::new(&Action { matching: wm.clone(), side: side.into(), terms }, text))
}

fn cmd_rmult((wm, m): &(Matching, CompositeMatching), layer: usize, pair: Pair, x: usize) -> CliResult<Output> {
    let bs = bimodule_basis(m)?;
    let x = pick(&bs, x)?;
    let (m2, out) = rmult(m, x, layer, pair)?;
    let target = bimodule_basis(&m2)?;
    let mut acc = BTreeMap::new();
    for (z, c) in out {
        accumulate(&mut acc, z, c);
    }
    let terms = bimodule_terms(&target, &acc);
    let text = bimodule_text(&terms);
    let r = ReverseProduct {
        matching: wm.clone(),
        layer,
        pair,
        blocks: m2.blocks.iter().map(|b| b.to_string()).collect(),
        layers: m2.layers.iter().map(LayerJson::from).collect(),
        terms,
    };
    Ok(Output::new(&r, text))
}

fn cmd_coeff(kind: CoeffKind, (wm, m): &(Matching, CompositeMatching)) -> CliResult<Output> {
    let mut entries = Vec::new();
    if kind == CoeffKind::Algebra {
        if !m.layers.is_empty() {
            return Err(CliError::Usage("--kind algebra takes a single block and no moves".into()));
        }
        for (index, d) in basis(m.source()).iter().enumerate() {
            entries.push(CoeffEntry { index, diagram: d.to_string(), coeff: basis_coeff(kind, d).to_string() });
        }
    } else {
        for (index, x) in bimodule_basis(m)?.iter().enumerate() {
            let d = x.diagram(m);
            let c = state_coeff(kind, &d, &d.components()?, &x.weights);
            entries.push(CoeffEntry { index, diagram: x.to_string(), coeff: c.to_string() });
        }
    }
    let text = entries.iter().map(|e| format!("{}\t{}\t{}\n", e.index, e.coeff, e.diagram)).collect();
    let kind = format!("{kind:?}").to_lowercase();
    Ok(Output::new(&Coefficients { kind, matching: wm.clone(), entries }, text))
}

fn suites(max_stars: usize, reports: Vec<Report>) -> CliResult<Output> {
    let passed = reports.iter().all(Report::passed);
    let text = reports.iter().map(|r| format!("{r}\n")).collect();
    let out = Output::new(&Suites { max_stars, passed, reports }, text);
    if passed {
        Ok(out)
    } else {
        Err(CliError::Failed(out))
    }
}

fn cmd_iso_check(kind: CoeffKind, max_stars: usize, specs: &[Specialization]) -> CliResult<Output> {
    let scope = Scope::new(max_stars);
    let mut reports = vec![check_intertwine(kind, &scope)];
    if kind == CoeffKind::Algebra {
        for t in &specs[1..] {
            if specs[0].alpha != t.alpha {
                return Err(Error::CheckFailed(format!("{} and {t} specialize alpha differently", specs[0])).into());
            }
            reports.push(selftest::iso_multiplicative::<GaussPoly>(&scope, &specs[0], t));
            reports.push(selftest::iso_multiplicative::<GaussPoly>(&scope, t, &specs[0]));
        }
    }
    suites(max_stars, reports)
}

fn cmd_quiver(name: &str, block: &Block, m: usize, spec: &Specialization) -> CliResult<Output> {
    let q = QuotientAlgebra::new(m_hull(block, m)?, spec.clone())?.quiver()?;
    let mut text = format!("quiver of {name} with m = {m} under {}\n", q.spec);
    let _ = writeln!(text, "basis ({}):", q.basis.len());
    for (n, d) in &q.basis {
        let _ = writeln!(text, "  {n}\tdeg {d}");
    }
    let _ = writeln!(text, "vertices: {}", q.vertices.iter().map(|v| v.name.as_str()).collect::<Vec<_>>().join(", "));
    for a in &q.arrows {
        let _ = writeln!(text, "arrow {}: {} -> {}", a.name, a.source, a.target);
    }
    for r in &q.relations {
        let value = if r.value.is_empty() {
            "0".to_string()
        } else {
            r.value.iter().map(|(c, x)| format!("{c} {x}")).collect::<Vec<_>>().join(" + ")
        };
        let _ = writeln!(text, "{} * {} = {value}", r.left, r.right);
    }
    Ok(Output::new(&QuiverOut { block: name.to_string(), hull: m, quiver: q }, text))
}

fn cmd_homology(w: &MorseWord, spec: &Specialization, ring: HomologyRing, eliminate: bool) -> CliResult<Output> {
    let result = homology(w, spec, ring, eliminate)?;
    let text = format!("{w} under {spec} over {ring}\n{result}");
    Ok(Output::new(&Homology { word: w.to_string(), spec: spec.to_string(), eliminate, result }, text))
}

fn cmd_selftest(max_stars: usize) -> CliResult<Output> {
    suites(max_stars, selftest::run_all(&Scope::new(max_stars)))
}

/// Caps the worker pool at `ARCALG_THREADS` when set.
pub fn init_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("ARCALG_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Usage(format!("ARCALG_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Usage(e.to_string()))
}
