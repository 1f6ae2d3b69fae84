//! JSON documents for compiled systems.
//!
//! One document holds one level. Every integer is written as a decimal
//! string so that sizes are unbounded; ring elements are arrays of their
//! power-basis coordinates.
//!
//! ```json
//! {
//!   "level": "integer",
//!   "n": 2,
//!   "dimension": 36,
//!   "ring": { "min_poly": ["-2", "0", "1"], "degree": 2, "generator": "g" },
//!   "vars": ["l1", "l2"],
//!   "matrices": [[["1", "2", ...], ...], ...],
//!   "initial": ["1", "0", ...],
//!   "target_rows": [["0", ...], ...]
//! }
//! ```
//!
//! Torus documents additionally carry `point` (the start point as
//! `{num, den}` pairs) and `characters`; ring documents carry the block
//! layout under `blocks`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::descent::IntegerLinearSystem;
use crate::encoder::{Block, BlockKind, PlacedBlock, RingLinearSystem, WeightVector};
use crate::matrix::{IntMatrix, RingMatrix};
use crate::pipeline::Compiled;
use crate::ring::{RingElement, RingError, RingSpec};
use crate::torus::{TorusEndomorphism, TorusError, TorusPoint, TorusSubgroup, TorusSystem};
use crate::verify::{self, BoxRegion, Level, Membership, TupleSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("malformed JSON document: {0}")]
    Json(String),
    #[error("invalid integer `{0}`")]
    Integer(String),
    #[error("inconsistent document: {0}")]
    Shape(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Torus(#[from] TorusError),
}

type DocResult<T> = Result<T, DocumentError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingInfo {
    pub min_poly: Vec<String>,
    pub degree: usize,
    pub generator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDocument {
    pub equation: usize,
    pub offset: usize,
    pub size: usize,
    pub coeff: Vec<String>,
    #[serde(flatten)]
    pub kind: BlockKindDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BlockKindDocument {
    Exponential {
        j: Vec<u32>,
        bases: Vec<Vec<String>>,
        weights: Vec<usize>,
        primes: Vec<usize>,
    },
    Linear {
        coeffs: Vec<Vec<String>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDocument {
    pub n: usize,
    pub dimension: usize,
    pub ring: RingInfo,
    pub vars: Vec<String>,
    pub matrices: Vec<Vec<Vec<Vec<String>>>>,
    pub initial: Vec<Vec<String>>,
    pub target_rows: Vec<Vec<Vec<String>>>,
    pub blocks: Vec<BlockDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerDocument {
    pub n: usize,
    pub dimension: usize,
    pub ring: RingInfo,
    pub vars: Vec<String>,
    pub matrices: Vec<Vec<Vec<String>>>,
    pub initial: Vec<String>,
    pub target_rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDocument {
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusDocument {
    pub n: usize,
    pub dimension: usize,
    pub ring: RingInfo,
    pub vars: Vec<String>,
    /// Exponent matrices of the endomorphisms.
    pub matrices: Vec<Vec<Vec<String>>>,
    /// Exponent seed `a` with `point = 2^a`.
    pub initial: Vec<String>,
    pub target_rows: Vec<Vec<String>>,
    pub point: Vec<RationalDocument>,
    pub characters: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "level", rename_all = "lowercase")]
pub enum SystemDocument {
    Ring(RingDocument),
    Integer(IntegerDocument),
    Torus(TorusDocument),
}

/// Which compiled level to write.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputLevel {
    Ring,
    Integer,
    Torus,
}

impl std::str::FromStr for OutputLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ring" => Ok(Self::Ring),
            "integer" => Ok(Self::Integer),
            "torus" => Ok(Self::Torus),
            other => Err(format!("unknown level `{other}`; expected ring, integer or torus")),
        }
    }
}

fn ints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn elem(x: &RingElement) -> Vec<String> {
    ints(x.coords())
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    m.row_iter().map(ints).collect()
}

fn ring_rows(m: &RingMatrix) -> Vec<Vec<Vec<String>>> {
    m.row_iter().map(|r| r.iter().map(elem).collect()).collect()
}

fn ring_info(ring: &RingSpec) -> RingInfo {
    RingInfo {
        min_poly: ints(ring.min_poly()),
        degree: ring.degree(),
        generator: ring.generator_name().to_string(),
    }
}

pub fn to_document(compiled: &Compiled, level: OutputLevel) -> SystemDocument {
    let ring = ring_info(&compiled.source.ring);
    let vars = compiled.source.vars.clone();
    let n = compiled.nvars();
    match level {
        OutputLevel::Ring => {
            let sys = &compiled.ring;
            SystemDocument::Ring(RingDocument {
                n,
                dimension: sys.rank(),
                ring,
                vars,
                matrices: sys.psi.iter().map(ring_rows).collect(),
                initial: sys.initial.iter().map(elem).collect(),
                target_rows: ring_rows(&sys.theta),
                blocks: sys.blocks.iter().map(block_document).collect(),
            })
        }
        OutputLevel::Integer => {
            let sys = &compiled.integer;
            SystemDocument::Integer(IntegerDocument {
                n,
                dimension: sys.rank(),
                ring,
                vars,
                matrices: sys.phi.iter().map(int_rows).collect(),
                initial: ints(&sys.initial),
                target_rows: int_rows(&sys.target),
            })
        }
        OutputLevel::Torus => {
            let sys = &compiled.torus;
            let characters = int_rows(&sys.target.characters);
            SystemDocument::Torus(TorusDocument {
                n,
                dimension: sys.dimension(),
                ring,
                vars,
                matrices: sys.endos.iter().map(|e| int_rows(&e.exponents)).collect(),
                initial: ints(&sys.exponent_seed),
                target_rows: characters.clone(),
                point: sys
                    .start
                    .coords()
                    .iter()
                    .map(|q| RationalDocument {
                        num: q.numer().to_string(),
                        den: q.denom().to_string(),
                    })
                    .collect(),
                characters,
            })
        }
    }
}

fn block_document(b: &PlacedBlock) -> BlockDocument {
    let kind = match &b.block.kind {
        BlockKind::Exponential { j, bases, weights } => BlockKindDocument::Exponential {
            j: j.clone(),
            bases: bases.iter().map(elem).collect(),
            weights: weights.weights.clone(),
            primes: weights.primes.clone(),
        },
        BlockKind::Linear { coeffs } => BlockKindDocument::Linear {
            coeffs: coeffs.iter().map(elem).collect(),
        },
    };
    BlockDocument {
        equation: b.equation,
        offset: b.offset,
        size: b.block.size,
        coeff: elem(&b.coeff),
        kind,
    }
}

impl SystemDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> DocResult<Self> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))
    }

    pub fn level(&self) -> OutputLevel {
        match self {
            SystemDocument::Ring(_) => OutputLevel::Ring,
            SystemDocument::Integer(_) => OutputLevel::Integer,
            SystemDocument::Torus(_) => OutputLevel::Torus,
        }
    }

    pub fn load(&self) -> DocResult<LoadedSystem> {
        match self {
            SystemDocument::Ring(d) => load_ring(d).map(LoadedSystem::Ring),
            SystemDocument::Integer(d) => load_integer(d).map(LoadedSystem::Integer),
            SystemDocument::Torus(d) => load_torus(d).map(LoadedSystem::Torus),
        }
    }
}

/// A single level read back from a document.
#[derive(Debug, Clone)]
pub enum LoadedSystem {
    Ring(RingLinearSystem),
    Integer(IntegerLinearSystem),
    Torus(TorusSystem),
}

impl LoadedSystem {
    pub fn nvars(&self) -> usize {
        match self {
            LoadedSystem::Ring(s) => s.nvars,
            LoadedSystem::Integer(s) => s.nvars,
            LoadedSystem::Torus(s) => s.nvars,
        }
    }

    pub fn level(&self) -> Level {
        match self {
            LoadedSystem::Ring(_) => Level::Ring,
            LoadedSystem::Integer(_) => Level::Integer,
            LoadedSystem::Torus(_) => Level::Torus,
        }
    }

    pub fn member(&self, point: &[u64]) -> crate::error::Result<Membership> {
        match self {
            LoadedSystem::Ring(s) => verify::member_ring(s, point),
            LoadedSystem::Integer(s) => verify::member_integer(s, point),
            LoadedSystem::Torus(s) => verify::member_torus(s, point, false),
        }
    }

    pub fn return_set(&self, region: BoxRegion) -> crate::error::Result<TupleSet> {
        match self {
            LoadedSystem::Ring(s) => verify::return_set_ring(s, region),
            LoadedSystem::Integer(s) => verify::return_set_integer(s, region),
            LoadedSystem::Torus(s) => verify::return_set_torus(s, region, false),
        }
    }
}

fn parse_int(s: &str) -> DocResult<BigInt> {
    s.parse().map_err(|_| DocumentError::Integer(s.to_string()))
}

fn parse_ints(v: &[String]) -> DocResult<Vec<BigInt>> {
    v.iter().map(|s| parse_int(s)).collect()
}

fn shape(msg: impl Into<String>) -> DocumentError {
    DocumentError::Shape(msg.into())
}

fn parse_int_matrix(rows: &[Vec<String>], ncols: usize, what: &str) -> DocResult<IntMatrix> {
    let mut data = Vec::with_capacity(rows.len() * ncols);
    for r in rows {
        if r.len() != ncols {
            return Err(shape(format!("{what}: row of length {} but dimension is {ncols}", r.len())));
        }
        data.extend(parse_ints(r)?);
    }
    Ok(IntMatrix::from_vec(rows.len(), ncols, data))
}

fn parse_ring(info: &RingInfo) -> DocResult<RingSpec> {
    let ring = RingSpec::from_min_poly(parse_ints(&info.min_poly)?, info.generator.clone())?;
    if ring.degree() != info.degree {
        return Err(shape("ring degree does not match its minimal polynomial"));
    }
    Ok(ring)
}

fn parse_elem(ring: &RingSpec, coords: &[String]) -> DocResult<RingElement> {
    Ok(ring.element(parse_ints(coords)?)?)
}

fn parse_ring_matrix(ring: &RingSpec, rows: &[Vec<Vec<String>>], ncols: usize, what: &str) -> DocResult<RingMatrix> {
    let mut data = Vec::with_capacity(rows.len() * ncols);
    for r in rows {
        if r.len() != ncols {
            return Err(shape(format!("{what}: row of length {} but dimension is {ncols}", r.len())));
        }
        for x in r {
            data.push(parse_elem(ring, x)?);
        }
    }
    Ok(RingMatrix::from_vec(rows.len(), ncols, data))
}

fn check_counts(n: usize, matrices: usize, dimension: usize, initial: usize) -> DocResult<()> {
    if matrices != n {
        return Err(shape(format!("{matrices} matrices for {n} variables")));
    }
    if initial != dimension {
        return Err(shape(format!("initial vector has length {initial}, dimension is {dimension}")));
    }
    Ok(())
}

fn load_ring(d: &RingDocument) -> DocResult<RingLinearSystem> {
    let ring = parse_ring(&d.ring)?;
    check_counts(d.n, d.matrices.len(), d.dimension, d.initial.len())?;
    let psi = d
        .matrices
        .iter()
        .map(|m| parse_ring_matrix(&ring, m, d.dimension, "matrix"))
        .collect::<DocResult<Vec<_>>>()?;
    if psi.iter().any(|m| m.rows() != d.dimension) {
        return Err(shape("matrix is not square"));
    }
    let initial = d
        .initial
        .iter()
        .map(|x| parse_elem(&ring, x))
        .collect::<DocResult<Vec<_>>>()?;
    let theta = parse_ring_matrix(&ring, &d.target_rows, d.dimension, "target_rows")?;
    let blocks = d
        .blocks
        .iter()
        .map(|b| load_block(&ring, &psi, b))
        .collect::<DocResult<_>>()?;
    Ok(RingLinearSystem {
        ring,
        nvars: d.n,
        psi,
        initial,
        theta,
        blocks,
    })
}

fn load_block(ring: &RingSpec, psi: &[RingMatrix], b: &BlockDocument) -> DocResult<PlacedBlock> {
    let end = b.offset.checked_add(b.size).filter(|&e| e <= psi.first().map_or(0, |m| m.rows()));
    if end.is_none() || b.size == 0 {
        return Err(shape("block lies outside the system"));
    }
    let sub = |m: &RingMatrix| {
        let mut out = RingMatrix::zeros(ring, b.size, b.size);
        for i in 0..b.size {
            for j in 0..b.size {
                out[(i, j)] = m[(b.offset + i, b.offset + j)].clone();
            }
        }
        out
    };
    let kind = match &b.kind {
        BlockKindDocument::Exponential { j, bases, weights, primes } => BlockKind::Exponential {
            j: j.clone(),
            bases: bases.iter().map(|x| parse_elem(ring, x)).collect::<DocResult<_>>()?,
            weights: WeightVector {
                weights: weights.clone(),
                primes: primes.clone(),
            },
        },
        BlockKindDocument::Linear { coeffs } => BlockKind::Linear {
            coeffs: coeffs.iter().map(|x| parse_elem(ring, x)).collect::<DocResult<_>>()?,
        },
    };
    Ok(PlacedBlock {
        equation: b.equation,
        offset: b.offset,
        coeff: parse_elem(ring, &b.coeff)?,
        block: Block {
            size: b.size,
            psi: psi.iter().map(sub).collect(),
            kind,
        },
    })
}

fn load_integer(d: &IntegerDocument) -> DocResult<IntegerLinearSystem> {
    parse_ring(&d.ring)?;
    check_counts(d.n, d.matrices.len(), d.dimension, d.initial.len())?;
    let phi = d
        .matrices
        .iter()
        .map(|m| parse_int_matrix(m, d.dimension, "matrix"))
        .collect::<DocResult<Vec<_>>>()?;
    if phi.iter().any(|m| m.rows() != d.dimension) {
        return Err(shape("matrix is not square"));
    }
    Ok(IntegerLinearSystem {
        nvars: d.n,
        phi,
        initial: parse_ints(&d.initial)?,
        target: parse_int_matrix(&d.target_rows, d.dimension, "target_rows")?,
    })
}

fn load_torus(d: &TorusDocument) -> DocResult<TorusSystem> {
    parse_ring(&d.ring)?;
    check_counts(d.n, d.matrices.len(), d.dimension, d.initial.len())?;
    let endos = d
        .matrices
        .iter()
        .map(|m| Ok(TorusEndomorphism::new(parse_int_matrix(m, d.dimension, "matrix")?)?))
        .collect::<DocResult<Vec<_>>>()?;
    let seed = parse_ints(&d.initial)?;
    let coords = d
        .point
        .iter()
        .map(|q| {
            let den = parse_int(&q.den)?;
            if den == BigInt::from(0) {
                return Err(shape("zero denominator in point"));
            }
            Ok(BigRational::new(parse_int(&q.num)?, den))
        })
        .collect::<DocResult<Vec<_>>>()?;
    let start = TorusPoint::new(coords)?;
    if start != TorusPoint::power_of_two(&seed)? {
        return Err(shape("point is not 2 raised to the initial exponents"));
    }
    let characters = parse_int_matrix(&d.characters, d.dimension, "characters")?;
    if int_rows(&characters) != d.target_rows {
        return Err(shape("characters and target_rows differ"));
    }
    Ok(TorusSystem {
        nvars: d.n,
        endos,
        start,
        target: TorusSubgroup { characters },
        exponent_seed: seed,
    })
}
