//! Encodes an exponential-polynomial system as a linear dynamical system
//! over the ring.
//!
//! Each binomial-form term `r * lambda^x * binom(x, j)` becomes a block of
//! rank `N = M.j + 1` on which `psi_i = lambda_i (I + J^{M_i})`, where `J` is
//! the subdiagonal shift. Expanding `prod_i (I + J^{M_i})^{l_i}` binomially
//! gives `sum_k binom(l, k) J^{k.M}`, and the weights `M` are chosen so that
//! `k.M = j.M` forces `k = j`; the last coordinate of the orbit of `e_1` is
//! therefore exactly `lambda^l binom(l, j)`. Blocks of all terms are stacked
//! block-diagonally and the target map weights each block's last
//! coordinate by its term coefficient, one row per equation.

use thiserror::Error;

use crate::exppoly::{BinomialTerm, ExpPolySystem};
use crate::matrix::RingMatrix;
use crate::ring::{RingElement, RingError, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("weights {weights:?} do not isolate multi-index {j:?}")]
    InvalidWeights { weights: Vec<usize>, j: Vec<u32> },
    #[error("expected {expected} entries, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("weight or block size overflows for multi-index {0:?}")]
    Overflow(Vec<u32>),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Positive weights `M` with `k.M = j.M => k = j` for the multi-index they
/// were built for. `M_i` is the product of all chosen primes except `p_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    pub weights: Vec<usize>,
    pub primes: Vec<usize>,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Greedy choice: for each variable in order, the smallest prime exceeding
/// `j_i` that has not been used yet.
pub fn select_weights(j: &[u32]) -> Result<WeightVector, EncodeError> {
    let mut primes: Vec<usize> = Vec::with_capacity(j.len());
    for &ji in j {
        let p = (ji as usize + 1..)
            .find(|&p| is_prime(p) && !primes.contains(&p))
            .expect("infinitely many primes");
        primes.push(p);
    }
    let weights = (0..primes.len())
        .map(|i| {
            primes
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != i)
                .try_fold(1usize, |acc, (_, &p)| acc.checked_mul(p))
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| EncodeError::Overflow(j.to_vec()))?;
    Ok(WeightVector { weights, primes })
}

/// `j.M`, or `None` on overflow.
fn dot(weights: &[usize], j: &[u32]) -> Option<usize> {
    weights
        .iter()
        .zip(j)
        .try_fold(0usize, |acc, (&m, &x)| acc.checked_add(m.checked_mul(x as usize)?))
}

/// Whether `j` is the only `k` in `N^n` with `k.M = j.M`, by exhaustive
/// search over `k_i <= (j.M) / M_i`.
pub fn validate_weights(weights: &[usize], j: &[u32]) -> bool {
    if weights.len() != j.len() || weights.contains(&0) {
        return false;
    }
    let Some(target) = dot(weights, j) else {
        return false;
    };

    // Counts solutions of k.M = remaining over weights[i..], stopping at two.
    fn count(weights: &[usize], remaining: usize, found: &mut usize) {
        if *found > 1 {
            return;
        }
        match weights {
            [] => *found += usize::from(remaining == 0),
            [last] => *found += usize::from(remaining.is_multiple_of(*last)),
            [m, rest @ ..] => {
                for k in 0..=remaining / m {
                    count(rest, remaining - k * m, found);
                }
            }
        }
    }

    let mut found = 0;
    count(weights, target, &mut found);
    found == 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockKind {
    /// Encodes `lambda^x binom(x, j)`.
    Exponential {
        j: Vec<u32>,
        bases: Vec<RingElement>,
        weights: WeightVector,
    },
    /// Rank-2 block for `sum_i r_i x_i`, with `psi_i = I + r_i J`.
    Linear { coeffs: Vec<RingElement> },
}

/// A block `(F, psi_1..psi_n, v, pi)`: `v` is `e_1` and `pi` reads the last
/// coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub size: usize,
    pub psi: Vec<RingMatrix>,
    pub kind: BlockKind,
}

impl Block {
    pub fn initial(&self, ring: &RingSpec) -> Vec<RingElement> {
        let mut v = vec![ring.zero(); self.size];
        v[0] = ring.one();
        v
    }

    /// Zero-based index of the projected coordinate.
    pub fn output_index(&self) -> usize {
        self.size - 1
    }

    /// `pi(psi_1^{l_1} ... psi_n^{l_n} v)` by repeated matrix-vector products.
    pub fn eval(&self, ring: &RingSpec, point: &[u64]) -> RingElement {
        let mut v = self.initial(ring);
        for (psi, &l) in self.psi.iter().zip(point).rev() {
            for _ in 0..l {
                v = psi.ring_mul_vec(ring, &v);
            }
        }
        v.swap_remove(self.output_index())
    }
}

/// Builds the block whose projected orbit is `lambda^l binom(l, j)`.
pub fn build_block(
    ring: &RingSpec,
    bases: &[RingElement],
    j: &[u32],
    weights: &WeightVector,
) -> Result<Block, EncodeError> {
    let n = j.len();
    for found in [bases.len(), weights.weights.len()] {
        if found != n {
            return Err(EncodeError::LengthMismatch { expected: n, found });
        }
    }
    for b in bases {
        ring.check_element(b)?;
    }
    if !validate_weights(&weights.weights, j) {
        return Err(EncodeError::InvalidWeights {
            weights: weights.weights.clone(),
            j: j.to_vec(),
        });
    }
    let size = dot(&weights.weights, j)
        .and_then(|d| d.checked_add(1))
        .ok_or_else(|| EncodeError::Overflow(j.to_vec()))?;
    let psi = bases
        .iter()
        .zip(&weights.weights)
        .map(|(lambda, &m)| {
            let mut psi = RingMatrix::zeros(ring, size, size);
            for r in 0..size {
                psi[(r, r)] = lambda.clone();
                if r >= m {
                    psi[(r, r - m)] = lambda.clone();
                }
            }
            psi
        })
        .collect();
    Ok(Block {
        size,
        psi,
        kind: BlockKind::Exponential {
            j: j.to_vec(),
            bases: bases.to_vec(),
            weights: weights.clone(),
        },
    })
}

/// Rank-2 block with `psi_i = I + r_i J`; since `J^2 = 0` the projected
/// orbit is `sum_i r_i l_i`.
pub fn build_linear_block(ring: &RingSpec, coeffs: &[RingElement]) -> Result<Block, EncodeError> {
    let psi = coeffs
        .iter()
        .map(|r| {
            ring.check_element(r)?;
            let mut psi = RingMatrix::identity(ring, 2);
            psi[(1, 0)] = r.clone();
            Ok(psi)
        })
        .collect::<Result<_, EncodeError>>()?;
    Ok(Block {
        size: 2,
        psi,
        kind: BlockKind::Linear {
            coeffs: coeffs.to_vec(),
        },
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EncodeOptions {
    /// Use one weight vector for every term of the system.
    pub shared_weights: bool,
    /// Encode each equation's linear part `sum r_i x_i` in one rank-2 block.
    pub linear_blocks: bool,
}

/// A block placed in the assembled system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedBlock {
    pub equation: usize,
    /// Zero-based position of the block's first coordinate.
    pub offset: usize,
    /// Target-map entry at the block's output coordinate.
    pub coeff: RingElement,
    pub block: Block,
}

impl PlacedBlock {
    pub fn output_column(&self) -> usize {
        self.offset + self.block.output_index()
    }
}

/// `(F, psi_1..psi_n, a, theta)` with target `S = ker theta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingLinearSystem {
    pub ring: RingSpec,
    pub nvars: usize,
    pub psi: Vec<RingMatrix>,
    pub initial: Vec<RingElement>,
    /// One row per equation.
    pub theta: RingMatrix,
    pub blocks: Vec<PlacedBlock>,
}

impl RingLinearSystem {
    pub fn rank(&self) -> usize {
        self.initial.len()
    }

    pub fn apply(&self, axis: usize, v: &[RingElement]) -> Vec<RingElement> {
        self.psi[axis].ring_mul_vec(&self.ring, v)
    }

    /// `psi_1^{l_1} ... psi_n^{l_n} a` from scratch.
    pub fn orbit_point(&self, point: &[u64]) -> Vec<RingElement> {
        let mut v = self.initial.clone();
        for axis in (0..self.nvars).rev() {
            for _ in 0..point[axis] {
                v = self.apply(axis, &v);
            }
        }
        v
    }

    pub fn target_values(&self, v: &[RingElement]) -> Vec<RingElement> {
        self.theta.ring_mul_vec(&self.ring, v)
    }
}

/// Chooses one weight vector valid for every multi-index: the greedy choice
/// of the first term that works for all, else the greedy choice for the
/// componentwise maximum (valid for every term because each prime then
/// exceeds every `j_i`).
pub fn shared_weights(nvars: usize, indices: &[&[u32]]) -> Result<WeightVector, EncodeError> {
    for j in indices {
        let w = select_weights(j)?;
        if indices.iter().all(|k| validate_weights(&w.weights, k)) {
            return Ok(w);
        }
    }
    let max: Vec<u32> = (0..nvars)
        .map(|i| indices.iter().map(|j| j[i]).max().unwrap_or(0))
        .collect();
    select_weights(&max)
}

/// Terms handled by one block, before weights are chosen.
enum Plan<'a> {
    Term(&'a BinomialTerm),
    Linear(Vec<RingElement>),
}

pub fn assemble(system: &ExpPolySystem, options: EncodeOptions) -> Result<RingLinearSystem, EncodeError> {
    let ring = &system.ring;
    let n = system.nvars();

    let mut plans: Vec<(usize, Plan<'_>)> = Vec::new();
    for (eq_idx, eq) in system.equations.iter().enumerate() {
        let mut linear_slot: Option<usize> = None;
        for term in &eq.binomial {
            if options.linear_blocks && term.is_linear() {
                let var = term.j.iter().position(|&x| x == 1).expect("linear term");
                let slot = *linear_slot.get_or_insert_with(|| {
                    plans.push((eq_idx, Plan::Linear(vec![ring.zero(); n])));
                    plans.len() - 1
                });
                if let Plan::Linear(coeffs) = &mut plans[slot].1 {
                    ring.add_assign_unchecked(&mut coeffs[var], &term.coeff);
                }
            } else {
                plans.push((eq_idx, Plan::Term(term)));
            }
        }
    }

    let shared = if options.shared_weights {
        let indices: Vec<&[u32]> = plans
            .iter()
            .filter_map(|(_, p)| match p {
                Plan::Term(t) => Some(t.j.as_slice()),
                Plan::Linear(_) => None,
            })
            .collect();
        Some(shared_weights(n, &indices)?)
    } else {
        None
    };

    let mut blocks = Vec::with_capacity(plans.len());
    let mut offset = 0;
    for (equation, plan) in plans {
        let (block, coeff) = match plan {
            Plan::Term(t) => {
                let weights = match &shared {
                    Some(w) => w.clone(),
                    None => select_weights(&t.j)?,
                };
                (build_block(ring, &t.bases, &t.j, &weights)?, t.coeff.clone())
            }
            Plan::Linear(coeffs) => (build_linear_block(ring, &coeffs)?, ring.one()),
        };
        let size = block.size;
        blocks.push(PlacedBlock {
            equation,
            offset,
            coeff,
            block,
        });
        offset += size;
    }

    let rank = offset;
    let psi = (0..n)
        .map(|axis| RingMatrix::direct_sum(ring, blocks.iter().map(|b| &b.block.psi[axis])))
        .collect();
    let mut initial = Vec::with_capacity(rank);
    for b in &blocks {
        initial.extend(b.block.initial(ring));
    }
    let mut theta = RingMatrix::zeros(ring, system.equations.len(), rank);
    for b in &blocks {
        theta[(b.equation, b.output_column())] = b.coeff.clone();
    }

    Ok(RingLinearSystem {
        ring: ring.clone(),
        nvars: n,
        psi,
        initial,
        theta,
        blocks,
    })
}

/// Exact `A B = B A` check.
pub fn commute(ring: &RingSpec, a: &RingMatrix, b: &RingMatrix) -> bool {
    a.ring_mul(ring, b) == b.ring_mul(ring, a)
}
