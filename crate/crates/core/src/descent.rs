//! Restriction of scalars from the ring to `Z`.
//!
//! Every ring entry is replaced by the `d x d` integer block of its regular
//! representation, so ring coordinate `x_i` turns into the consecutive
//! integer coordinates `(x_i[0], ..., x_i[d-1])`. Since the regular
//! representation is an injective ring homomorphism, orbits and kernels
//! transport exactly and the return set is unchanged.

use num_bigint::BigInt;

use crate::encoder::RingLinearSystem;
use crate::matrix::{IntMatrix, RingMatrix};
use crate::ring::{RingElement, RingSpec};

/// `(phi_1..phi_n, a, L)` over `Z`, with target `T = ker L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLinearSystem {
    pub nvars: usize,
    pub phi: Vec<IntMatrix>,
    pub initial: Vec<BigInt>,
    pub target: IntMatrix,
}

impl IntegerLinearSystem {
    pub fn rank(&self) -> usize {
        self.initial.len()
    }

    pub fn apply(&self, axis: usize, v: &[BigInt]) -> Vec<BigInt> {
        self.phi[axis].mul_vec(v)
    }

    pub fn orbit_point(&self, point: &[u64]) -> Vec<BigInt> {
        let mut v = self.initial.clone();
        for axis in (0..self.nvars).rev() {
            for _ in 0..point[axis] {
                v = self.apply(axis, &v);
            }
        }
        v
    }

    pub fn target_values(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.target.mul_vec(v)
    }
}

pub fn descend_matrix(ring: &RingSpec, m: &RingMatrix) -> IntMatrix {
    let d = ring.degree();
    let mut out = IntMatrix::zeros(m.rows() * d, m.cols() * d);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let entry = &m[(i, j)];
            if entry.is_zero() {
                continue;
            }
            let block = ring.regular_matrix(entry).expect("entry belongs to ring");
            for r in 0..d {
                for c in 0..d {
                    out[(i * d + r, j * d + c)] = block[(r, c)].clone();
                }
            }
        }
    }
    out
}

pub fn descend_vector(v: &[RingElement]) -> Vec<BigInt> {
    v.iter().flat_map(|x| x.coords().iter().cloned()).collect()
}

/// Inverse of [`descend_vector`].
pub fn ascend_vector(ring: &RingSpec, v: &[BigInt]) -> Vec<RingElement> {
    v.chunks(ring.degree())
        .map(|c| ring.element(c.iter().cloned()).expect("chunk has ring degree"))
        .collect()
}

pub fn descend_system(sys: &RingLinearSystem) -> IntegerLinearSystem {
    IntegerLinearSystem {
        nvars: sys.nvars,
        phi: sys.psi.iter().map(|m| descend_matrix(&sys.ring, m)).collect(),
        initial: descend_vector(&sys.initial),
        target: descend_matrix(&sys.ring, &sys.theta),
    }
}
