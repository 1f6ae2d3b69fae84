//! Stirling numbers, factorials and binomial coefficients over `BigInt`.
//!
//! `x^k = sum_j S(k, j) * j! * binom(x, j)` is the identity used to move a
//! monomial in the variables onto the binomial basis with integer
//! coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("Stirling number S({k}, {j}) requested with j > k")]
pub struct StirlingRangeError {
    pub k: u32,
    pub j: u32,
}

/// Stirling number of the second kind `S(k, j)`.
pub fn stirling2(k: u32, j: u32) -> Result<BigInt, StirlingRangeError> {
    if j > k {
        return Err(StirlingRangeError { k, j });
    }
    Ok(stirling2_row(k).swap_remove(j as usize))
}

/// The row `S(k, 0), ..., S(k, k)`, built with `S(k, j) = j S(k-1, j) + S(k-1, j-1)`.
pub fn stirling2_row(k: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..k {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (j, s) in row.iter().enumerate() {
            // S(k, j) feeds S(k+1, j) with weight j and S(k+1, j+1) with weight 1
            if j > 0 {
                next[j] += s * BigInt::from(j);
            }
            next[j + 1] += s;
        }
        row = next;
    }
    row
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `binom(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u32) -> BigInt {
    let k = u64::from(k);
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}
