//! Reference arithmetic written without the library's ring code: plain
//! polynomial products reduced by long division.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub const EXAMPLE: &str = "ring: g^2 - 2\nvars: l1 l2\neq: (1+g)^l1 * l1 * l2 - 21*l2^2 - 5*g*l1\n";

/// `Z[g]/(m)` with `m` monic, constant term first.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub m: Vec<BigInt>,
}

impl Oracle {
    pub fn new(m: &[i64]) -> Self {
        Self {
            m: m.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.m.len() - 1
    }

    pub fn int(&self, c: i64) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.d()];
        v[0] = c.into();
        v
    }

    pub fn reduce(&self, mut p: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.d();
        while p.len() > d {
            let top = p.pop().unwrap();
            let k = p.len() - d;
            for (i, c) in self.m[..d].iter().enumerate() {
                p[k + i] -= &top * c;
            }
        }
        p.resize(d, BigInt::zero());
        p
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut p = vec![BigInt::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                p[i + j] += x * y;
            }
        }
        self.reduce(p)
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn scale(&self, a: &[BigInt], k: &BigInt) -> Vec<BigInt> {
        a.iter().map(|x| x * k).collect()
    }

    pub fn pow(&self, a: &[BigInt], k: u64) -> Vec<BigInt> {
        let mut r = self.int(1);
        for _ in 0..k {
            r = self.mul(&r, a);
        }
        r
    }

    /// The class of `g`.
    pub fn gen(&self) -> Vec<BigInt> {
        self.reduce(vec![BigInt::zero(), BigInt::one()])
    }
}

pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `(1+g)^l1 l1 l2 - 21 l2^2 - 5 g l1` over `Z[sqrt 2]`.
pub fn example_value(l1: u64, l2: u64) -> Vec<BigInt> {
    let o = Oracle::new(&[-2, 0, 1]);
    let g = o.gen();
    let one_plus_g = o.add(&o.int(1), &g);
    let a = o.scale(&o.pow(&one_plus_g, l1), &BigInt::from(l1 * l2));
    let b = o.int(-21 * (l2 * l2) as i64);
    let c = o.scale(&g, &BigInt::from(-5 * l1 as i64));
    o.add(&o.add(&a, &b), &c)
}

/// Points of `[0, bound]^n` in lexicographic order.
pub fn box_points(bound: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u64>| {
                (0..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}
