//! Monomial dynamics on the split torus `G_m^N` over `Q`.
//!
//! An integer matrix `A` acts by `x -> (prod_j x_j^{A_ij})_i`, an integer row
//! `c` is the character `x -> prod_j x_j^{c_j}`, and a subgroup is the joint
//! kernel of finitely many characters. Starting from `P = 2^a`, the orbit
//! point under exponent matrices `phi` is `2^(phi a)` and a character takes
//! the value `2^(c . phi a)`. As 2 has infinite order in `Q*`, that value is
//! 1 exactly when `c . phi a = 0`, so the torus return set agrees with the
//! integer-linear one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::descent::IntegerLinearSystem;
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("torus point has a zero coordinate at index {0}")]
    ZeroCoordinate(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("exponent {0} is too large to evaluate in rational mode")]
    ExponentTooLarge(BigInt),
    #[error("exponent matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
}

/// `x -> (prod_j x_j^{A_ij})_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusEndomorphism {
    pub exponents: IntMatrix,
}

/// A point of `G_m^N(Q)`; no coordinate is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPoint {
    coords: Vec<BigRational>,
}

/// Joint kernel of the characters given by the rows of `characters`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusSubgroup {
    pub characters: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusSystem {
    pub nvars: usize,
    pub endos: Vec<TorusEndomorphism>,
    pub start: TorusPoint,
    pub target: TorusSubgroup,
    /// Integer vector `a` with `start = 2^a`.
    pub exponent_seed: Vec<BigInt>,
}

fn check_dim(expected: usize, found: usize) -> Result<(), TorusError> {
    if expected == found {
        Ok(())
    } else {
        Err(TorusError::DimensionMismatch { expected, found })
    }
}

/// `x^e` for a nonzero rational and an integer exponent of any sign.
fn rational_pow(x: &BigRational, e: &BigInt) -> Result<BigRational, TorusError> {
    let k = u32::try_from(e.abs()).map_err(|_| TorusError::ExponentTooLarge(e.clone()))?;
    let p = BigRational::new_raw(x.numer().pow(k), x.denom().pow(k));
    Ok(if e.is_negative() { p.recip() } else { p })
}

/// `2^e` as an exact rational.
pub fn power_of_two(e: &BigInt) -> Result<BigRational, TorusError> {
    rational_pow(&BigRational::from_integer(BigInt::from(2)), e)
}

impl TorusPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self, TorusError> {
        if let Some(i) = coords.iter().position(Zero::is_zero) {
            return Err(TorusError::ZeroCoordinate(i));
        }
        Ok(Self { coords })
    }

    pub fn identity(dimension: usize) -> Self {
        Self {
            coords: vec![BigRational::one(); dimension],
        }
    }

    /// The point `2^e`.
    pub fn power_of_two(e: &[BigInt]) -> Result<Self, TorusError> {
        Ok(Self {
            coords: e.iter().map(power_of_two).collect::<Result<_, _>>()?,
        })
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }
}

/// Evaluates the monomials given by the rows of `exponents` at `x`.
fn eval_monomials(exponents: &IntMatrix, x: &TorusPoint) -> Result<Vec<BigRational>, TorusError> {
    check_dim(exponents.cols(), x.dimension())?;
    exponents
        .row_iter()
        .map(|row| {
            row.iter()
                .zip(&x.coords)
                .filter(|(e, _)| !e.is_zero())
                .try_fold(BigRational::one(), |acc, (e, xi)| Ok(acc * rational_pow(xi, e)?))
        })
        .collect()
}

impl TorusEndomorphism {
    pub fn new(exponents: IntMatrix) -> Result<Self, TorusError> {
        if !exponents.is_square() {
            return Err(TorusError::NotSquare {
                rows: exponents.rows(),
                cols: exponents.cols(),
            });
        }
        Ok(Self { exponents })
    }

    pub fn dimension(&self) -> usize {
        self.exponents.rows()
    }

    /// Exact evaluation of the monomial map at `x`.
    pub fn apply(&self, x: &TorusPoint) -> Result<TorusPoint, TorusError> {
        if let Some(i) = x.coords.iter().position(Zero::is_zero) {
            return Err(TorusError::ZeroCoordinate(i));
        }
        Ok(TorusPoint {
            coords: eval_monomials(&self.exponents, x)?,
        })
    }

    /// Coordinate `i` of the map as a monomial in named coordinates, e.g. `Y1*Z1^2`.
    pub fn monomial(&self, i: usize, names: &[String]) -> String {
        render_monomial(self.exponents.row(i), names)
    }
}

impl TorusSubgroup {
    pub fn character_values(&self, x: &TorusPoint) -> Result<Vec<BigRational>, TorusError> {
        eval_monomials(&self.characters, x)
    }

    /// True iff every character is exactly 1 at `x`.
    pub fn contains(&self, x: &TorusPoint) -> Result<bool, TorusError> {
        Ok(self.character_values(x)?.iter().all(One::is_one))
    }

    /// Exponents `c . e` of the character values at `2^e`.
    pub fn character_exponents(&self, e: &[BigInt]) -> Vec<BigInt> {
        self.characters.mul_vec(e)
    }

    /// Membership of `2^e`: every `c . e` vanishes.
    pub fn contains_power_of_two(&self, e: &[BigInt]) -> bool {
        self.character_exponents(e).iter().all(Zero::is_zero)
    }

    /// Each character written as `lhs = rhs` with nonnegative exponents.
    pub fn relations(&self, names: &[String]) -> Vec<String> {
        self.characters
            .row_iter()
            .map(|row| {
                let pos: Vec<BigInt> = row.iter().map(|e| if e.is_positive() { e.clone() } else { BigInt::zero() }).collect();
                let neg: Vec<BigInt> = row.iter().map(|e| if e.is_negative() { -e } else { BigInt::zero() }).collect();
                format!("{} = {}", render_monomial(&pos, names), render_monomial(&neg, names))
            })
            .collect()
    }
}

fn render_monomial(exponents: &[BigInt], names: &[String]) -> String {
    let parts: Vec<String> = exponents
        .iter()
        .zip(names)
        .filter(|(e, _)| !e.is_zero())
        .map(|(e, name)| if e.is_one() { name.clone() } else { format!("{name}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Names torus coordinates after the ring coordinate they came from:
/// `Y{i}`/`Z{i}` for quadratic rings, `X{i}` over `Z`, `X{i}_{c}` otherwise.
pub fn coordinate_names(dimension: usize, degree: usize) -> Vec<String> {
    (0..dimension)
        .map(|k| {
            let (i, c) = (k / degree + 1, k % degree);
            match degree {
                1 => format!("X{i}"),
                2 => format!("{}{i}", if c == 0 { 'Y' } else { 'Z' }),
                _ => format!("X{i}_{c}"),
            }
        })
        .collect()
}

impl TorusSystem {
    pub fn dimension(&self) -> usize {
        self.exponent_seed.len()
    }

    /// Orbit point `Phi_1^{l_1} o ... o Phi_n^{l_n}(P)` by repeated exact evaluation.
    pub fn orbit_point_rational(&self, point: &[u64]) -> Result<TorusPoint, TorusError> {
        let mut x = self.start.clone();
        for axis in (0..self.nvars).rev() {
            for _ in 0..point[axis] {
                x = self.endos[axis].apply(&x)?;
            }
        }
        Ok(x)
    }

    /// Exponent vector `e` of the orbit point `2^e`.
    pub fn orbit_point_exponent(&self, point: &[u64]) -> Vec<BigInt> {
        let mut e = self.exponent_seed.clone();
        for axis in (0..self.nvars).rev() {
            for _ in 0..point[axis] {
                e = self.endos[axis].exponents.mul_vec(&e);
            }
        }
        e
    }

    /// Whether all pairs of exponent matrices commute.
    pub fn endomorphisms_commute(&self) -> bool {
        self.endos.iter().enumerate().all(|(i, a)| {
            self.endos[i + 1..].iter().all(|b| {
                a.exponents.mul(&b.exponents) == b.exponents.mul(&a.exponents)
            })
        })
    }
}

/// Exponentiates an integer linear system: the matrices become monomial
/// maps, `a` becomes `P = 2^a`, and `L` becomes the target characters.
pub fn exponentiate(sys: &IntegerLinearSystem) -> Result<TorusSystem, TorusError> {
    Ok(TorusSystem {
        nvars: sys.nvars,
        endos: sys
            .phi
            .iter()
            .map(|m| TorusEndomorphism::new(m.clone()))
            .collect::<Result<_, _>>()?,
        start: TorusPoint::power_of_two(&sys.initial)?,
        target: TorusSubgroup {
            characters: sys.target.clone(),
        },
        exponent_seed: sys.initial.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn identity_map_fixes_points() {
        let phi = TorusEndomorphism::new(IntMatrix::identity(3)).unwrap();
        let x = TorusPoint::new(vec![q(2), q(-3), BigRational::new(1.into(), 5.into())]).unwrap();
        assert_eq!(phi.apply(&x).unwrap(), x);
    }

    #[test]
    fn monomial_evaluation() {
        let phi = TorusEndomorphism::new(IntMatrix::from_rows(&[[1, 2], [0, -1]])).unwrap();
        let x = TorusPoint::new(vec![q(2), q(3)]).unwrap();
        let y = phi.apply(&x).unwrap();
        assert_eq!(y.coords()[0], q(18));
        assert_eq!(y.coords()[1], BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn zero_coordinates_rejected() {
        assert_eq!(TorusPoint::new(vec![q(1), q(0)]), Err(TorusError::ZeroCoordinate(1)));
        let phi = TorusEndomorphism::new(IntMatrix::identity(2)).unwrap();
        let bad = TorusPoint { coords: vec![q(0), q(1)] };
        assert_eq!(phi.apply(&bad), Err(TorusError::ZeroCoordinate(0)));
        assert!(TorusEndomorphism::new(IntMatrix::zeros(1, 2)).is_err());
    }

    #[test]
    fn subgroup_membership() {
        let y = TorusSubgroup {
            characters: IntMatrix::from_rows(&[[1, -2, 0]]),
        };
        assert!(y.contains(&TorusPoint::identity(3)).unwrap());
        assert!(y.contains(&TorusPoint::new(vec![q(4), q(-2), q(7)]).unwrap()).unwrap());
        assert!(!y.contains(&TorusPoint::new(vec![q(4), q(3), q(7)]).unwrap()).unwrap());
        let e: Vec<BigInt> = [2, 1, 5].map(BigInt::from).to_vec();
        assert!(y.contains_power_of_two(&e));
        assert_eq!(y.relations(&coordinate_names(3, 1)), ["X1 = X2^2"]);
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(power_of_two(&BigInt::from(-3)).unwrap(), BigRational::new(1.into(), 8.into()));
        assert_eq!(power_of_two(&BigInt::from(0)).unwrap(), q(1));
    }

    #[test]
    fn names() {
        assert_eq!(coordinate_names(4, 2), ["Y1", "Z1", "Y2", "Z2"]);
        assert_eq!(coordinate_names(2, 1), ["X1", "X2"]);
        assert_eq!(coordinate_names(3, 3), ["X1_0", "X1_1", "X1_2"]);
    }
}
