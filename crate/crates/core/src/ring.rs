//! Exact arithmetic in a monogenic order `Z[g]/(m(g))` with `m` monic.
//!
//! Elements are stored as integer coordinate vectors in the power basis
//! `1, g, ..., g^(d-1)`, which makes the representation canonical: two
//! elements are equal exactly when their coordinates are.
//!
//! The polynomial `m` does not have to be irreducible. A monic modulus is
//! enough for the quotient to be a free `Z`-module without torsion, which is
//! all the encoding and descent stages rely on.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("minimal polynomial has no coefficients")]
    Empty,
    #[error("minimal polynomial is constant; the degree must be at least 1")]
    ConstantPolynomial,
    #[error("minimal polynomial is not monic (leading coefficient {0})")]
    NotMonic(BigInt),
    #[error("element has {found} coordinates, ring has degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
}

/// The order `Z[g]/(m(g))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    /// Coefficients of `m`, constant term first; the last entry is 1.
    min_poly: Vec<BigInt>,
    generator: String,
}

/// An element of a [`RingSpec`], as power-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    coords: Vec<BigInt>,
}

impl RingElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn degree(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords.first().is_some_and(One::is_one) && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational integer this element equals, if it lies in `Z`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            self.coords.first()
        } else {
            None
        }
    }
}

impl RingSpec {
    /// Builds the order from the coefficients of its monic modulus, constant
    /// term first.
    pub fn from_min_poly<I>(coeffs: I, generator: impl Into<String>) -> Result<Self, RingError>
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        let min_poly: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        let lead = min_poly.last().ok_or(RingError::Empty)?;
        if min_poly.len() == 1 {
            return Err(RingError::ConstantPolynomial);
        }
        if !lead.is_one() {
            return Err(RingError::NotMonic(lead.clone()));
        }
        Ok(Self {
            min_poly,
            generator: generator.into(),
        })
    }

    /// The ring of rational integers, presented as `Z[g]/(g)`.
    pub fn integers() -> Self {
        Self::from_min_poly([0, 1], "g").expect("g is monic")
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn generator_name(&self) -> &str {
        &self.generator
    }

    /// Element from coordinates; the slice length must equal the degree.
    pub fn element<I>(&self, coords: I) -> Result<RingElement, RingError>
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        let coords: Vec<BigInt> = coords.into_iter().map(Into::into).collect();
        self.check_len(coords.len())?;
        Ok(RingElement { coords })
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            coords: vec![BigInt::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> RingElement {
        self.from_integer(1)
    }

    pub fn from_integer(&self, value: impl Into<BigInt>) -> RingElement {
        let mut coords = vec![BigInt::zero(); self.degree()];
        coords[0] = value.into();
        RingElement { coords }
    }

    /// The class of `g`. In degree one this is `-m(0)`.
    pub fn generator(&self) -> RingElement {
        if self.degree() == 1 {
            return self.from_integer(-&self.min_poly[0]);
        }
        let mut coords = vec![BigInt::zero(); self.degree()];
        coords[1] = BigInt::one();
        RingElement { coords }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(RingElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        })
    }

    pub fn neg(&self, a: &RingElement) -> Result<RingElement, RingError> {
        self.check_element(a)?;
        Ok(RingElement {
            coords: a.coords.iter().map(|x| -x).collect(),
        })
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, RingError> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub fn scale(&self, a: &RingElement, k: &BigInt) -> RingElement {
        RingElement {
            coords: a.coords.iter().map(|x| x * k).collect(),
        }
    }

    /// `a^k` by square-and-multiply, with `0^0 = 1`.
    pub fn pow(&self, a: &RingElement, mut k: u64) -> Result<RingElement, RingError> {
        self.check_element(a)?;
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_unchecked(&base, &base);
            }
        }
        Ok(acc)
    }

    /// Matrix of multiplication by `a` acting on coordinate columns:
    /// column `c` holds the coordinates of `a * g^c`.
    pub fn regular_matrix(&self, a: &RingElement) -> Result<IntMatrix, RingError> {
        self.check_element(a)?;
        let d = self.degree();
        let mut out = IntMatrix::zeros(d, d);
        let mut column = a.clone();
        for c in 0..d {
            for (r, x) in column.coords.iter().enumerate() {
                out[(r, c)] = x.clone();
            }
            if c + 1 < d {
                column = self.shift(&column);
            }
        }
        Ok(out)
    }

    pub(crate) fn add_unchecked(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub(crate) fn add_assign_unchecked(&self, acc: &mut RingElement, b: &RingElement) {
        for (x, y) in acc.coords.iter_mut().zip(&b.coords) {
            *x += y;
        }
    }

    pub(crate) fn mul_unchecked(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let d = self.degree();
        if d == 1 {
            return RingElement {
                coords: vec![&a.coords[0] * &b.coords[0]],
            };
        }
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }

    /// Multiplication by `g`.
    fn shift(&self, a: &RingElement) -> RingElement {
        let mut prod = vec![BigInt::zero(); self.degree() + 1];
        for (i, x) in a.coords.iter().enumerate() {
            prod[i + 1] = x.clone();
        }
        self.reduce(prod)
    }

    /// Reduces a polynomial in `g` modulo `m` using `g^d = -(m_0 + ... + m_{d-1} g^{d-1})`.
    fn reduce(&self, mut prod: Vec<BigInt>) -> RingElement {
        let d = self.degree();
        for top in (d..prod.len()).rev() {
            let c = std::mem::take(&mut prod[top]);
            if c.is_zero() {
                continue;
            }
            for (i, m) in self.min_poly[..d].iter().enumerate() {
                if !m.is_zero() {
                    prod[top - d + i] -= &c * m;
                }
            }
        }
        prod.truncate(d);
        prod.resize(d, BigInt::zero());
        RingElement { coords: prod }
    }

    /// Fails unless `a` has this ring's degree.
    pub fn check_element(&self, a: &RingElement) -> Result<(), RingError> {
        self.check_len(a.coords.len())
    }

    fn check_len(&self, found: usize) -> Result<(), RingError> {
        if found == self.degree() {
            Ok(())
        } else {
            Err(RingError::DegreeMismatch {
                expected: self.degree(),
                found,
            })
        }
    }

    /// Renders an element like `-20 - 4*g` or `3 + 2*g^2`, in a form the
    /// equation parser accepts back.
    pub fn display<'a>(&'a self, a: &'a RingElement) -> ElementDisplay<'a> {
        ElementDisplay { ring: self, elem: a }
    }

    /// Renders the modulus, e.g. `g^2 - 2`.
    pub fn min_poly_display(&self) -> String {
        let mut out = String::new();
        for (power, c) in self.min_poly.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_monomial(&mut out, c, &self.generator, power);
        }
        out
    }
}

pub struct ElementDisplay<'a> {
    ring: &'a RingSpec,
    elem: &'a RingElement,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (power, c) in self.elem.coords.iter().enumerate() {
            if !c.is_zero() {
                write_monomial(&mut out, c, &self.ring.generator, power);
            }
        }
        f.write_str(&out)
    }
}

fn write_monomial(out: &mut String, c: &BigInt, name: &str, power: usize) {
    let first = out.is_empty();
    match (first, c.is_negative()) {
        (true, true) => out.push('-'),
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
        (true, false) => {}
    }
    let abs = c.abs();
    let var = match power {
        0 => String::new(),
        1 => name.to_string(),
        p => format!("{name}^{p}"),
    };
    if var.is_empty() {
        out.push_str(&abs.to_string());
    } else if abs.is_one() {
        out.push_str(&var);
    } else {
        out.push_str(&format!("{abs}*{var}"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> RingSpec {
        RingSpec::from_min_poly([-2, 0, 1], "g").unwrap()
    }

    fn el(r: &RingSpec, c: &[i64]) -> RingElement {
        r.element(c.iter().copied()).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(sqrt2().degree(), 2);
        let z = RingSpec::from_min_poly([0, 1], "g").unwrap();
        assert_eq!(z.degree(), 1);
        assert!(RingSpec::from_min_poly([0, -2, 1], "g").is_ok());
        assert_eq!(
            RingSpec::from_min_poly([1, 2], "g"),
            Err(RingError::NotMonic(BigInt::from(2)))
        );
        assert_eq!(
            RingSpec::from_min_poly([1], "g"),
            Err(RingError::ConstantPolynomial)
        );
        assert_eq!(
            RingSpec::from_min_poly(Vec::<i64>::new(), "g"),
            Err(RingError::Empty)
        );
    }

    #[test]
    fn addition_and_negation() {
        let r = sqrt2();
        let a = el(&r, &[1, 1]);
        assert_eq!(r.add(&a, &el(&r, &[-1, 0])).unwrap(), r.generator());
        assert!(r.add(&a, &r.neg(&a).unwrap()).unwrap().is_zero());
        assert_eq!(
            r.add(&el(&r, &[7, 5]), &el(&r, &[-21, -15])).unwrap(),
            el(&r, &[-14, -10])
        );
    }

    #[test]
    fn multiplication_and_powers() {
        let r = sqrt2();
        let a = el(&r, &[1, 1]);
        assert_eq!(r.mul(&a, &a).unwrap(), el(&r, &[3, 2]));
        assert_eq!(r.mul(&a, &r.one()).unwrap(), a);
        assert_eq!(r.mul(&el(&r, &[3, 2]), &a).unwrap(), el(&r, &[7, 5]));
        assert_eq!(r.pow(&a, 3).unwrap(), el(&r, &[7, 5]));
        assert_eq!(r.pow(&r.zero(), 0).unwrap(), r.one());
        assert_eq!(r.pow(&a, 0).unwrap(), r.one());
        assert!(r.pow(&r.zero(), 3).unwrap().is_zero());
    }

    #[test]
    fn mismatched_degrees() {
        let r = sqrt2();
        let bad = RingSpec::integers().one();
        assert_eq!(
            r.mul(&r.one(), &bad),
            Err(RingError::DegreeMismatch { expected: 2, found: 1 })
        );
        assert!(r.add(&bad, &r.one()).is_err());
        assert!(r.element([1, 2, 3]).is_err());
    }

    #[test]
    fn regular_matrices() {
        let r = sqrt2();
        let m = r.regular_matrix(&el(&r, &[1, 1])).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[[1, 2], [1, 1]]));
        assert_eq!(r.regular_matrix(&r.one()).unwrap(), IntMatrix::identity(2));
        assert_eq!(
            r.regular_matrix(&r.generator()).unwrap(),
            IntMatrix::from_rows(&[[0, 2], [1, 0]])
        );
    }

    #[test]
    fn cubic_reduction() {
        // g^3 = g + 1
        let r = RingSpec::from_min_poly([-1, -1, 0, 1], "t").unwrap();
        let g = r.generator();
        assert_eq!(r.pow(&g, 3).unwrap(), el(&r, &[1, 1, 0]));
        assert_eq!(r.pow(&g, 4).unwrap(), el(&r, &[0, 1, 1]));
    }

    #[test]
    fn degree_one_generator() {
        let r = RingSpec::from_min_poly([-3, 1], "g").unwrap();
        assert_eq!(r.generator(), r.from_integer(3));
    }

    #[test]
    fn rendering() {
        let r = sqrt2();
        assert_eq!(r.display(&el(&r, &[-20, -4])).to_string(), "-20 - 4*g");
        assert_eq!(r.display(&el(&r, &[0, -1])).to_string(), "-g");
        assert_eq!(r.display(&r.zero()).to_string(), "0");
        assert_eq!(r.display(&el(&r, &[3, 1])).to_string(), "3 + g");
        assert_eq!(r.min_poly_display(), "g^2 - 2");
    }
}
