//! Exponential-polynomial systems: parsing, exact evaluation, and the two
//! normal forms used by the encoder.
//!
//! An equation is first expanded into monomial terms `c * lambda^x * x^k`
//! and then rewritten over basic exponential multinomials
//! `r * lambda^x * binom(x, j)`. Evaluating the AST directly, the monomial
//! form, and the binomial form must always give the same ring element.

pub mod combinat;
pub mod parser;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::ArityError;
use crate::ring::{RingElement, RingSpec};

pub use combinat::{binomial, factorial, stirling2, stirling2_row, StirlingRangeError};
pub use parser::{ParseError, ParseErrorKind};

/// Expression tree of one equation. Variables are indices into the
/// system's declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Generator,
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    /// `base ^ variable`; the base never mentions a variable.
    ExpPow(Box<Expr>, usize),
}

impl Expr {
    pub fn has_vars(&self) -> bool {
        match self {
            Expr::Int(_) | Expr::Generator => false,
            Expr::Var(_) | Expr::ExpPow(..) => true,
            Expr::Neg(a) | Expr::Pow(a, _) => a.has_vars(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.has_vars() || b.has_vars(),
        }
    }

    /// Direct recursive evaluation at `point`.
    pub fn eval(&self, ring: &RingSpec, point: &[u64]) -> RingElement {
        match self {
            Expr::Int(v) => ring.from_integer(v.clone()),
            Expr::Generator => ring.generator(),
            Expr::Var(i) => ring.from_integer(point[*i]),
            Expr::Neg(a) => ring.scale(&a.eval(ring, point), &BigInt::from(-1)),
            Expr::Add(a, b) => ring.add_unchecked(&a.eval(ring, point), &b.eval(ring, point)),
            Expr::Sub(a, b) => {
                let rhs = ring.scale(&b.eval(ring, point), &BigInt::from(-1));
                ring.add_unchecked(&a.eval(ring, point), &rhs)
            }
            Expr::Mul(a, b) => ring.mul_unchecked(&a.eval(ring, point), &b.eval(ring, point)),
            Expr::Pow(a, k) => pow(ring, &a.eval(ring, point), u64::from(*k)),
            Expr::ExpPow(a, i) => pow(ring, &a.eval(ring, point), point[*i]),
        }
    }
}

fn pow(ring: &RingSpec, a: &RingElement, k: u64) -> RingElement {
    ring.pow(a, k).expect("element belongs to ring")
}

/// `coeff * prod_i bases[i]^x_i * prod_i x_i^powers[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialTerm {
    pub coeff: RingElement,
    pub powers: Vec<u32>,
    pub bases: Vec<RingElement>,
}

/// `coeff * prod_i bases[i]^x_i * prod_i binom(x_i, j[i])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialTerm {
    pub coeff: RingElement,
    pub j: Vec<u32>,
    pub bases: Vec<RingElement>,
}

impl BinomialTerm {
    /// True for `r * binom(x_i, 1)` with every base equal to one.
    pub fn is_linear(&self) -> bool {
        self.j.iter().sum::<u32>() == 1 && self.bases.iter().all(RingElement::is_one)
    }
}

type TermKey = (Vec<u32>, Vec<RingElement>);

/// Accumulates like terms in first-occurrence order.
struct Collector<'r> {
    ring: &'r RingSpec,
    terms: IndexMap<TermKey, RingElement>,
}

impl<'r> Collector<'r> {
    fn new(ring: &'r RingSpec) -> Self {
        Self {
            ring,
            terms: IndexMap::new(),
        }
    }

    fn push(&mut self, key: TermKey, coeff: RingElement) {
        match self.terms.get_mut(&key) {
            Some(acc) => self.ring.add_assign_unchecked(acc, &coeff),
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    fn finish(self) -> impl Iterator<Item = (TermKey, RingElement)> {
        self.terms.into_iter().filter(|(_, c)| !c.is_zero())
    }
}

/// Fully distributes `expr` into collected monomial terms over `nvars` variables.
pub fn expand(ring: &RingSpec, nvars: usize, expr: &Expr) -> Vec<MonomialTerm> {
    let constant = |c: RingElement| MonomialTerm {
        coeff: c,
        powers: vec![0; nvars],
        bases: vec![ring.one(); nvars],
    };
    let terms = match expr {
        Expr::Int(v) => vec![constant(ring.from_integer(v.clone()))],
        Expr::Generator => vec![constant(ring.generator())],
        Expr::Var(i) => {
            let mut t = constant(ring.one());
            t.powers[*i] = 1;
            vec![t]
        }
        Expr::Neg(a) => negate(ring, expand(ring, nvars, a)),
        Expr::Add(a, b) => {
            let mut t = expand(ring, nvars, a);
            t.extend(expand(ring, nvars, b));
            t
        }
        Expr::Sub(a, b) => {
            let mut t = expand(ring, nvars, a);
            t.extend(negate(ring, expand(ring, nvars, b)));
            t
        }
        Expr::Mul(a, b) => multiply(ring, &expand(ring, nvars, a), &expand(ring, nvars, b)),
        Expr::Pow(a, k) => {
            let base = expand(ring, nvars, a);
            let mut acc = vec![constant(ring.one())];
            for _ in 0..*k {
                acc = multiply(ring, &acc, &base);
            }
            acc
        }
        Expr::ExpPow(a, i) => {
            let base = a.eval(ring, &vec![0; nvars]);
            let mut t = constant(ring.one());
            t.bases[*i] = base;
            vec![t]
        }
    };
    collect_monomials(ring, terms)
}

fn negate(ring: &RingSpec, terms: Vec<MonomialTerm>) -> Vec<MonomialTerm> {
    let minus = BigInt::from(-1);
    terms
        .into_iter()
        .map(|mut t| {
            t.coeff = ring.scale(&t.coeff, &minus);
            t
        })
        .collect()
}

fn multiply(ring: &RingSpec, lhs: &[MonomialTerm], rhs: &[MonomialTerm]) -> Vec<MonomialTerm> {
    let mut out = Vec::with_capacity(lhs.len() * rhs.len());
    for a in lhs {
        for b in rhs {
            out.push(MonomialTerm {
                coeff: ring.mul_unchecked(&a.coeff, &b.coeff),
                powers: a.powers.iter().zip(&b.powers).map(|(x, y)| x + y).collect(),
                bases: a
                    .bases
                    .iter()
                    .zip(&b.bases)
                    .map(|(x, y)| ring.mul_unchecked(x, y))
                    .collect(),
            });
        }
    }
    collect_monomials(ring, out)
}

fn collect_monomials(ring: &RingSpec, terms: Vec<MonomialTerm>) -> Vec<MonomialTerm> {
    let mut c = Collector::new(ring);
    for t in terms {
        c.push((t.powers, t.bases), t.coeff);
    }
    c.finish()
        .map(|((powers, bases), coeff)| MonomialTerm { coeff, powers, bases })
        .collect()
}

/// Rewrites monomial terms on the binomial basis via
/// `x^k = sum_j S(k, j) j! binom(x, j)`; indices `j` run from `k` down to 0.
pub fn to_binomial_form(ring: &RingSpec, terms: &[MonomialTerm]) -> Vec<BinomialTerm> {
    let mut c = Collector::new(ring);
    for t in terms {
        // per variable: (j, S(k, j) * j!) with nonzero weight, highest j first
        let factors: Vec<Vec<(u32, BigInt)>> = t
            .powers
            .iter()
            .map(|&k| {
                let row = stirling2_row(k);
                (0..=k)
                    .rev()
                    .filter(|&j| !row[j as usize].is_zero())
                    .map(|j| (j, &row[j as usize] * factorial(j)))
                    .collect()
            })
            .collect();
        for_each_choice(&factors, &mut |choice: &[&(u32, BigInt)]| {
            let j = choice.iter().map(|(j, _)| *j).collect();
            let weight: BigInt = choice.iter().map(|(_, w)| w).product();
            c.push((j, t.bases.clone()), ring.scale(&t.coeff, &weight));
        });
    }
    c.finish()
        .map(|((j, bases), coeff)| BinomialTerm { coeff, j, bases })
        .collect()
}

/// Visits the cartesian product of `lists` in lexicographic order.
fn for_each_choice<'a, T>(lists: &'a [Vec<T>], f: &mut dyn FnMut(&[&'a T])) {
    fn go<'a, T>(lists: &'a [Vec<T>], acc: &mut Vec<&'a T>, f: &mut dyn FnMut(&[&'a T])) {
        match lists.split_first() {
            None => f(acc),
            Some((head, rest)) => {
                for item in head {
                    acc.push(item);
                    go(rest, acc, f);
                    acc.pop();
                }
            }
        }
    }
    go(lists, &mut Vec::with_capacity(lists.len()), f);
}

pub fn eval_monomial_form(ring: &RingSpec, terms: &[MonomialTerm], point: &[u64]) -> RingElement {
    let mut acc = ring.zero();
    for t in terms {
        let mut v = t.coeff.clone();
        for (i, &x) in point.iter().enumerate() {
            v = ring.mul_unchecked(&v, &pow(ring, &t.bases[i], x));
            v = ring.scale(&v, &BigInt::from(x).pow(t.powers[i]));
        }
        ring.add_assign_unchecked(&mut acc, &v);
    }
    acc
}

pub fn eval_binomial_form(ring: &RingSpec, terms: &[BinomialTerm], point: &[u64]) -> RingElement {
    let mut acc = ring.zero();
    for t in terms {
        let mut v = t.coeff.clone();
        for (i, &x) in point.iter().enumerate() {
            v = ring.mul_unchecked(&v, &pow(ring, &t.bases[i], x));
            v = ring.scale(&v, &binomial(x, t.j[i]));
        }
        ring.add_assign_unchecked(&mut acc, &v);
    }
    acc
}

/// One equation `expr = 0` with its cached normal forms.
#[derive(Debug, Clone)]
pub struct Equation {
    pub source: String,
    pub ast: Expr,
    pub monomial: Vec<MonomialTerm>,
    pub binomial: Vec<BinomialTerm>,
}

impl Equation {
    pub fn new(ring: &RingSpec, nvars: usize, source: impl Into<String>, ast: Expr) -> Self {
        let monomial = expand(ring, nvars, &ast);
        let binomial = to_binomial_form(ring, &monomial);
        Self {
            source: source.into(),
            ast,
            monomial,
            binomial,
        }
    }

    pub fn is_zero_polynomial(&self) -> bool {
        self.binomial.is_empty()
    }
}

/// A finite system of exponential-polynomial equations over one ring.
/// Its zero set is the intersection of the equations' zero sets.
#[derive(Debug, Clone)]
pub struct ExpPolySystem {
    pub ring: RingSpec,
    pub vars: Vec<String>,
    pub equations: Vec<Equation>,
}

impl ExpPolySystem {
    /// Parses a system file.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let file = parser::parse_file(text)?;
        let n = file.vars.len();
        let equations = file
            .equations
            .into_iter()
            .map(|(src, ast)| Equation::new(&file.ring, n, src, ast))
            .collect();
        Ok(Self {
            ring: file.ring,
            vars: file.vars,
            equations,
        })
    }

    /// Builds a system from equation strings over an existing ring.
    pub fn from_equations<S: AsRef<str>>(
        ring: RingSpec,
        vars: &[&str],
        equations: &[S],
    ) -> Result<Self, ParseError> {
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let equations = equations
            .iter()
            .map(|src| {
                let ast = parser::parse_equation(src.as_ref(), &ring, &vars)?;
                Ok(Equation::new(&ring, vars.len(), src.as_ref().trim(), ast))
            })
            .collect::<Result<_, ParseError>>()?;
        Ok(Self { ring, vars, equations })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn check_arity(&self, point: &[u64]) -> Result<(), ArityError> {
        ArityError::check(self.nvars(), point.len())
    }

    /// Ground-truth values `f_1(l), ..., f_t(l)` by direct AST evaluation.
    pub fn eval(&self, point: &[u64]) -> Result<Vec<RingElement>, ArityError> {
        self.check_arity(point)?;
        Ok(self.equations.iter().map(|e| e.ast.eval(&self.ring, point)).collect())
    }

    pub fn eval_binomial(&self, point: &[u64]) -> Result<Vec<RingElement>, ArityError> {
        self.check_arity(point)?;
        Ok(self
            .equations
            .iter()
            .map(|e| eval_binomial_form(&self.ring, &e.binomial, point))
            .collect())
    }

    pub fn eval_monomial(&self, point: &[u64]) -> Result<Vec<RingElement>, ArityError> {
        self.check_arity(point)?;
        Ok(self
            .equations
            .iter()
            .map(|e| eval_monomial_form(&self.ring, &e.monomial, point))
            .collect())
    }
}
