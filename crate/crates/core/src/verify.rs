//! Return sets over a finite box at every representation level, and their
//! comparison.
//!
//! Orbit levels are walked axis by axis: the state for `(l_1, ..., l_k + 1, 0, ...)`
//! is one matrix application away from the state for `(l_1, ..., l_k, 0, ...)`,
//! so a box with `P` points costs about `P` matrix-vector products. Rows with
//! a fixed first coordinate are evaluated in parallel.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::descent::IntegerLinearSystem;
use crate::encoder::RingLinearSystem;
use crate::error::{ArityError, Error, Result};
use crate::exppoly::ExpPolySystem;
use crate::pipeline::Compiled;
use crate::ring::{RingElement, RingSpec};
use crate::torus::{TorusPoint, TorusSystem};

/// All `l` in `N^n` with every `l_i <= bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxRegion {
    pub bound: u64,
    pub nvars: usize,
}

impl BoxRegion {
    pub fn new(bound: u64, nvars: usize) -> Self {
        Self { bound, nvars }
    }

    pub fn contains(&self, point: &[u64]) -> bool {
        point.len() == self.nvars && point.iter().all(|&x| x <= self.bound)
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.nvars {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=self.bound).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

pub type TupleSet = BTreeSet<Vec<u64>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    Direct,
    Ring,
    Integer,
    /// Torus orbit tracked through exponents of 2.
    Torus,
    /// Torus orbit computed on exact rational coordinates.
    TorusRational,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::Direct, Level::Ring, Level::Integer, Level::Torus];

    pub fn name(self) -> &'static str {
        match self {
            Level::Direct => "direct",
            Level::Ring => "ring",
            Level::Integer => "integer",
            Level::Torus => "torus",
            Level::TorusRational => "torus-rational",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "direct" => Ok(Level::Direct),
            "ring" => Ok(Level::Ring),
            "integer" => Ok(Level::Integer),
            "torus" => Ok(Level::Torus),
            "torus-rational" => Ok(Level::TorusRational),
            other => Err(format!(
                "unknown level `{other}`; expected direct, ring, integer, torus or torus-rational"
            )),
        }
    }
}

/// A dynamical system seen through its orbit states.
trait Orbit: Sync {
    type State: Clone + Send + Sync;

    fn start(&self) -> Self::State;
    fn step(&self, axis: usize, state: &Self::State) -> Result<Self::State>;
    fn member(&self, state: &Self::State) -> bool;
}

impl Orbit for RingLinearSystem {
    type State = Vec<RingElement>;

    fn start(&self) -> Self::State {
        self.initial.clone()
    }

    fn step(&self, axis: usize, state: &Self::State) -> Result<Self::State> {
        Ok(self.apply(axis, state))
    }

    fn member(&self, state: &Self::State) -> bool {
        self.target_values(state).iter().all(RingElement::is_zero)
    }
}

impl Orbit for IntegerLinearSystem {
    type State = Vec<BigInt>;

    fn start(&self) -> Self::State {
        self.initial.clone()
    }

    fn step(&self, axis: usize, state: &Self::State) -> Result<Self::State> {
        Ok(self.apply(axis, state))
    }

    fn member(&self, state: &Self::State) -> bool {
        self.target_values(state).iter().all(Zero::is_zero)
    }
}

struct TorusExponent<'a>(&'a TorusSystem);

impl Orbit for TorusExponent<'_> {
    type State = Vec<BigInt>;

    fn start(&self) -> Self::State {
        self.0.exponent_seed.clone()
    }

    fn step(&self, axis: usize, state: &Self::State) -> Result<Self::State> {
        Ok(self.0.endos[axis].exponents.mul_vec(state))
    }

    fn member(&self, state: &Self::State) -> bool {
        self.0.target.contains_power_of_two(state)
    }
}

struct TorusRational<'a>(&'a TorusSystem);

impl Orbit for TorusRational<'_> {
    type State = TorusPoint;

    fn start(&self) -> Self::State {
        self.0.start.clone()
    }

    fn step(&self, axis: usize, state: &Self::State) -> Result<Self::State> {
        Ok(self.0.endos[axis].apply(state)?)
    }

    fn member(&self, state: &Self::State) -> bool {
        // dimensions are consistent by construction
        self.0.target.contains(state).unwrap_or(false)
    }
}

fn walk<O: Orbit>(
    sys: &O,
    bound: u64,
    axis: usize,
    nvars: usize,
    prefix: &mut Vec<u64>,
    state: O::State,
    out: &mut Vec<Vec<u64>>,
) -> Result<()> {
    if axis == nvars {
        if sys.member(&state) {
            out.push(prefix.clone());
        }
        return Ok(());
    }
    let mut state = state;
    for x in 0..=bound {
        prefix.push(x);
        let next = if x < bound { Some(sys.step(axis, &state)?) } else { None };
        walk(sys, bound, axis + 1, nvars, prefix, state, out)?;
        prefix.pop();
        match next {
            Some(s) => state = s,
            None => break,
        }
    }
    Ok(())
}

fn orbit_return_set<O: Orbit>(sys: &O, region: BoxRegion) -> Result<TupleSet> {
    if region.nvars == 0 {
        let s = sys.start();
        return Ok(if sys.member(&s) { [vec![]].into() } else { TupleSet::new() });
    }
    let mut row_starts = Vec::with_capacity(region.bound as usize + 1);
    let mut s = sys.start();
    for x in 0..=region.bound {
        let next = if x < region.bound { Some(sys.step(0, &s)?) } else { None };
        row_starts.push((x, s));
        match next {
            Some(n) => s = n,
            None => break,
        }
    }
    let rows: Vec<Vec<Vec<u64>>> = row_starts
        .into_par_iter()
        .map(|(x, state)| {
            let mut out = Vec::new();
            walk(sys, region.bound, 1, region.nvars, &mut vec![x], state, &mut out)?;
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

fn check_region(expected: usize, region: BoxRegion) -> Result<()> {
    ArityError::check(expected, region.nvars).map_err(Error::from)
}

/// `{l in box : every equation vanishes at l}` by direct evaluation.
pub fn return_set_direct(sys: &ExpPolySystem, region: BoxRegion) -> Result<TupleSet> {
    check_region(sys.nvars(), region)?;
    Ok(region
        .points()
        .into_par_iter()
        .filter(|p| {
            sys.eval(p)
                .expect("arity checked")
                .iter()
                .all(RingElement::is_zero)
        })
        .collect())
}

pub fn return_set_ring(sys: &RingLinearSystem, region: BoxRegion) -> Result<TupleSet> {
    check_region(sys.nvars, region)?;
    orbit_return_set(sys, region)
}

pub fn return_set_integer(sys: &IntegerLinearSystem, region: BoxRegion) -> Result<TupleSet> {
    check_region(sys.nvars, region)?;
    orbit_return_set(sys, region)
}

/// Torus return set; `rational` selects exact rational coordinates instead of exponents.
pub fn return_set_torus(sys: &TorusSystem, region: BoxRegion, rational: bool) -> Result<TupleSet> {
    check_region(sys.nvars, region)?;
    if rational {
        orbit_return_set(&TorusRational(sys), region)
    } else {
        orbit_return_set(&TorusExponent(sys), region)
    }
}

pub fn return_set_level(compiled: &Compiled, level: Level, region: BoxRegion) -> Result<TupleSet> {
    match level {
        Level::Direct => return_set_direct(&compiled.source, region),
        Level::Ring => return_set_ring(&compiled.ring, region),
        Level::Integer => return_set_integer(&compiled.integer, region),
        Level::Torus => return_set_torus(&compiled.torus, region, false),
        Level::TorusRational => return_set_torus(&compiled.torus, region, true),
    }
}

/// Membership of one tuple at one level, with the evaluated target values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub level: Level,
    pub point: Vec<u64>,
    pub member: bool,
    /// Equation values, target-map values, or character values, rendered.
    pub evidence: Vec<String>,
}

fn render_elements(ring: &RingSpec, v: &[RingElement]) -> Vec<String> {
    v.iter().map(|x| ring.display(x).to_string()).collect()
}

fn membership(level: Level, point: &[u64], member: bool, evidence: Vec<String>) -> Membership {
    Membership {
        level,
        point: point.to_vec(),
        member,
        evidence,
    }
}

pub fn member_direct(sys: &ExpPolySystem, point: &[u64]) -> Result<Membership> {
    let v = sys.eval(point)?;
    let member = v.iter().all(RingElement::is_zero);
    Ok(membership(Level::Direct, point, member, render_elements(&sys.ring, &v)))
}

pub fn member_ring(sys: &RingLinearSystem, point: &[u64]) -> Result<Membership> {
    ArityError::check(sys.nvars, point.len())?;
    let v = sys.target_values(&sys.orbit_point(point));
    let member = v.iter().all(RingElement::is_zero);
    Ok(membership(Level::Ring, point, member, render_elements(&sys.ring, &v)))
}

pub fn member_integer(sys: &IntegerLinearSystem, point: &[u64]) -> Result<Membership> {
    ArityError::check(sys.nvars, point.len())?;
    let v = sys.target_values(&sys.orbit_point(point));
    let member = v.iter().all(Zero::is_zero);
    Ok(membership(Level::Integer, point, member, v.iter().map(ToString::to_string).collect()))
}

/// Character values at the orbit point; written `2^k` in exponent mode.
pub fn member_torus(sys: &TorusSystem, point: &[u64], rational: bool) -> Result<Membership> {
    ArityError::check(sys.nvars, point.len())?;
    if rational {
        let x = sys.orbit_point_rational(point)?;
        let v = sys.target.character_values(&x)?;
        let member = v.iter().all(One::is_one);
        let evidence = v.iter().map(ToString::to_string).collect();
        Ok(membership(Level::TorusRational, point, member, evidence))
    } else {
        let v = sys.target.character_exponents(&sys.orbit_point_exponent(point));
        let member = v.iter().all(Zero::is_zero);
        let evidence = v.iter().map(|x| format!("2^{x}")).collect();
        Ok(membership(Level::Torus, point, member, evidence))
    }
}

/// Membership of `point` at `level`; `point` need not lie in any box.
pub fn member(compiled: &Compiled, point: &[u64], level: Level) -> Result<Membership> {
    match level {
        Level::Direct => member_direct(&compiled.source, point),
        Level::Ring => member_ring(&compiled.ring, point),
        Level::Integer => member_integer(&compiled.integer, point),
        Level::Torus => member_torus(&compiled.torus, point, false),
        Level::TorusRational => member_torus(&compiled.torus, point, true),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSet {
    pub level: Level,
    pub points: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub point: Vec<u64>,
    pub levels: Vec<Membership>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReturnSetReport {
    #[serde(rename = "box")]
    pub region: BoxRegion,
    pub sets: Vec<LevelSet>,
    pub agreement: bool,
    /// Lexicographically smallest tuple on which the levels disagree.
    pub witness: Option<Witness>,
}

impl ReturnSetReport {
    pub fn set(&self, level: Level) -> Option<TupleSet> {
        self.sets
            .iter()
            .find(|s| s.level == level)
            .map(|s| s.points.iter().cloned().collect())
    }

    /// Builds a report from already computed sets; no witness evidence is
    /// attached.
    pub fn from_sets(region: BoxRegion, sets: Vec<(Level, TupleSet)>) -> Self {
        let agreement = sets.windows(2).all(|w| w[0].1 == w[1].1);
        Self {
            region,
            sets: sets
                .into_iter()
                .map(|(level, s)| LevelSet {
                    level,
                    points: s.into_iter().collect(),
                })
                .collect(),
            agreement,
            witness: None,
        }
    }

    pub fn render_table(&self) -> String {
        let mut out = format!(
            "box: [0, {}]^{} ({} points)\n",
            self.region.bound,
            self.region.nvars,
            (self.region.bound + 1).saturating_pow(self.region.nvars as u32)
        );
        out.push_str(&format!("{:<15} {:>6}  return set\n", "level", "size"));
        for s in &self.sets {
            let pts: Vec<String> = s
                .points
                .iter()
                .map(|p| render_tuple(p))
                .collect();
            out.push_str(&format!(
                "{:<15} {:>6}  {{{}}}\n",
                s.level.name(),
                s.points.len(),
                pts.join(", ")
            ));
        }
        out.push_str(&format!(
            "agreement: {}\n",
            if self.agreement { "yes" } else { "NO" }
        ));
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness: {}\n", render_tuple(&w.point)));
            for m in &w.levels {
                out.push_str(&format!(
                    "  {:<15} member={} values=[{}]\n",
                    m.level.name(),
                    m.member,
                    m.evidence.join(", ")
                ));
            }
        }
        out
    }
}

impl ReturnSetReport {
    /// Smallest tuple lying in some but not all of the sets.
    pub fn first_disagreement(&self) -> Option<Vec<u64>> {
        let mut disputed: TupleSet = TupleSet::new();
        for (i, a) in self.sets.iter().enumerate() {
            let a: TupleSet = a.points.iter().cloned().collect();
            for b in &self.sets[i + 1..] {
                let b: TupleSet = b.points.iter().cloned().collect();
                disputed.extend(a.symmetric_difference(&b).cloned());
            }
        }
        disputed.into_iter().next()
    }

    /// On disagreement, records the first disputed tuple with the evidence
    /// `evidence(row, point)` for each row of the report.
    pub fn attach_witness<F>(&mut self, mut evidence: F) -> Result<()>
    where
        F: FnMut(usize, &[u64]) -> Result<Membership>,
    {
        if self.agreement {
            return Ok(());
        }
        if let Some(point) = self.first_disagreement() {
            let levels = (0..self.sets.len())
                .map(|i| evidence(i, &point))
                .collect::<Result<_>>()?;
            self.witness = Some(Witness { point, levels });
        }
        Ok(())
    }
}

fn render_tuple(p: &[u64]) -> String {
    let xs: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", xs.join(","))
}

/// Computes the return set at each requested level and compares them.
pub fn cross_check(compiled: &Compiled, region: BoxRegion, levels: &[Level]) -> Result<ReturnSetReport> {
    let sets = levels
        .iter()
        .map(|&level| Ok((level, return_set_level(compiled, level, region)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut report = ReturnSetReport::from_sets(region, sets);
    report.attach_witness(|i, point| member(compiled, point, levels[i]))?;
    Ok(report)
}
