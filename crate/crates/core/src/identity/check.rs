use std::collections::HashSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::algebra::{integral_elements, sample_tuple, Algebra, Element};
use crate::words::Monomial;

use super::{CheckLimits, GroupScope, IdentityError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Ggi,
    Gpcgi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    HoldsExhaustive,
    HoldsOnSample,
    Fails,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Ggi => "GGI",
            Mode::Gpcgi => "GPCGI",
        }
    }
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::HoldsExhaustive => "holds-exhaustive",
            Status::HoldsOnSample => "holds-on-sample",
            Status::Fails => "fails",
        }
    }
}

/// Outcome of a GGI or GPCGI check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub mode: Mode,
    pub status: Status,
    pub scope: &'static str,
    pub seed: Option<u64>,
    /// Tuples evaluated, including the failing one.
    pub tuples: u64,
    /// Exponent bound actually used (raised on finite backends).
    pub p_max: u64,
    pub witness: Option<Vec<Element>>,
    /// `w(witness)`.
    pub witness_value: Option<Element>,
    /// Least central exponent per examined tuple (GPCGI only).
    pub exponents: Vec<u64>,
    /// `lcm` of `exponents` when the GPCGI holds.
    pub m: Option<BigUint>,
}

/// Serialized form of an [`IdentityReport`], fields in stable order.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityRecord {
    pub mode: &'static str,
    pub status: &'static str,
    pub scope: &'static str,
    pub seed: Option<u64>,
    pub tuples: u64,
    pub p_max: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_value: Option<String>,
    pub p: Vec<u64>,
    #[serde(rename = "M")]
    pub m: Option<String>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.status != Status::Fails
    }

    pub fn record(&self) -> IdentityRecord {
        IdentityRecord {
            mode: self.mode.as_str(),
            status: self.status.as_str(),
            scope: self.scope,
            seed: self.seed,
            tuples: self.tuples,
            p_max: self.p_max,
            witness: self.witness.as_ref().map(|w| w.iter().map(Element::to_string).collect()),
            witness_value: self.witness_value.as_ref().map(Element::to_string),
            p: self.exponents.clone(),
            m: self.m.as_ref().map(BigUint::to_string),
        }
    }
}

fn cap_error(needed: impl ToString, cap: u64) -> IdentityError {
    IdentityError::EnumerationCapExceeded { needed: needed.to_string(), cap }
}

/// The elements of an exhaustive scope, in a deterministic order.
pub fn enumerate_scope(alg: &Algebra, scope: &GroupScope, cap: u64) -> Result<Vec<Element>, IdentityError> {
    match scope {
        GroupScope::FullGroup => {
            let size = alg.cardinality().ok_or_else(|| {
                IdentityError::Unsupported(format!("the unit group of {alg} is infinite"))
            })?;
            if size > BigUint::from(cap) {
                return Err(cap_error(size, cap));
            }
            Ok(integral_elements(alg, 0).into_iter().filter(Element::is_unit).collect())
        }
        GroupScope::Generated(gens) => {
            let mut step = Vec::with_capacity(2 * gens.len());
            for g in gens {
                if !g.same_algebra(&Element::one(alg)) {
                    return Err(IdentityError::Precondition(format!("generator {g} is not in {alg}")));
                }
                step.push(g.clone());
                step.push(g.invert()?);
            }
            let one = Element::one(alg);
            let mut seen: HashSet<Element> = HashSet::from([one.clone()]);
            let mut out = vec![one];
            let mut frontier = 0;
            while frontier < out.len() {
                let x = out[frontier].clone();
                frontier += 1;
                for s in &step {
                    let y = &x * s;
                    if seen.insert(y.clone()) {
                        if out.len() as u64 >= cap {
                            return Err(cap_error(format!("more than {cap}"), cap));
                        }
                        out.push(y);
                    }
                }
            }
            Ok(out)
        }
        GroupScope::Sampler { .. } => Err(IdentityError::Unsupported("sampled scopes are not enumerable".into())),
    }
}

/// Multiplicative order of a unit of a finite group, found by powering.
fn element_order(x: &Element) -> u64 {
    let mut p = x.clone();
    let mut k = 1;
    while !p.is_one() {
        p = &p * x;
        k += 1;
    }
    k
}

/// Argument tuples for a scope, produced lazily.
enum Tuples {
    Exhaustive { elems: Vec<Element>, idx: Vec<usize>, done: bool },
    Sampled { alg: Algebra, arity: usize, count: u64, seed: u64, height: u64, next: u64 },
}

impl Tuples {
    fn next(&mut self) -> Option<Result<Vec<Element>, IdentityError>> {
        match self {
            Tuples::Exhaustive { elems, idx, done } => {
                if *done {
                    return None;
                }
                let tuple = idx.iter().map(|&i| elems[i].clone()).collect();
                *done = true;
                for pos in (0..idx.len()).rev() {
                    idx[pos] += 1;
                    if idx[pos] < elems.len() {
                        *done = false;
                        break;
                    }
                    idx[pos] = 0;
                }
                Some(Ok(tuple))
            }
            Tuples::Sampled { alg, arity, count, seed, height, next } => {
                if *next >= *count {
                    return None;
                }
                let tuple = sample_tuple(alg, *arity, *seed, *next, *height, true);
                *next += 1;
                Some(tuple.map_err(IdentityError::from))
            }
        }
    }
}

struct Prepared {
    tuples: Tuples,
    /// Exponent of the scope's group when it is known to be finite.
    exponent_bound: Option<u64>,
}

fn prepare(w: &Monomial, scope: &GroupScope, limits: &CheckLimits, want_exponent: bool) -> Result<Prepared, IdentityError> {
    let alg = w.algebra().clone();
    let arity = w.arity();
    match scope {
        GroupScope::Sampler { count, seed, height } => {
            let exponent_bound = alg.unit_group_order().map(|o| o.to_u64().unwrap_or(u64::MAX));
            Ok(Prepared {
                tuples: Tuples::Sampled { alg, arity, count: *count, seed: *seed, height: *height, next: 0 },
                exponent_bound,
            })
        }
        _ => {
            let elems = enumerate_scope(&alg, scope, limits.enum_cap)?;
            let total = BigUint::from(elems.len()).pow(arity as u32);
            if total > BigUint::from(limits.enum_cap) {
                return Err(cap_error(total, limits.enum_cap));
            }
            let exponent_bound = want_exponent.then(|| {
                elems.iter().map(element_order).fold(1u64, |acc, o| acc.lcm(&o))
            });
            let done = elems.is_empty();
            Ok(Prepared { tuples: Tuples::Exhaustive { elems, idx: vec![0; arity], done }, exponent_bound })
        }
    }
}

fn check_generators(scope: &GroupScope) -> Result<(), IdentityError> {
    if let GroupScope::Generated(gens) = scope {
        if let Some(g) = gens.iter().find(|g| !g.is_unit()) {
            return Err(IdentityError::Precondition(format!("generator {g} is not a unit")));
        }
    }
    Ok(())
}

/// Whether `w(c) = 1` for every tuple of the scope. Stops at the first failure.
pub fn check_ggi(w: &Monomial, scope: &GroupScope, limits: &CheckLimits) -> Result<IdentityReport, IdentityError> {
    check_generators(scope)?;
    let mut prep = prepare(w, scope, limits, false)?;
    let mut tuples = 0;
    while let Some(tuple) = prep.tuples.next() {
        let tuple = tuple?;
        tuples += 1;
        let value = w.evaluate(&tuple)?;
        if !value.is_one() {
            return Ok(IdentityReport {
                mode: Mode::Ggi,
                status: Status::Fails,
                scope: scope.label(),
                seed: scope.seed(),
                tuples,
                p_max: limits.p_max,
                witness: Some(tuple),
                witness_value: Some(value),
                exponents: Vec::new(),
                m: None,
            });
        }
    }
    Ok(IdentityReport {
        mode: Mode::Ggi,
        status: if scope.is_exhaustive() { Status::HoldsExhaustive } else { Status::HoldsOnSample },
        scope: scope.label(),
        seed: scope.seed(),
        tuples,
        p_max: limits.p_max,
        witness: None,
        witness_value: None,
        exponents: Vec::new(),
        m: None,
    })
}

/// Least `p ≤ bound` with `x^p` central.
pub(crate) fn least_central_power(x: &Element, bound: u64) -> Option<u64> {
    let mut power = x.clone();
    for p in 1..=bound {
        if power.is_central() {
            return Some(p);
        }
        power = &power * x;
    }
    None
}

/// Whether every `w(c)` has a central power `w(c)^p` with `p ≤ p_max`.
///
/// On finite groups the bound is raised to the group exponent, so the
/// verdict is exact there. Elsewhere a failure means "no central power up to
/// `p_max`".
pub fn check_gpcgi(w: &Monomial, scope: &GroupScope, limits: &CheckLimits) -> Result<IdentityReport, IdentityError> {
    if limits.p_max == 0 {
        return Err(IdentityError::Precondition("p_max must be at least 1".into()));
    }
    check_generators(scope)?;
    let mut prep = prepare(w, scope, limits, true)?;
    let p_max = prep.exponent_bound.map_or(limits.p_max, |e| e.max(limits.p_max));
    let mut tuples = 0;
    let mut exponents = Vec::new();
    let mut m = BigUint::one();
    while let Some(tuple) = prep.tuples.next() {
        let tuple = tuple?;
        tuples += 1;
        let value = w.evaluate(&tuple)?;
        match least_central_power(&value, p_max) {
            Some(p) => {
                m = m.lcm(&BigUint::from(p));
                exponents.push(p);
            }
            None => {
                return Ok(IdentityReport {
                    mode: Mode::Gpcgi,
                    status: Status::Fails,
                    scope: scope.label(),
                    seed: scope.seed(),
                    tuples,
                    p_max,
                    witness: Some(tuple),
                    witness_value: Some(value),
                    exponents,
                    m: None,
                });
            }
        }
    }
    Ok(IdentityReport {
        mode: Mode::Gpcgi,
        status: if scope.is_exhaustive() { Status::HoldsExhaustive } else { Status::HoldsOnSample },
        scope: scope.label(),
        seed: scope.seed(),
        tuples,
        p_max,
        witness: None,
        witness_value: None,
        exponents,
        m: Some(m),
    })
}
