//! Witness pairs `x = c_r(u,v)`, `y = c_r(u,v²)` and bounded searches for
//! relations among them.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{integral_elements, is_torsion, AlgebraError, Element};
use crate::words::{build_c, Monomial, SeriesDescriptor, WordError};

pub const DEFAULT_MAX_LENGTH: u32 = 6;
pub const DEFAULT_WORD_CAP: u64 = 100_000;
pub const DEFAULT_BIT_CAP: u64 = 4096;
/// Orders of torsion units of the supported quaternion and matrix algebras
/// over `ℚ` that matter here are tiny; this bound only guards the powering.
const TORSION_BOUND: u64 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreenessError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{words} words exceed the cap of {cap}")]
    Budget { words: u64, cap: u64 },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Generator letters: `x`, `x⁻¹`, `y`, `y⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    X,
    XInv,
    Y,
    YInv,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::X, Gen::XInv, Gen::Y, Gen::YInv];

    pub fn inverse(self) -> Gen {
        match self {
            Gen::X => Gen::XInv,
            Gen::XInv => Gen::X,
            Gen::Y => Gen::YInv,
            Gen::YInv => Gen::Y,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Gen::X => 'x',
            Gen::XInv => 'X',
            Gen::Y => 'y',
            Gen::YInv => 'Y',
        }
    }
}

/// A freely reduced word in `x^{±1}, y^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWord(pub Vec<Gen>);

impl GroupWord {
    pub fn parse(text: &str) -> Option<GroupWord> {
        text.chars()
            .map(|c| match c {
                'x' => Some(Gen::X),
                'X' => Some(Gen::XInv),
                'y' => Some(Gen::Y),
                'Y' => Some(Gen::YInv),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(GroupWord)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[1] != w[0].inverse())
    }

    pub fn evaluate(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        let table = [x.clone(), x.invert()?, y.clone(), y.invert()?];
        Ok(self.0.iter().fold(Element::one(x.algebra()), |acc, g| &acc * &table[*g as usize]))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|g| write!(f, "{}", g.symbol()))
    }
}

/// Number of freely reduced words of length `ℓ ≥ 1`: `4·3^{ℓ−1}`.
pub fn reduced_word_count(length: u32) -> u64 {
    4 * 3u64.pow(length - 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witnesses {
    pub x: Element,
    pub y: Element,
    /// The word `c_r(u, ·)` evaluated at `v` and `v²`.
    pub word: Monomial,
    pub commute: bool,
}

/// `x = c_r(u, v)` and `y = c_r(u, v²)`.
pub fn build_witnesses(u: &Element, v: &Element, series: &SeriesDescriptor) -> Result<Witnesses, FreenessError> {
    if !u.is_unit() || u.is_central() {
        return Err(FreenessError::Precondition(format!("u = {u} must be a non-central unit")));
    }
    if !v.is_unit() {
        return Err(AlgebraError::NotInvertible(v.to_string()).into());
    }
    let word = build_c(u, series)?.word;
    let x = word.evaluate(std::slice::from_ref(v))?;
    let y = word.evaluate(&[v * v])?;
    let commute = &x * &y == &y * &x;
    Ok(Witnesses { x, y, word, commute })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    RelationFound { word: String },
    /// Some words were skipped for exceeding the coordinate bit budget, so no verdict.
    BudgetTruncated { skipped: u64 },
    NoRelationUpTo { length: u32 },
}

impl Verdict {
    /// Sort key: stronger evidence of freeness first.
    fn rank(&self) -> u8 {
        match self {
            Verdict::NoRelationUpTo { .. } => 0,
            Verdict::BudgetTruncated { .. } => 1,
            Verdict::RelationFound { .. } => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub u: String,
    pub v: String,
    pub series: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessCertificate {
    pub x: String,
    pub y: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    pub max_length: u32,
    pub verdict: Verdict,
    pub words_tested: u64,
    /// `xy = yx`, or one generator has finite order: the pair cannot be free.
    pub degenerate: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_length: u32,
    pub word_cap: u64,
    pub bit_cap: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self { max_length: DEFAULT_MAX_LENGTH, word_cap: DEFAULT_WORD_CAP, bit_cap: DEFAULT_BIT_CAP }
    }
}

/// Evaluate every freely reduced word of length `1..=L` in lexicographic
/// order (`x < X < y < Y`, shorter first) and stop at the first that equals 1.
pub fn relation_search(x: &Element, y: &Element, limits: &SearchLimits) -> Result<FreenessCertificate, FreenessError> {
    if limits.max_length == 0 {
        return Err(FreenessError::Precondition("the maximum length must be at least 1".into()));
    }
    if !x.same_algebra(y) {
        return Err(AlgebraError::SpecMismatch { lhs: x.algebra().to_string(), rhs: y.algebra().to_string() }.into());
    }
    let total: u64 = (1..=limits.max_length).map(reduced_word_count).sum();
    if total > limits.word_cap {
        return Err(FreenessError::Budget { words: total, cap: limits.word_cap });
    }
    let table = [x.clone(), x.invert()?, y.clone(), y.invert()?];
    let degenerate = &table[0] * &table[2] == &table[2] * &table[0]
        || is_torsion(x, TORSION_BOUND).is_some()
        || is_torsion(y, TORSION_BOUND).is_some();
    let certificate = |verdict: Verdict, words_tested: u64| FreenessCertificate {
        x: x.to_string(),
        y: y.to_string(),
        provenance: None,
        max_length: limits.max_length,
        verdict,
        words_tested,
        degenerate,
    };
    let mut level: Vec<(Vec<Gen>, Element)> = vec![(Vec::new(), Element::one(x.algebra()))];
    let mut tested = 0u64;
    let mut skipped = 0u64;
    for length in 1..=limits.max_length {
        let mut next = Vec::with_capacity(level.len() * 3);
        for (word, value) in &level {
            for g in Gen::ALL {
                if word.last() == Some(&g.inverse()) {
                    continue;
                }
                let v = value * &table[g as usize];
                tested += 1;
                let mut w = word.clone();
                w.push(g);
                if v.is_one() {
                    return Ok(certificate(Verdict::RelationFound { word: GroupWord(w).to_string() }, tested));
                }
                if v.bit_size() > limits.bit_cap {
                    // The word itself was evaluated exactly; its extensions never are.
                    skipped += (1..=limits.max_length - length).map(|k| 3u64.pow(k)).sum::<u64>();
                    continue;
                }
                if length < limits.max_length {
                    next.push((w, v));
                }
            }
        }
        level = next;
    }
    let verdict = if skipped > 0 {
        Verdict::BudgetTruncated { skipped }
    } else {
        Verdict::NoRelationUpTo { length: limits.max_length }
    };
    Ok(certificate(verdict, tested))
}

/// Scan integral units `v` of height ≤ `height` that are not torsion, build
/// the witnesses for each and search for relations. Certificates come back
/// ordered by verdict strength, then by scan order.
pub fn torsion_partner_scan(
    u: &Element,
    height: u64,
    series: &SeriesDescriptor,
    limits: &SearchLimits,
) -> Result<Vec<FreenessCertificate>, FreenessError> {
    if !u.is_unit() || u.is_central() {
        return Err(FreenessError::Precondition(format!("u = {u} must be a non-central unit")));
    }
    let total: u64 = (1..=limits.max_length.max(1)).map(reduced_word_count).sum();
    if total > limits.word_cap {
        return Err(FreenessError::Budget { words: total, cap: limits.word_cap });
    }
    let mut out = Vec::new();
    if height == 0 && !u.algebra().center().is_finite() {
        return Ok(out);
    }
    for v in integral_elements(u.algebra(), height) {
        if !v.is_unit() || is_torsion(&v, TORSION_BOUND).is_some() {
            continue;
        }
        let w = build_witnesses(u, &v, series)?;
        let mut cert = relation_search(&w.x, &w.y, limits)?;
        cert.degenerate |= w.commute;
        cert.provenance = Some(Provenance { u: u.to_string(), v: v.to_string(), series: series.to_string() });
        out.push(cert);
    }
    out.sort_by_key(|c| c.verdict.rank());
    Ok(out)
}
