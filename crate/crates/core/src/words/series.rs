//! Almost normal series shapes and the words `c_r(a,x)`, `u_r(a,x)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::Element;

use super::{Letter, Monomial, WordError, MAX_LETTERS};

/// One step `N_{i-1} ≥ N_i` of an almost normal series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesStep {
    Normal,
    /// Finite index `k`; the word is raised to `k!`.
    FiniteIndex(u32),
}

impl SeriesStep {
    /// `k!` for finite-index steps, `None` on overflow or for normal steps.
    pub fn multiplier(&self) -> Option<u64> {
        match *self {
            SeriesStep::Normal => None,
            SeriesStep::FiniteIndex(k) => (1..=k as u64).try_fold(1u64, |acc, i| acc.checked_mul(i)),
        }
    }
}

impl fmt::Display for SeriesStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesStep::Normal => f.write_str("n"),
            SeriesStep::FiniteIndex(k) => write!(f, "f{k}"),
        }
    }
}

/// Shape of `N = N_r ≤ ⋯ ≤ N_1`: the `r − 1` steps after the first term.
///
/// Text form is a comma-separated list of `n` (normal) and `f<k>`
/// (finite index `k`); `-` or the empty string means `r = 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SeriesDescriptor {
    steps: Vec<SeriesStep>,
}

impl SeriesDescriptor {
    pub fn new(steps: Vec<SeriesStep>) -> Result<Self, WordError> {
        if steps.contains(&SeriesStep::FiniteIndex(0)) {
            return Err(WordError::Series("finite index must be at least 1".into()));
        }
        Ok(Self { steps })
    }

    /// Series of length 1, giving `c_1`.
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn steps(&self) -> &[SeriesStep] {
        &self.steps
    }

    /// The series length `r`.
    pub fn length(&self) -> usize {
        self.steps.len() + 1
    }

    /// Every descriptor with at most `max_steps` steps drawn from `choices`,
    /// shortest first.
    pub fn enumerate(max_steps: usize, choices: &[SeriesStep]) -> Vec<SeriesDescriptor> {
        let mut out = vec![SeriesDescriptor::trivial()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_steps {
            let mut next = Vec::new();
            for prefix in &layer {
                for &c in choices {
                    let mut s: Vec<SeriesStep> = prefix.clone();
                    s.push(c);
                    next.push(s);
                }
            }
            out.extend(next.iter().map(|s| SeriesDescriptor { steps: s.clone() }));
            layer = next;
        }
        out
    }
}

impl FromStr for SeriesDescriptor {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Self::trivial());
        }
        let steps = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                match tok {
                    "n" | "normal" => Ok(SeriesStep::Normal),
                    _ => tok
                        .strip_prefix('f')
                        .and_then(|k| k.parse::<u32>().ok())
                        .map(SeriesStep::FiniteIndex)
                        .ok_or_else(|| WordError::Series(format!("unknown step {tok:?}"))),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(steps)
    }
}

impl fmt::Display for SeriesDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return f.write_str("-");
        }
        let parts: Vec<String> = self.steps.iter().map(SeriesStep::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Letter counts around one recursion step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StepTrace {
    #[serde(serialize_with = "ser_display")]
    pub step: SeriesStep,
    pub letters_before: usize,
    /// After concatenation, before merging letters.
    pub letters_raw: usize,
    pub letters_canonical: usize,
}

fn ser_display<S: serde::Serializer>(v: &SeriesStep, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltWord {
    pub word: Monomial,
    /// Set when the base unit is central, where nothing about the shape is promised.
    pub degenerate: bool,
    pub trace: Vec<StepTrace>,
}

fn c1(a: &Element, a_inv: &Element) -> Result<Monomial, WordError> {
    let one = Element::one(a.algebra());
    Monomial::from_parts(
        vec![a.clone(), a_inv.clone(), one],
        vec![Letter::new(1, 1), Letter::new(1, -1)],
    )
}

/// `c_r(a,x)`: `c_1 = a x a⁻¹ x⁻¹`, then `c ↦ c a c⁻¹ a` for a normal step
/// and `c ↦ c^{k!}` for a step of finite index `k`.
pub fn build_c(a: &Element, series: &SeriesDescriptor) -> Result<BuiltWord, WordError> {
    if !a.is_unit() {
        return Err(WordError::NonUnitCoefficient(a.to_string()));
    }
    let a_inv = a.invert()?;
    let a_word = Monomial::constant(a.clone())?;
    let mut c = c1(a, &a_inv)?;
    let mut trace = Vec::with_capacity(series.steps.len());
    for &step in &series.steps {
        let before = c.letter_count();
        let raw = match step {
            SeriesStep::Normal => {
                let c_inv = c.inverse();
                Monomial::concat_raw([&c, &a_word, &c_inv, &a_word])
            }
            SeriesStep::FiniteIndex(_) => {
                let m = step.multiplier().ok_or(WordError::TooLong(usize::MAX))?;
                let total = (m as u128) * (before as u128);
                if total > MAX_LETTERS as u128 {
                    return Err(WordError::TooLong(total.min(usize::MAX as u128) as usize));
                }
                Monomial::concat_raw(std::iter::repeat_n(&c, m as usize))
            }
        };
        let letters_raw = raw.letter_count();
        c = raw.finish()?;
        trace.push(StepTrace { step, letters_before: before, letters_raw, letters_canonical: c.letter_count() });
    }
    Ok(BuiltWord { word: c, degenerate: a.is_central(), trace })
}

/// `u_r(a,x) = a⁻¹ c_r(a,x)`.
pub fn build_u(a: &Element, series: &SeriesDescriptor) -> Result<BuiltWord, WordError> {
    let built = build_c(a, series)?;
    let prefix = Monomial::constant(a.invert()?)?;
    Ok(BuiltWord { word: prefix.multiply(&built.word)?, ..built })
}

/// Whether `w = a^{n_1} x^{m_1} a^{n_2} x^{m_2} ⋯ a^{n_t} x^{m_t}` with all
/// `n_j, m_j ∈ {1, −1}` and `n_1 = 1`, for the base unit `a`.
pub fn check_star_form(w: &Monomial, a: &Element) -> bool {
    let Ok(a_inv) = a.invert() else {
        return false;
    };
    let coeffs = w.coeffs();
    let letters = w.letters();
    !letters.is_empty()
        && letters.iter().all(|l| l.var == 1 && l.exp.abs() == 1)
        && coeffs[0] == *a
        && coeffs[1..letters.len()].iter().all(|c| c == a || *c == a_inv)
        && coeffs[letters.len()].is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_literal, AlgebraSpec};
    use std::collections::BTreeMap;

    fn i_unit() -> Element {
        parse_literal(&AlgebraSpec::hamilton(), "[0,1,0,0]").unwrap()
    }

    fn names(a: &Element) -> BTreeMap<String, Element> {
        BTreeMap::from([("a".to_string(), a.clone())])
    }

    #[test]
    fn descriptor_text() {
        let s: SeriesDescriptor = "n, f2,normal,f3".parse().unwrap();
        assert_eq!(s.to_string(), "n,f2,n,f3");
        assert_eq!(s.length(), 5);
        assert_eq!("".parse::<SeriesDescriptor>().unwrap(), SeriesDescriptor::trivial());
        assert_eq!(SeriesDescriptor::trivial().to_string(), "-");
        assert!("f0".parse::<SeriesDescriptor>().is_err());
        assert!("q".parse::<SeriesDescriptor>().is_err());
        assert_eq!(SeriesStep::FiniteIndex(3).multiplier(), Some(6));
    }

    #[test]
    fn enumeration_counts() {
        let all = SeriesDescriptor::enumerate(
            4,
            &[SeriesStep::Normal, SeriesStep::FiniteIndex(1), SeriesStep::FiniteIndex(2), SeriesStep::FiniteIndex(3)],
        );
        assert_eq!(all.len(), 1 + 4 + 16 + 64 + 256);
    }

    #[test]
    fn c1_shape() {
        let a = i_unit();
        let b = build_c(&a, &SeriesDescriptor::trivial()).unwrap();
        assert_eq!(b.word.to_dsl(&names(&a)), "@a * x1 * @a^-1 * x1^-1");
        assert!(!b.degenerate);
        assert!(check_star_form(&b.word, &a));
    }

    #[test]
    fn normal_step_matches_expansion() {
        let a = i_unit();
        let b = build_c(&a, &"n".parse().unwrap()).unwrap();
        // a x a⁻¹ x⁻¹ · a · x a x⁻¹ a⁻¹ · a, trailing a⁻¹a fused
        assert_eq!(b.word.to_dsl(&names(&a)), "@a * x1 * @a^-1 * x1^-1 * @a * x1 * @a * x1^-1");
        assert_eq!(b.trace[0].letters_raw, 4);
    }

    #[test]
    fn finite_index_step_is_a_power() {
        let a = i_unit();
        let b = build_c(&a, &"f2".parse().unwrap()).unwrap();
        let c1 = build_c(&a, &SeriesDescriptor::trivial()).unwrap().word;
        assert_eq!(b.word, c1.pow(2).unwrap());
        assert_eq!(b.trace[0].letters_raw, 4);
    }

    #[test]
    fn u1_for_i() {
        let a = i_unit();
        let u = build_u(&a, &SeriesDescriptor::trivial()).unwrap().word;
        assert_eq!(u.to_dsl(&names(&a)), "x1 * @a^-1 * x1^-1");
        assert_eq!(u.first_letter().unwrap().var, 1);
    }

    #[test]
    fn central_base_is_flagged() {
        let h = AlgebraSpec::hamilton();
        let b = build_c(&Element::from_int(&h, 2), &"n".parse().unwrap()).unwrap();
        assert!(b.degenerate);
        assert!(build_c(&Element::zero(&h), &SeriesDescriptor::trivial()).is_err());
    }

    #[test]
    fn star_form_negatives() {
        let a = i_unit();
        let h = a.algebra().clone();
        let one = Element::one(&h);
        let a2x = Monomial::from_parts(vec![&a * &a, one.clone()], vec![Letter::new(1, 1)]).unwrap();
        assert!(!check_star_form(&a2x, &a));
        let xa = Monomial::from_parts(vec![one, a.clone()], vec![Letter::new(1, 1)]).unwrap();
        assert!(!check_star_form(&xa, &a));
    }

    #[test]
    fn oversized_factorial_refused() {
        let a = i_unit();
        assert!(matches!(build_c(&a, &"f12".parse().unwrap()), Err(WordError::TooLong(_))));
    }
}
