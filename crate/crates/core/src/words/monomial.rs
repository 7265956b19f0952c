use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Algebra, Element};

use super::WordError;

/// Words longer than this are refused rather than built.
pub const MAX_LETTERS: usize = 1 << 20;

/// One indeterminate power `x_var^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    /// 1-based indeterminate index.
    pub var: usize,
    pub exp: i64,
}

impl Letter {
    pub fn new(var: usize, exp: i64) -> Self {
        Self { var, exp }
    }
}

/// A generalized group monomial `a_1 x_{i_1}^{n_1} a_2 ⋯ a_t x_{i_t}^{n_t} a_{t+1}`
/// with unit coefficients, kept in canonical form.
///
/// Canonical form merges `x_i^n · 1 · x_i^m` into `x_i^{n+m}` (dropping the
/// letter when the sum is zero and fusing the neighbouring coefficients).
/// Coefficients are never moved past letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    /// `letters.len() + 1` unit coefficients.
    coeffs: Vec<Element>,
    letters: Vec<Letter>,
}

impl Monomial {
    /// Build from interleaved parts and canonicalize. Zero exponents are dropped.
    pub fn from_parts(coeffs: Vec<Element>, letters: Vec<Letter>) -> Result<Self, WordError> {
        if coeffs.len() != letters.len() + 1 {
            return Err(WordError::Shape(format!(
                "{} coefficients for {} letters",
                coeffs.len(),
                letters.len()
            )));
        }
        let alg = coeffs[0].algebra().clone();
        for c in &coeffs {
            if !c.same_algebra(&coeffs[0]) {
                return Err(WordError::Algebra(crate::algebra::AlgebraError::SpecMismatch {
                    lhs: alg.to_string(),
                    rhs: c.algebra().to_string(),
                }));
            }
            if !c.is_unit() {
                return Err(WordError::NonUnitCoefficient(c.to_string()));
            }
        }
        if let Some(l) = letters.iter().find(|l| l.var == 0) {
            return Err(WordError::Shape(format!("indeterminate index must be ≥ 1, got {}", l.var)));
        }
        Ok(Self::canonical(coeffs, letters))
    }

    /// The coefficient-only word `c`.
    pub fn constant(c: Element) -> Result<Self, WordError> {
        Self::from_parts(vec![c], Vec::new())
    }

    /// The word `x_var`.
    pub fn var(alg: &Algebra, var: usize) -> Result<Self, WordError> {
        let one = Element::one(alg);
        Self::from_parts(vec![one.clone(), one], vec![Letter::new(var, 1)])
    }

    pub fn one(alg: &Algebra) -> Self {
        Self { coeffs: vec![Element::one(alg)], letters: Vec::new() }
    }

    /// Stack-based free reduction; coefficients between letters must be
    /// exactly 1 for a merge.
    fn canonical(coeffs: Vec<Element>, letters: Vec<Letter>) -> Self {
        let mut coeffs = coeffs.into_iter();
        let mut out_c: Vec<Element> = vec![coeffs.next().expect("at least one coefficient")];
        let mut out_l: Vec<Letter> = Vec::with_capacity(letters.len());
        for (letter, next) in letters.into_iter().zip(coeffs) {
            if letter.exp == 0 {
                let last = out_c.pop().expect("nonempty");
                out_c.push(&last * &next);
                continue;
            }
            let mergeable = out_c.last().is_some_and(Element::is_one)
                && out_l.last().is_some_and(|l| l.var == letter.var);
            if !mergeable {
                out_l.push(letter);
                out_c.push(next);
                continue;
            }
            out_c.pop();
            let top = out_l.last_mut().expect("checked above");
            top.exp += letter.exp;
            if top.exp == 0 {
                out_l.pop();
                let before = out_c.pop().expect("coefficient before the cancelled letter");
                out_c.push(&before * &next);
            } else {
                out_c.push(next);
            }
        }
        Self { coeffs: out_c, letters: out_l }
    }

    /// Concatenation with coefficient fusion at the seams but no letter merging.
    pub(crate) fn concat_raw<'a>(parts: impl IntoIterator<Item = &'a Monomial>) -> RawWord {
        let mut coeffs: Vec<Element> = Vec::new();
        let mut letters = Vec::new();
        for part in parts {
            match coeffs.pop() {
                None => coeffs.extend(part.coeffs.iter().cloned()),
                Some(last) => {
                    coeffs.push(&last * &part.coeffs[0]);
                    coeffs.extend(part.coeffs[1..].iter().cloned());
                }
            }
            letters.extend_from_slice(&part.letters);
        }
        RawWord { coeffs, letters }
    }

    pub fn algebra(&self) -> &Algebra {
        self.coeffs[0].algebra()
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    /// Number of indeterminates `m`: the largest index that occurs.
    pub fn arity(&self) -> usize {
        self.letters.iter().map(|l| l.var).max().unwrap_or(0)
    }

    pub fn is_coefficient_only(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty() && self.coeffs[0].is_one()
    }

    pub fn first_letter(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last_letter(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// Product `a_1 a_2 ⋯ a_{t+1}` of the coefficients, i.e. `w(1, …, 1)`.
    pub fn coefficient_product(&self) -> Element {
        self.coeffs[1..].iter().fold(self.coeffs[0].clone(), |acc, c| &acc * c)
    }

    pub fn multiply(&self, other: &Monomial) -> Result<Monomial, WordError> {
        if !self.coeffs[0].same_algebra(&other.coeffs[0]) {
            return Err(WordError::Algebra(crate::algebra::AlgebraError::SpecMismatch {
                lhs: self.algebra().to_string(),
                rhs: other.algebra().to_string(),
            }));
        }
        Monomial::concat_raw([self, other]).finish()
    }

    /// Reverse, invert coefficients and negate exponents.
    pub fn inverse(&self) -> Monomial {
        let coeffs = self
            .coeffs
            .iter()
            .rev()
            .map(|c| c.invert().expect("coefficients are units"))
            .collect();
        let letters = self.letters.iter().rev().map(|l| Letter::new(l.var, -l.exp)).collect();
        // Reversal preserves canonical form.
        Monomial { coeffs, letters }
    }

    pub fn pow(&self, e: i64) -> Result<Monomial, WordError> {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let n = e.unsigned_abs() as usize;
        if n.saturating_mul(base.letters.len()) > MAX_LETTERS {
            return Err(WordError::TooLong(n.saturating_mul(base.letters.len())));
        }
        if n == 0 {
            return Ok(Monomial::one(self.algebra()));
        }
        Monomial::concat_raw(std::iter::repeat_n(&base, n)).finish()
    }

    /// Replace every `x_i^n` by `image(i)^n`.
    pub fn substitute(&self, map: &BTreeMap<usize, Monomial>) -> Result<Monomial, WordError> {
        let mut pieces: Vec<Monomial> = Vec::with_capacity(2 * self.letters.len() + 1);
        pieces.push(Monomial { coeffs: vec![self.coeffs[0].clone()], letters: Vec::new() });
        for (letter, coeff) in self.letters.iter().zip(&self.coeffs[1..]) {
            let image = map.get(&letter.var).ok_or(WordError::MissingSubstitution(letter.var))?;
            if !image.coeffs[0].same_algebra(&self.coeffs[0]) {
                return Err(WordError::Algebra(crate::algebra::AlgebraError::SpecMismatch {
                    lhs: self.algebra().to_string(),
                    rhs: image.algebra().to_string(),
                }));
            }
            pieces.push(image.pow(letter.exp)?);
            pieces.push(Monomial { coeffs: vec![coeff.clone()], letters: Vec::new() });
        }
        let total: usize = pieces.iter().map(|p| p.letters.len()).sum();
        if total > MAX_LETTERS {
            return Err(WordError::TooLong(total));
        }
        Monomial::concat_raw(&pieces).finish()
    }

    /// Exact evaluation at a tuple of algebra elements (`args[i-1]` for `x_i`).
    pub fn evaluate(&self, args: &[Element]) -> Result<Element, WordError> {
        if args.len() < self.arity() {
            return Err(WordError::ArityMismatch { expected: self.arity(), got: args.len() });
        }
        let mut inverses: Vec<Option<Element>> = vec![None; args.len()];
        let mut acc = self.coeffs[0].clone();
        for (letter, coeff) in self.letters.iter().zip(&self.coeffs[1..]) {
            let idx = letter.var - 1;
            if !args[idx].same_algebra(&acc) {
                return Err(WordError::Algebra(crate::algebra::AlgebraError::SpecMismatch {
                    lhs: acc.algebra().to_string(),
                    rhs: args[idx].algebra().to_string(),
                }));
            }
            let base = if letter.exp < 0 {
                if inverses[idx].is_none() {
                    inverses[idx] = Some(args[idx].invert()?);
                }
                inverses[idx].as_ref().expect("just filled")
            } else {
                &args[idx]
            };
            for _ in 0..letter.exp.unsigned_abs() {
                acc = &acc * base;
            }
            acc = &acc * coeff;
        }
        Ok(acc)
    }

    /// DSL text, naming coefficients from `names` (or their inverses) where
    /// possible and writing other coefficients as inline `{literal}` factors.
    pub fn to_dsl(&self, names: &BTreeMap<String, Element>) -> String {
        let mut parts = Vec::new();
        let push_coeff = |c: &Element, parts: &mut Vec<String>| {
            if c.is_one() {
                return;
            }
            if let Some((name, _)) = names.iter().find(|(_, v)| *v == c) {
                parts.push(format!("@{name}"));
                return;
            }
            let inverse_of = names.iter().find(|(_, v)| v.invert().is_ok_and(|vi| &vi == c));
            match inverse_of {
                Some((name, _)) => parts.push(format!("@{name}^-1")),
                None => parts.push(format!("{{{c}}}")),
            }
        };
        push_coeff(&self.coeffs[0], &mut parts);
        for (letter, coeff) in self.letters.iter().zip(&self.coeffs[1..]) {
            parts.push(if letter.exp == 1 {
                format!("x{}", letter.var)
            } else {
                format!("x{}^{}", letter.var, letter.exp)
            });
            push_coeff(coeff, &mut parts);
        }
        if parts.is_empty() {
            return format!("{{{}}}", self.coeffs[0]);
        }
        parts.join(" * ")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dsl(&BTreeMap::new()))
    }
}

/// A concatenation whose letters have not been merged yet.
pub(crate) struct RawWord {
    pub coeffs: Vec<Element>,
    pub letters: Vec<Letter>,
}

impl RawWord {
    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    pub fn finish(self) -> Result<Monomial, WordError> {
        if self.letters.len() > MAX_LETTERS {
            return Err(WordError::TooLong(self.letters.len()));
        }
        Ok(Monomial::canonical(self.coeffs, self.letters))
    }
}
