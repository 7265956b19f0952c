//! Monomial DSL.
//!
//! ```text
//! expr   := factor ('*' factor)*
//! factor := '@' name ('^' int)? | 'x' int ('^' int)? | '{' literal '}' ('^' int)?
//! ```
//!
//! Whitespace is insignificant. `{literal}` writes a coefficient inline using
//! the element literal grammar.

use std::collections::BTreeMap;

use crate::algebra::{literal, Algebra, Element};

use super::{Letter, Monomial, WordError};

struct Parser<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
}

enum Factor {
    Coeff(Element),
    Letter(Letter),
}

impl<'a> Parser<'a> {
    fn err(&self, pos: usize, msg: impl Into<String>) -> WordError {
        WordError::Syntax { pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn int(&mut self) -> Result<i64, WordError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if digits == self.pos {
            return Err(self.err(start, "expected an integer"));
        }
        self.text[start..self.pos]
            .trim_start_matches('+')
            .parse()
            .map_err(|_| self.err(start, "integer out of range"))
    }

    fn exponent(&mut self) -> Result<i64, WordError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let at = {
            self.skip_ws();
            self.pos
        };
        let e = self.int()?;
        if e == 0 {
            return Err(self.err(at, "zero exponent"));
        }
        Ok(e)
    }

    fn coefficient_power(&self, c: &Element, e: i64, at: usize) -> Result<Element, WordError> {
        if !c.is_unit() {
            return Err(WordError::NonUnitCoefficient(c.to_string()));
        }
        c.pow(e).map_err(|_| self.err(at, "exponent out of range"))
    }

    fn factor(
        &mut self,
        alg: &Algebra,
        constants: &BTreeMap<String, Element>,
    ) -> Result<Factor, WordError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'@') => {
                self.pos += 1;
                let name_start = self.pos;
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
                {
                    self.pos += 1;
                }
                if name_start == self.pos {
                    return Err(self.err(name_start, "expected a constant name"));
                }
                let name = &self.text[name_start..self.pos];
                let value = constants
                    .get(name)
                    .ok_or_else(|| WordError::UnknownConstant(name.to_string()))?;
                if !value.same_algebra(&Element::one(alg)) {
                    return Err(self.err(start, format!("constant @{name} lives in another algebra")));
                }
                let e = self.exponent()?;
                Ok(Factor::Coeff(self.coefficient_power(value, e, start)?))
            }
            Some(b'{') => {
                self.pos += 1;
                let (node, used) = literal::parse_node(&self.text[self.pos..], self.pos)
                    .map_err(|e| match e {
                        crate::algebra::AlgebraError::Literal { pos, msg } => self.err(pos, msg),
                        other => WordError::Algebra(other),
                    })?;
                self.pos += used;
                if self.peek() != Some(b'}') {
                    return Err(self.err(self.pos, "expected '}'"));
                }
                self.pos += 1;
                let value = literal::elaborate(alg, &node).map_err(|e| match e {
                    crate::algebra::AlgebraError::Literal { pos, msg } => self.err(pos, msg),
                    other => WordError::Algebra(other),
                })?;
                let e = self.exponent()?;
                Ok(Factor::Coeff(self.coefficient_power(&value, e, start)?))
            }
            Some(b'x') => {
                self.pos += 1;
                let idx_start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                if idx_start == self.pos {
                    return Err(self.err(idx_start, "expected an indeterminate index"));
                }
                let var: usize = self.text[idx_start..self.pos]
                    .parse()
                    .map_err(|_| self.err(idx_start, "index out of range"))?;
                if var == 0 {
                    return Err(self.err(idx_start, "indeterminate indices start at 1"));
                }
                let e = self.exponent()?;
                Ok(Factor::Letter(Letter::new(var, e)))
            }
            Some(_) => Err(self.err(start, "expected '@name', 'x<index>' or '{literal}'")),
            None => Err(self.err(start, "unexpected end of input")),
        }
    }
}

/// Parse a monomial over `alg`, resolving `@name` against `constants`.
///
/// The result is canonical and must contain at least one indeterminate.
pub fn parse_monomial(
    alg: &Algebra,
    text: &str,
    constants: &BTreeMap<String, Element>,
) -> Result<Monomial, WordError> {
    let mut p = Parser { src: text.as_bytes(), text, pos: 0 };
    let mut coeffs = vec![Element::one(alg)];
    let mut letters = Vec::new();
    loop {
        match p.factor(alg, constants)? {
            Factor::Coeff(c) => {
                let last = coeffs.last_mut().expect("nonempty");
                *last = &*last * &c;
            }
            Factor::Letter(l) => {
                letters.push(l);
                coeffs.push(Element::one(alg));
            }
        }
        match p.peek() {
            Some(b'*') => p.pos += 1,
            None => break,
            Some(_) => return Err(p.err(p.pos, "expected '*' or end of input")),
        }
    }
    let w = Monomial::from_parts(coeffs, letters)?;
    if w.is_coefficient_only() {
        return Err(WordError::NoIndeterminate);
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_literal, AlgebraSpec};

    fn quats() -> (Algebra, BTreeMap<String, Element>) {
        let h = AlgebraSpec::hamilton();
        let consts = BTreeMap::from([
            ("a".to_string(), parse_literal(&h, "[0,1,0,0]").unwrap()),
            ("b".to_string(), parse_literal(&h, "[0,0,1,0]").unwrap()),
            ("z".to_string(), Element::zero(&h)),
        ]);
        (h, consts)
    }

    #[test]
    fn parses_commutator() {
        let (h, c) = quats();
        let w = parse_monomial(&h, "@a * x1 * @a^-1 * x1^-1", &c).unwrap();
        assert_eq!(w.letters(), &[Letter::new(1, 1), Letter::new(1, -1)]);
        assert_eq!(w.coeffs()[0], c["a"]);
        assert_eq!(w.coeffs()[1], c["a"].invert().unwrap());
        assert!(w.coeffs()[2].is_one());
        assert_eq!(w.to_dsl(&c), "@a * x1 * @a^-1 * x1^-1");
    }

    #[test]
    fn rejections() {
        let (h, c) = quats();
        assert!(matches!(parse_monomial(&h, "x1^0", &c), Err(WordError::Syntax { pos: 3, .. })));
        assert_eq!(parse_monomial(&h, "@a * @b", &c), Err(WordError::NoIndeterminate));
        assert_eq!(parse_monomial(&h, "x1 * x1^-1", &c), Err(WordError::NoIndeterminate));
        assert_eq!(parse_monomial(&h, "@q * x1", &c), Err(WordError::UnknownConstant("q".into())));
        assert!(matches!(parse_monomial(&h, "@z * x1", &c), Err(WordError::NonUnitCoefficient(_))));
        assert!(matches!(parse_monomial(&h, "x0", &c), Err(WordError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_monomial(&h, "x1 x2", &c), Err(WordError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_monomial(&h, "x1 *", &c), Err(WordError::Syntax { .. })));
        assert!(matches!(parse_monomial(&h, "{[0,1,0]} * x1", &c), Err(WordError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_monomial(&h, "{[0,1,0,0 * x1", &c), Err(WordError::Syntax { .. })));
    }

    #[test]
    fn adjacent_coefficients_fuse_and_letters_merge() {
        let (h, c) = quats();
        let w = parse_monomial(&h, " @a*@b * x2 ^ 2 * x2^-1 * {[0,0,0,1]} ", &c).unwrap();
        // ij = k; x2^2 x2^-1 = x2
        assert_eq!(w.to_string(), "{[0,0,0,1]} * x2 * {[0,0,0,1]}");
        assert_eq!(w.arity(), 2);
    }

    #[test]
    fn inline_literals_round_trip() {
        let (h, c) = quats();
        let w = parse_monomial(&h, "{[1/2, 1/2, 1/2, 1/2]} * x1^3 * {-2}", &c).unwrap();
        let printed = w.to_string();
        assert_eq!(printed, "{[1/2,1/2,1/2,1/2]} * x1^3 * {[-2,0,0,0]}");
        assert_eq!(parse_monomial(&h, &printed, &c).unwrap(), w);
    }
}
