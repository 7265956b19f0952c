//! Element literals.
//!
//! ```text
//! literal  := atom | '[' literal (',' literal)* ']'
//! atom     := ['-'|'+'] digits ['/' digits]
//! ```
//!
//! How a literal is read depends on the algebra: rationals are atoms,
//! finite-field residues are an integer (prime-field embedding) or a
//! coefficient vector `[c_0,…,c_{k-1}]` in the polynomial basis,
//! quaternions are `[w,x,y,z]`, and matrices are row-major nested arrays
//! of inner literals. A bare atom is accepted anywhere as a central scalar.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::scalar::fmt_rational;
use super::{Algebra, AlgebraError, AlgebraSpec, Element, Value};

/// Untyped literal syntax tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiteralNode {
    Atom { value: BigRational, pos: usize },
    List { items: Vec<LiteralNode>, pos: usize },
}

impl LiteralNode {
    fn pos(&self) -> usize {
        match self {
            LiteralNode::Atom { pos, .. } | LiteralNode::List { pos, .. } => *pos,
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    base: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, msg: impl Into<String>) -> AlgebraError {
        AlgebraError::Literal { pos: self.base + self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt, AlgebraError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit run parses"))
    }

    fn node(&mut self) -> Result<LiteralNode, AlgebraError> {
        let pos = {
            self.skip_ws();
            self.base + self.pos
        };
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let mut items = vec![self.node()?];
                loop {
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            items.push(self.node()?);
                        }
                        Some(b']') => {
                            self.pos += 1;
                            return Ok(LiteralNode::List { items, pos });
                        }
                        _ => return Err(self.err("expected ',' or ']'")),
                    }
                }
            }
            Some(c) if c == b'-' || c == b'+' || c.is_ascii_digit() => {
                let negative = c == b'-';
                if !c.is_ascii_digit() {
                    self.pos += 1;
                }
                let num = self.digits()?;
                let den = if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let d = self.digits()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                let num = if negative { -num } else { num };
                Ok(LiteralNode::Atom { value: BigRational::new(num, den), pos })
            }
            Some(_) => Err(self.err("expected a number or '['")),
            None => Err(self.err("unexpected end of literal")),
        }
    }
}

/// Parse literal syntax without interpreting it. `base` offsets reported positions.
pub fn parse_node(text: &str, base: usize) -> Result<(LiteralNode, usize), AlgebraError> {
    let mut lx = Lexer { src: text.as_bytes(), pos: 0, base };
    let node = lx.node()?;
    lx.skip_ws();
    Ok((node, lx.pos))
}

/// Parse a complete element literal for `alg`.
pub fn parse_literal(alg: &Algebra, text: &str) -> Result<Element, AlgebraError> {
    let (node, used) = parse_node(text, 0)?;
    if used != text.len() {
        return Err(AlgebraError::Literal { pos: used, msg: "trailing input".into() });
    }
    elaborate(alg, &node)
}

pub(crate) fn elaborate(alg: &Algebra, node: &LiteralNode) -> Result<Element, AlgebraError> {
    Ok(Element::from_value(alg, elaborate_value(alg, node)?))
}

fn shape_err(node: &LiteralNode, msg: String) -> AlgebraError {
    AlgebraError::Literal { pos: node.pos(), msg }
}

fn elaborate_value(spec: &AlgebraSpec, node: &LiteralNode) -> Result<Value, AlgebraError> {
    if let LiteralNode::Atom { value, pos } = node {
        let alg = std::sync::Arc::new(spec.clone());
        return Element::from_rational(&alg, value)
            .map(|e| e.val)
            .map_err(|e| AlgebraError::Literal { pos: *pos, msg: e.to_string() });
    }
    let LiteralNode::List { items, .. } = node else { unreachable!() };
    match spec {
        AlgebraSpec::Rational => Err(shape_err(node, "a rational literal is a single number".into())),
        AlgebraSpec::FiniteField(gf) => {
            if items.len() != gf.degree() {
                return Err(shape_err(
                    node,
                    format!("expected {} coefficients, got {}", gf.degree(), items.len()),
                ));
            }
            let mut coeffs = Vec::with_capacity(items.len());
            for item in items {
                let LiteralNode::Atom { value, .. } = item else {
                    return Err(shape_err(item, "coefficients must be integers".into()));
                };
                if !value.is_integer() {
                    return Err(shape_err(item, "coefficients must be integers".into()));
                }
                let p = BigInt::from(gf.characteristic());
                let r = ((value.numer() % &p) + &p) % &p;
                coeffs.push(u64::try_from(r).expect("residue below p"));
            }
            Ok(Value::Gf(coeffs))
        }
        AlgebraSpec::Quaternion { .. } => {
            if items.len() != 4 {
                return Err(shape_err(node, format!("expected 4 coordinates, got {}", items.len())));
            }
            let mut coords: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
            for (slot, item) in coords.iter_mut().zip(items) {
                let LiteralNode::Atom { value, .. } = item else {
                    return Err(shape_err(item, "coordinates must be rational numbers".into()));
                };
                *slot = value.clone();
            }
            Ok(Value::Quat(Box::new(coords)))
        }
        AlgebraSpec::Matrix { n, inner } => {
            if items.len() != *n {
                return Err(shape_err(node, format!("expected {n} rows, got {}", items.len())));
            }
            let mut entries = Vec::with_capacity(n * n);
            for row in items {
                let LiteralNode::List { items: cells, .. } = row else {
                    return Err(shape_err(row, "each row must be a list".into()));
                };
                if cells.len() != *n {
                    return Err(shape_err(row, format!("expected {n} entries, got {}", cells.len())));
                }
                for cell in cells {
                    entries.push(elaborate_value(inner, cell)?);
                }
            }
            Ok(Value::Mat(entries))
        }
    }
}

pub(crate) fn format_value(spec: &AlgebraSpec, val: &Value) -> String {
    match (spec, val) {
        (_, Value::Rat(r)) => fmt_rational(r),
        (_, Value::Gf(c)) if c.len() == 1 => c[0].to_string(),
        (_, Value::Gf(c)) => {
            let parts: Vec<String> = c.iter().map(u64::to_string).collect();
            format!("[{}]", parts.join(","))
        }
        (_, Value::Quat(q)) => {
            let parts: Vec<String> = q.iter().map(fmt_rational).collect();
            format!("[{}]", parts.join(","))
        }
        (AlgebraSpec::Matrix { n, inner }, Value::Mat(m)) => {
            let rows: Vec<String> = m
                .chunks(*n)
                .map(|row| {
                    let cells: Vec<String> = row.iter().map(|e| format_value(inner, e)).collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        }
        _ => unreachable!("payload shape mismatch"),
    }
}
