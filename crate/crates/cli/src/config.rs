//! Session configuration: a TOML file with a top-level `seed` and the flat
//! sections `[algebra]`, `[constants]` and `[limits]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use num_rational::BigRational;
use serde::Deserialize;
use sha2::{Digest, Sha256};
use skewid::algebra::{parse_literal, Algebra, AlgebraError, AlgebraSpec, Element};
use skewid::freeness::{DEFAULT_BIT_CAP, DEFAULT_MAX_LENGTH, DEFAULT_WORD_CAP};
use skewid::identity::{DEFAULT_ENUM_CAP, DEFAULT_HEIGHT, DEFAULT_P_MAX};
use skewid::laurent::DEFAULT_ORDER;
use toml::Spanned;

pub const DEFAULT_N_MAX: u64 = 64;
pub const DEFAULT_SEED: u64 = 0;

/// A configuration problem, located by line and column when possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub msg: String,
}

impl ConfigError {
    fn at(text: &str, span: Option<Range<usize>>, msg: impl Into<String>) -> Self {
        let (line, column) = match span {
            Some(r) => {
                let (l, c) = line_col(text, r.start);
                (Some(l), Some(c))
            }
            None => (None, None),
        };
        Self { line, column, msg: msg.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "config error at line {l}, column {c}: {}", self.msg),
            _ => write!(f, "config error: {}", self.msg),
        }
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, column)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub p_max: u64,
    pub n_max: u64,
    pub order: i64,
    pub length: u32,
    pub enum_cap: u64,
    pub height: u64,
    pub bit_cap: u64,
    pub word_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            p_max: DEFAULT_P_MAX,
            n_max: DEFAULT_N_MAX,
            order: DEFAULT_ORDER,
            length: DEFAULT_MAX_LENGTH,
            enum_cap: DEFAULT_ENUM_CAP,
            height: DEFAULT_HEIGHT,
            bit_cap: DEFAULT_BIT_CAP,
            word_cap: DEFAULT_WORD_CAP,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SessionConfig {
    pub algebra: Algebra,
    pub constants: BTreeMap<String, Element>,
    pub seed: u64,
    pub limits: Limits,
    /// Hex SHA-256 of the configuration text.
    pub digest: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    seed: Option<Spanned<u64>>,
    algebra: Spanned<RawAlgebra>,
    #[serde(default)]
    constants: BTreeMap<String, Spanned<String>>,
    #[serde(default)]
    limits: RawLimits,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    kind: Spanned<String>,
    p: Option<Spanned<u64>>,
    k: Option<Spanned<usize>>,
    a: Option<Spanned<Number>>,
    b: Option<Spanned<Number>>,
    n: Option<Spanned<usize>>,
    inner: Option<Spanned<String>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawLimits {
    p_max: Option<Spanned<u64>>,
    n_max: Option<Spanned<u64>>,
    order: Option<Spanned<i64>>,
    length: Option<Spanned<u32>>,
    enum_cap: Option<Spanned<u64>>,
    height: Option<Spanned<u64>>,
    bit_cap: Option<Spanned<u64>>,
    word_cap: Option<Spanned<u64>>,
}

pub fn parse_config(text: &str) -> Result<SessionConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::at(text, e.span(), e.message()))?;
    let algebra = build_algebra(text, &raw.algebra)?;
    let mut constants = BTreeMap::new();
    for (name, lit) in &raw.constants {
        if !valid_name(name) {
            return Err(ConfigError::at(text, Some(lit.span()), format!("invalid constant name {name:?}")));
        }
        let value = parse_literal(&algebra, lit.get_ref()).map_err(|e| literal_error(text, lit, e))?;
        constants.insert(name.clone(), value);
    }
    let limits = build_limits(text, &raw.limits)?;
    Ok(SessionConfig {
        algebra,
        constants,
        seed: raw.seed.map_or(DEFAULT_SEED, Spanned::into_inner),
        limits,
        digest: hex::encode(Sha256::digest(text.as_bytes())),
    })
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Point inside the quoted literal when the literal parser reports an offset.
fn literal_error(text: &str, lit: &Spanned<String>, e: AlgebraError) -> ConfigError {
    let span = lit.span();
    let start = match &e {
        AlgebraError::Literal { pos, .. } => span.start + 1 + pos,
        _ => span.start,
    };
    ConfigError::at(text, Some(start..span.end), e.to_string())
}

fn required<'a, T>(text: &str, field: &'a Option<Spanned<T>>, name: &str, kind: &Spanned<String>) -> Result<&'a T, ConfigError> {
    field.as_ref().map(Spanned::get_ref).ok_or_else(|| {
        ConfigError::at(text, Some(kind.span()), format!("algebra kind {:?} needs the key `{name}`", kind.get_ref()))
    })
}

fn spec_error(text: &str, span: Range<usize>, e: AlgebraError) -> ConfigError {
    ConfigError::at(text, Some(span), e.to_string())
}

fn build_algebra(text: &str, raw: &Spanned<RawAlgebra>) -> Result<Algebra, ConfigError> {
    let r = raw.get_ref();
    let outer = r.kind.get_ref().as_str();
    let base = if outer == "matrix" {
        let inner = r.inner.as_ref().ok_or_else(|| {
            ConfigError::at(text, Some(r.kind.span()), "algebra kind \"matrix\" needs the key `inner`")
        })?;
        build_base(text, r, inner)?
    } else {
        if let Some(inner) = &r.inner {
            return Err(ConfigError::at(text, Some(inner.span()), "`inner` is only allowed for matrix algebras"));
        }
        build_base(text, r, &r.kind)?
    };
    if outer == "matrix" {
        let n = *required(text, &r.n, "n", &r.kind)?;
        let span = r.n.as_ref().map_or(r.kind.span(), Spanned::span);
        return AlgebraSpec::matrix(n, &base).map_err(|e| spec_error(text, span, e));
    }
    Ok(base)
}

fn build_base(text: &str, r: &RawAlgebra, kind: &Spanned<String>) -> Result<Algebra, ConfigError> {
    match kind.get_ref().as_str() {
        "rational" => Ok(AlgebraSpec::rational()),
        "finite-field" => {
            let p = *required(text, &r.p, "p", kind)?;
            let k = r.k.as_ref().map_or(1, |k| *k.get_ref());
            let span = r.p.as_ref().expect("checked").span();
            AlgebraSpec::finite_field(p, k).map_err(|e| spec_error(text, span, e))
        }
        "quaternion" => {
            let a = number(text, r.a.as_ref(), "a", kind)?;
            let b = number(text, r.b.as_ref(), "b", kind)?;
            AlgebraSpec::quaternion(a, b).map_err(|e| spec_error(text, kind.span(), e))
        }
        "matrix" => Err(ConfigError::at(text, Some(kind.span()), "matrix entries may not be matrices")),
        other => Err(ConfigError::at(
            text,
            Some(kind.span()),
            format!("unknown algebra kind {other:?} (expected rational, finite-field, quaternion or matrix)"),
        )),
    }
}

fn number(text: &str, field: Option<&Spanned<Number>>, name: &str, kind: &Spanned<String>) -> Result<BigRational, ConfigError> {
    let Some(field) = field else {
        return Err(ConfigError::at(text, Some(kind.span()), format!("quaternion algebras need the key `{name}`")));
    };
    match field.get_ref() {
        Number::Int(v) => Ok(BigRational::from_integer((*v).into())),
        Number::Text(s) => {
            let q = AlgebraSpec::rational();
            let x = parse_literal(&q, s).map_err(|e| ConfigError::at(text, Some(field.span()), e.to_string()))?;
            Ok(x.central_value()
                .and_then(|v| v.as_rational().cloned())
                .expect("rational literals are central"))
        }
    }
}

fn build_limits(text: &str, raw: &RawLimits) -> Result<Limits, ConfigError> {
    let d = Limits::default();
    let get = |f: &Option<Spanned<u64>>, default: u64| f.as_ref().map_or(default, |v| *v.get_ref());
    let limits = Limits {
        p_max: get(&raw.p_max, d.p_max),
        n_max: get(&raw.n_max, d.n_max),
        order: raw.order.as_ref().map_or(d.order, |v| *v.get_ref()),
        length: raw.length.as_ref().map_or(d.length, |v| *v.get_ref()),
        enum_cap: get(&raw.enum_cap, d.enum_cap),
        height: get(&raw.height, d.height),
        bit_cap: get(&raw.bit_cap, d.bit_cap),
        word_cap: get(&raw.word_cap, d.word_cap),
    };
    let positive: [(&str, &Option<Spanned<u64>>, u64); 3] =
        [("p_max", &raw.p_max, limits.p_max), ("n_max", &raw.n_max, limits.n_max), ("height", &raw.height, limits.height)];
    for (name, field, value) in positive {
        if value == 0 {
            return Err(ConfigError::at(text, field.as_ref().map(Spanned::span), format!("`{name}` must be positive")));
        }
    }
    if limits.order < 1 {
        return Err(ConfigError::at(text, raw.order.as_ref().map(Spanned::span), "`order` must be at least 1"));
    }
    if limits.length == 0 {
        return Err(ConfigError::at(text, raw.length.as_ref().map(Spanned::span), "`length` must be at least 1"));
    }
    Ok(limits)
}
