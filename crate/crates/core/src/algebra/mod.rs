//! Exact coefficient algebras: `ℚ`, `F_{p^k}`, quaternion algebras `(a,b)_ℚ`
//! and one layer of `n × n` matrices over any of these.
//!
//! Elements carry a shared handle to their [`AlgebraSpec`]. All arithmetic is
//! exact; equality is structural on canonical payloads (reduced fractions and
//! reduced residues), so it is decidable.

mod gf;
pub(crate) mod literal;
mod minpoly;
mod sample;
mod scalar;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use gf::GfField;
pub use literal::{parse_literal, LiteralNode};
pub use minpoly::{is_torsion, minimal_polynomial, MinimalPolynomial};
pub use sample::{integral_elements, sample_element, sample_tuple, sample_unit};
pub use scalar::{fmt_rational, CenterField, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("invalid algebra: {0}")]
    InvalidSpec(String),
    #[error("operands live in different algebras: {lhs} and {rhs}")]
    SpecMismatch { lhs: String, rhs: String },
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("literal error at offset {pos}: {msg}")]
    Literal { pos: usize, msg: String },
    #[error("no unit found after {0} sampling attempts")]
    SamplingExhausted(usize),
}

/// The shape of a coefficient algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraSpec {
    Rational,
    FiniteField(GfField),
    /// `i² = a`, `j² = b`, `ij = -ji = k` over `ℚ`.
    Quaternion { a: BigRational, b: BigRational },
    Matrix { n: usize, inner: Box<AlgebraSpec> },
}

pub type Algebra = Arc<AlgebraSpec>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl AlgebraSpec {
    pub fn rational() -> Algebra {
        Arc::new(AlgebraSpec::Rational)
    }

    pub fn finite_field(p: u64, k: usize) -> Result<Algebra, AlgebraError> {
        Ok(Arc::new(AlgebraSpec::FiniteField(GfField::new(p, k)?)))
    }

    pub fn quaternion(a: BigRational, b: BigRational) -> Result<Algebra, AlgebraError> {
        if a.is_zero() || b.is_zero() {
            return Err(AlgebraError::InvalidSpec(
                "quaternion parameters must be nonzero".into(),
            ));
        }
        Ok(Arc::new(AlgebraSpec::Quaternion { a, b }))
    }

    /// Hamilton's quaternions over `ℚ`, i.e. `(-1,-1)`.
    pub fn hamilton() -> Algebra {
        let m1 = BigRational::from_integer((-1).into());
        Arc::new(AlgebraSpec::Quaternion { a: m1.clone(), b: m1 })
    }

    pub fn matrix(n: usize, inner: &AlgebraSpec) -> Result<Algebra, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::InvalidSpec("matrix size must be at least 1".into()));
        }
        if matches!(inner, AlgebraSpec::Matrix { .. }) {
            return Err(AlgebraError::InvalidSpec(
                "matrix entries may not themselves be matrices".into(),
            ));
        }
        Ok(Arc::new(AlgebraSpec::Matrix { n, inner: Box::new(inner.clone()) }))
    }

    pub fn center(&self) -> CenterField {
        match self {
            AlgebraSpec::Rational | AlgebraSpec::Quaternion { .. } => CenterField::Rationals,
            AlgebraSpec::FiniteField(gf) => CenterField::Galois(gf.clone()),
            AlgebraSpec::Matrix { inner, .. } => inner.center(),
        }
    }

    /// Dimension as a vector space over the center.
    pub fn dimension(&self) -> usize {
        match self {
            AlgebraSpec::Rational | AlgebraSpec::FiniteField(_) => 1,
            AlgebraSpec::Quaternion { .. } => 4,
            AlgebraSpec::Matrix { n, inner } => n * n * inner.dimension(),
        }
    }

    /// Square root of [`dimension`](Self::dimension); bounds minimal-polynomial degrees.
    pub fn degree(&self) -> usize {
        match self {
            AlgebraSpec::Rational | AlgebraSpec::FiniteField(_) => 1,
            AlgebraSpec::Quaternion { .. } => 2,
            AlgebraSpec::Matrix { n, inner } => n * inner.degree(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        match self {
            AlgebraSpec::Rational | AlgebraSpec::FiniteField(_) => true,
            AlgebraSpec::Quaternion { .. } => false,
            AlgebraSpec::Matrix { n, inner } => *n == 1 && inner.is_commutative(),
        }
    }

    /// Order of the unit group when it is finite.
    pub fn unit_group_order(&self) -> Option<BigUint> {
        match self {
            AlgebraSpec::FiniteField(gf) => Some(BigUint::from(gf.order() - 1)),
            AlgebraSpec::Matrix { n, inner } => match inner.as_ref() {
                AlgebraSpec::FiniteField(gf) => Some(gl_order(*n, gf.order())),
                _ => None,
            },
            _ => None,
        }
    }

    /// Number of elements when the algebra is finite.
    pub fn cardinality(&self) -> Option<BigUint> {
        match self {
            AlgebraSpec::FiniteField(gf) => Some(BigUint::from(gf.order())),
            AlgebraSpec::Matrix { n, inner } => {
                inner.cardinality().map(|c| c.pow((n * n) as u32))
            }
            _ => None,
        }
    }

    // -- payload-level arithmetic -----------------------------------------

    fn zero_v(&self) -> Value {
        match self {
            AlgebraSpec::Rational => Value::Rat(BigRational::zero()),
            AlgebraSpec::FiniteField(gf) => Value::Gf(gf.zero()),
            AlgebraSpec::Quaternion { .. } => Value::Quat(Box::new(quat_zero())),
            AlgebraSpec::Matrix { n, inner } => Value::Mat(vec![inner.zero_v(); n * n]),
        }
    }

    fn one_v(&self) -> Value {
        match self {
            AlgebraSpec::Rational => Value::Rat(BigRational::one()),
            AlgebraSpec::FiniteField(gf) => Value::Gf(gf.one()),
            AlgebraSpec::Quaternion { .. } => {
                let mut q = quat_zero();
                q[0] = BigRational::one();
                Value::Quat(Box::new(q))
            }
            AlgebraSpec::Matrix { n, inner } => {
                let mut m = vec![inner.zero_v(); n * n];
                for i in 0..*n {
                    m[i * n + i] = inner.one_v();
                }
                Value::Mat(m)
            }
        }
    }

    fn is_zero_v(&self, v: &Value) -> bool {
        match (self, v) {
            (_, Value::Rat(r)) => r.is_zero(),
            (_, Value::Gf(c)) => c.iter().all(|&x| x == 0),
            (_, Value::Quat(q)) => q.iter().all(Zero::is_zero),
            (AlgebraSpec::Matrix { inner, .. }, Value::Mat(m)) => {
                m.iter().all(|e| inner.is_zero_v(e))
            }
            _ => unreachable!("payload shape mismatch"),
        }
    }

    fn add_v(&self, x: &Value, y: &Value) -> Value {
        match (self, x, y) {
            (_, Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (AlgebraSpec::FiniteField(gf), Value::Gf(a), Value::Gf(b)) => Value::Gf(gf.add(a, b)),
            (_, Value::Quat(a), Value::Quat(b)) => {
                Value::Quat(Box::new(std::array::from_fn(|i| &a[i] + &b[i])))
            }
            (AlgebraSpec::Matrix { inner, .. }, Value::Mat(a), Value::Mat(b)) => {
                Value::Mat(a.iter().zip(b).map(|(p, q)| inner.add_v(p, q)).collect())
            }
            _ => unreachable!("payload shape mismatch"),
        }
    }

    fn neg_v(&self, x: &Value) -> Value {
        match (self, x) {
            (_, Value::Rat(a)) => Value::Rat(-a),
            (AlgebraSpec::FiniteField(gf), Value::Gf(a)) => Value::Gf(gf.neg(a)),
            (_, Value::Quat(a)) => Value::Quat(Box::new(std::array::from_fn(|i| -&a[i]))),
            (AlgebraSpec::Matrix { inner, .. }, Value::Mat(a)) => {
                Value::Mat(a.iter().map(|p| inner.neg_v(p)).collect())
            }
            _ => unreachable!("payload shape mismatch"),
        }
    }

    fn mul_v(&self, x: &Value, y: &Value) -> Value {
        match (self, x, y) {
            (_, Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (AlgebraSpec::FiniteField(gf), Value::Gf(a), Value::Gf(b)) => Value::Gf(gf.mul(a, b)),
            (AlgebraSpec::Quaternion { a: qa, b: qb }, Value::Quat(p), Value::Quat(q)) => {
                Value::Quat(Box::new(quat_mul(qa, qb, p, q)))
            }
            (AlgebraSpec::Matrix { n, inner }, Value::Mat(a), Value::Mat(b)) => {
                let n = *n;
                let mut out = Vec::with_capacity(n * n);
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = inner.zero_v();
                        for k in 0..n {
                            let (l, r) = (&a[i * n + k], &b[k * n + j]);
                            if inner.is_zero_v(l) || inner.is_zero_v(r) {
                                continue;
                            }
                            acc = inner.add_v(&acc, &inner.mul_v(l, r));
                        }
                        out.push(acc);
                    }
                }
                Value::Mat(out)
            }
            _ => unreachable!("payload shape mismatch"),
        }
    }

    fn inv_v(&self, x: &Value) -> Option<Value> {
        match (self, x) {
            (_, Value::Rat(a)) => (!a.is_zero()).then(|| Value::Rat(a.recip())),
            (AlgebraSpec::FiniteField(gf), Value::Gf(a)) => gf.inv(a).map(Value::Gf),
            (AlgebraSpec::Quaternion { a: qa, b: qb }, Value::Quat(q)) => {
                let norm = quat_norm(qa, qb, q);
                if norm.is_zero() {
                    return None;
                }
                let conj: [BigRational; 4] =
                    std::array::from_fn(|i| if i == 0 { &q[0] / &norm } else { -&q[i] / &norm });
                Some(Value::Quat(Box::new(conj)))
            }
            (AlgebraSpec::Matrix { n, inner }, Value::Mat(m)) => matrix_inverse(*n, inner, m),
            _ => unreachable!("payload shape mismatch"),
        }
    }

    fn is_central_v(&self, x: &Value) -> bool {
        match (self, x) {
            (AlgebraSpec::Rational | AlgebraSpec::FiniteField(_), _) => true,
            (AlgebraSpec::Quaternion { .. }, Value::Quat(q)) => q[1..].iter().all(Zero::is_zero),
            (AlgebraSpec::Matrix { n, inner }, Value::Mat(m)) => {
                let n = *n;
                let diag = &m[0];
                (0..n).all(|i| {
                    (0..n).all(|j| {
                        let e = &m[i * n + j];
                        if i == j {
                            e == diag
                        } else {
                            inner.is_zero_v(e)
                        }
                    })
                }) && inner.is_central_v(diag)
            }
            _ => unreachable!("payload shape mismatch"),
        }
    }

    fn coords_v(&self, x: &Value, out: &mut Vec<Scalar>) {
        match x {
            Value::Rat(r) => out.push(Scalar::Rat(r.clone())),
            Value::Gf(c) => out.push(Scalar::Gf(c.clone())),
            Value::Quat(q) => out.extend(q.iter().map(|r| Scalar::Rat(r.clone()))),
            Value::Mat(m) => {
                let AlgebraSpec::Matrix { inner, .. } = self else { unreachable!() };
                for e in m {
                    inner.coords_v(e, out);
                }
            }
        }
    }

    fn value_from_coords(&self, coords: &mut impl Iterator<Item = Scalar>) -> Value {
        let mut next = || coords.next().expect("enough coordinates");
        match self {
            AlgebraSpec::Rational => match next() {
                Scalar::Rat(r) => Value::Rat(r),
                _ => panic!("rational coordinate expected"),
            },
            AlgebraSpec::FiniteField(_) => match next() {
                Scalar::Gf(c) => Value::Gf(c),
                _ => panic!("finite-field coordinate expected"),
            },
            AlgebraSpec::Quaternion { .. } => {
                let q: [BigRational; 4] = std::array::from_fn(|_| match next() {
                    Scalar::Rat(r) => r,
                    _ => panic!("rational coordinate expected"),
                });
                Value::Quat(Box::new(q))
            }
            AlgebraSpec::Matrix { n, inner } => {
                Value::Mat((0..n * n).map(|_| inner.value_from_coords(coords)).collect())
            }
        }
    }

    fn scalar_v(&self, s: &Scalar) -> Value {
        match (self, s) {
            (AlgebraSpec::Rational, Scalar::Rat(r)) => Value::Rat(r.clone()),
            (AlgebraSpec::FiniteField(_), Scalar::Gf(c)) => Value::Gf(c.clone()),
            (AlgebraSpec::Quaternion { .. }, Scalar::Rat(r)) => {
                let mut q = quat_zero();
                q[0] = r.clone();
                Value::Quat(Box::new(q))
            }
            (AlgebraSpec::Matrix { n, inner }, s) => {
                let n = *n;
                let mut m = vec![inner.zero_v(); n * n];
                for i in 0..n {
                    m[i * n + i] = inner.scalar_v(s);
                }
                Value::Mat(m)
            }
            _ => panic!("scalar {s} does not belong to the center of {self}"),
        }
    }

    /// Largest numerator or denominator bit length in the payload (0 for finite fields).
    fn bit_size_v(&self, x: &Value) -> u64 {
        fn rat_bits(r: &BigRational) -> u64 {
            r.numer().bits().max(r.denom().bits())
        }
        match x {
            Value::Rat(r) => rat_bits(r),
            Value::Gf(_) => 0,
            Value::Quat(q) => q.iter().map(rat_bits).max().unwrap_or(0),
            Value::Mat(m) => {
                let AlgebraSpec::Matrix { inner, .. } = self else { unreachable!() };
                m.iter().map(|e| inner.bit_size_v(e)).max().unwrap_or(0)
            }
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::Rational => write!(f, "rational"),
            AlgebraSpec::FiniteField(gf) => {
                write!(f, "finite-field({},{})", gf.characteristic(), gf.degree())
            }
            AlgebraSpec::Quaternion { a, b } => {
                write!(f, "quaternion({},{})", fmt_rational(a), fmt_rational(b))
            }
            AlgebraSpec::Matrix { n, inner } => write!(f, "matrix({n},{inner})"),
        }
    }
}

impl fmt::Display for CenterField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterField::Rationals => write!(f, "Q"),
            CenterField::Galois(gf) => write!(f, "F_{}^{}", gf.characteristic(), gf.degree()),
        }
    }
}

/// `|GL_n(F_q)| = ∏_{i<n} (q^n − q^i)`.
pub fn gl_order(n: usize, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let qn = q.pow(n as u32);
    (0..n).fold(BigUint::one(), |acc, i| acc * (&qn - q.pow(i as u32)))
}

fn quat_zero() -> [BigRational; 4] {
    std::array::from_fn(|_| BigRational::zero())
}

/// Numerators over the least common denominator.
fn quat_common(q: &[BigRational; 4]) -> ([BigInt; 4], BigInt) {
    let d = q.iter().fold(BigInt::one(), |acc, r| if r.denom().is_one() { acc } else { acc.lcm(r.denom()) });
    let nums = std::array::from_fn(|i| {
        if q[i].denom() == &d {
            q[i].numer().clone()
        } else {
            q[i].numer() * (&d / q[i].denom())
        }
    });
    (nums, d)
}

/// Product in `(a,b)`, computed on integer numerators and reduced once per
/// coordinate.
fn quat_mul(
    a: &BigRational,
    b: &BigRational,
    p: &[BigRational; 4],
    q: &[BigRational; 4],
) -> [BigRational; 4] {
    let ([w1, x1, y1, z1], dp) = quat_common(p);
    let ([w2, x2, y2, z2], dq) = quat_common(q);
    let (an, ad) = (a.numer(), a.denom());
    let (bn, bd) = (b.numer(), b.denom());
    let abd = ad * bd;
    let scale = |k: &BigInt, v: BigInt| if k.is_one() { v } else { k * v };
    let w = scale(&abd, &w1 * &w2) + scale(&(an * bd), &x1 * &x2) + scale(&(bn * ad), &y1 * &y2)
        - scale(&(an * bn), &z1 * &z2);
    let x = scale(&abd, &w1 * &x2 + &x1 * &w2) + scale(&(bn * ad), &z1 * &y2 - &y1 * &z2);
    let y = scale(&abd, &w1 * &y2 + &y1 * &w2) + scale(&(an * bd), &x1 * &z2 - &z1 * &x2);
    let z = scale(&abd, &w1 * &z2 + &z1 * &w2 + &x1 * &y2 - &y1 * &x2);
    let den = dp * dq * abd;
    [w, x, y, z].map(|n| BigRational::new(n, den.clone()))
}

/// Reduced norm `w² − a x² − b y² + ab z²`.
fn quat_norm(a: &BigRational, b: &BigRational, q: &[BigRational; 4]) -> BigRational {
    let [w, x, y, z] = q;
    w * w - a * (x * x) - b * (y * y) + a * b * (z * z)
}

/// Gauss–Jordan over the entry algebra, multiplying rows on the left so the
/// accumulated transform is a left inverse. Pivot: first invertible entry
/// at or below the diagonal.
fn matrix_inverse(n: usize, inner: &AlgebraSpec, m: &[Value]) -> Option<Value> {
    let mut a: Vec<Vec<Value>> = (0..n).map(|i| m[i * n..(i + 1) * n].to_vec()).collect();
    let mut inv: Vec<Vec<Value>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { inner.one_v() } else { inner.zero_v() }).collect())
        .collect();
    for col in 0..n {
        let (row, pivot_inv) =
            (col..n).find_map(|r| inner.inv_v(&a[r][col]).map(|pi| (r, pi)))?;
        a.swap(col, row);
        inv.swap(col, row);
        for j in 0..n {
            a[col][j] = inner.mul_v(&pivot_inv, &a[col][j]);
            inv[col][j] = inner.mul_v(&pivot_inv, &inv[col][j]);
        }
        for r in 0..n {
            if r == col || inner.is_zero_v(&a[r][col]) {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let t = inner.mul_v(&factor, &a[col][j]);
                a[r][j] = inner.add_v(&a[r][j], &inner.neg_v(&t));
                let t = inner.mul_v(&factor, &inv[col][j]);
                inv[r][j] = inner.add_v(&inv[r][j], &inner.neg_v(&t));
            }
        }
    }
    Some(Value::Mat(inv.into_iter().flatten().collect()))
}

/// Raw payload of an element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Value {
    Rat(BigRational),
    Gf(Vec<u64>),
    Quat(Box<[BigRational; 4]>),
    /// Row-major `n × n` entries.
    Mat(Vec<Value>),
}

/// An element of a configured coefficient algebra.
#[derive(Clone, Debug)]
pub struct Element {
    alg: Algebra,
    val: Value,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.val == other.val && (Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg)
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.val.hash(state);
    }
}

impl Element {
    pub(crate) fn from_value(alg: &Algebra, val: Value) -> Self {
        Self { alg: alg.clone(), val }
    }

    pub fn zero(alg: &Algebra) -> Self {
        Self::from_value(alg, alg.zero_v())
    }

    pub fn one(alg: &Algebra) -> Self {
        Self::from_value(alg, alg.one_v())
    }

    pub fn from_int(alg: &Algebra, n: i64) -> Self {
        Self::from_scalar(alg, &alg.center().from_int(n))
    }

    pub fn from_rational(alg: &Algebra, r: &BigRational) -> Result<Self, AlgebraError> {
        let center = alg.center();
        let s = match center {
            CenterField::Rationals => Scalar::Rat(r.clone()),
            CenterField::Galois(_) => {
                let den = center.from_bigint(r.denom());
                let den_inv = center.inv(&den).ok_or_else(|| {
                    AlgebraError::InvalidSpec(format!(
                        "denominator of {} vanishes in {center}",
                        fmt_rational(r)
                    ))
                })?;
                center.mul(&center.from_bigint(r.numer()), &den_inv)
            }
        };
        Ok(Self::from_scalar(alg, &s))
    }

    /// Embed a center element.
    pub fn from_scalar(alg: &Algebra, s: &Scalar) -> Self {
        Self::from_value(alg, alg.scalar_v(s))
    }

    /// Quaternion `w + x i + y j + z k`.
    pub fn quaternion(alg: &Algebra, coords: [BigRational; 4]) -> Result<Self, AlgebraError> {
        match alg.as_ref() {
            AlgebraSpec::Quaternion { .. } => Ok(Self::from_value(alg, Value::Quat(Box::new(coords)))),
            other => Err(AlgebraError::InvalidSpec(format!("{other} is not a quaternion algebra"))),
        }
    }

    /// Quaternion with integer coordinates.
    pub fn quaternion_int(alg: &Algebra, coords: [i64; 4]) -> Result<Self, AlgebraError> {
        Self::quaternion(alg, coords.map(|c| BigRational::from_integer(c.into())))
    }

    /// Matrix from row-major entries of the inner algebra.
    pub fn matrix(alg: &Algebra, entries: Vec<Element>) -> Result<Self, AlgebraError> {
        let AlgebraSpec::Matrix { n, inner } = alg.as_ref() else {
            return Err(AlgebraError::InvalidSpec(format!("{alg} is not a matrix algebra")));
        };
        if entries.len() != n * n {
            return Err(AlgebraError::InvalidSpec(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        let mut vals = Vec::with_capacity(entries.len());
        for e in entries {
            if e.alg.as_ref() != inner.as_ref() {
                return Err(AlgebraError::SpecMismatch {
                    lhs: inner.to_string(),
                    rhs: e.alg.to_string(),
                });
            }
            vals.push(e.val);
        }
        Ok(Self::from_value(alg, Value::Mat(vals)))
    }

    /// Entry `(i, j)` of a matrix element, as an element of the inner algebra.
    pub fn entry(&self, i: usize, j: usize) -> Option<Element> {
        let (AlgebraSpec::Matrix { n, inner }, Value::Mat(m)) = (self.alg.as_ref(), &self.val) else {
            return None;
        };
        (i < *n && j < *n).then(|| Element {
            alg: Arc::new(inner.as_ref().clone()),
            val: m[i * n + j].clone(),
        })
    }

    /// Quaternion coordinates `(w, x, y, z)`.
    pub fn quaternion_coords(&self) -> Option<&[BigRational; 4]> {
        match &self.val {
            Value::Quat(q) => Some(q),
            _ => None,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn same_algebra(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg
    }

    fn check_same(&self, other: &Element) -> Result<(), AlgebraError> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(AlgebraError::SpecMismatch { lhs: self.alg.to_string(), rhs: other.alg.to_string() })
        }
    }

    pub fn arith(&self, op: ArithOp, rhs: &Element) -> Result<Element, AlgebraError> {
        self.check_same(rhs)?;
        let val = match op {
            ArithOp::Add => self.alg.add_v(&self.val, &rhs.val),
            ArithOp::Sub => self.alg.add_v(&self.val, &self.alg.neg_v(&rhs.val)),
            ArithOp::Mul => self.alg.mul_v(&self.val, &rhs.val),
        };
        Ok(Self::from_value(&self.alg, val))
    }

    pub fn try_mul(&self, rhs: &Element) -> Result<Element, AlgebraError> {
        self.arith(ArithOp::Mul, rhs)
    }

    pub fn try_add(&self, rhs: &Element) -> Result<Element, AlgebraError> {
        self.arith(ArithOp::Add, rhs)
    }

    pub fn try_sub(&self, rhs: &Element) -> Result<Element, AlgebraError> {
        self.arith(ArithOp::Sub, rhs)
    }

    pub fn invert(&self) -> Result<Element, AlgebraError> {
        self.alg
            .inv_v(&self.val)
            .map(|v| Self::from_value(&self.alg, v))
            .ok_or_else(|| AlgebraError::NotInvertible(self.to_string()))
    }

    pub fn is_unit(&self) -> bool {
        self.alg.inv_v(&self.val).is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.alg.is_zero_v(&self.val)
    }

    pub fn is_one(&self) -> bool {
        match &self.val {
            Value::Rat(r) => r.is_one(),
            Value::Quat(q) => q[0].is_one() && q[1..].iter().all(Zero::is_zero),
            _ => self.val == self.alg.one_v(),
        }
    }

    /// Structural centrality test; agrees with commuting with every generator.
    pub fn is_central(&self) -> bool {
        self.alg.is_central_v(&self.val)
    }

    /// The element as a center scalar, when it is central.
    pub fn central_value(&self) -> Option<Scalar> {
        if !self.is_central() {
            return None;
        }
        let coords = self.center_coords();
        Some(coords[0].clone())
    }

    /// Generators of the algebra over its center.
    pub fn generators(alg: &Algebra) -> Vec<Element> {
        match alg.as_ref() {
            AlgebraSpec::Rational => vec![Element::one(alg)],
            AlgebraSpec::FiniteField(gf) => vec![Self::from_value(alg, Value::Gf(gf.generator()))],
            AlgebraSpec::Quaternion { .. } => vec![
                Self::quaternion_int(alg, [0, 1, 0, 0]).expect("quaternion"),
                Self::quaternion_int(alg, [0, 0, 1, 0]).expect("quaternion"),
            ],
            AlgebraSpec::Matrix { n, inner } => {
                let n = *n;
                let mut gens = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        let mut m = vec![inner.zero_v(); n * n];
                        m[i * n + j] = inner.one_v();
                        gens.push(Self::from_value(alg, Value::Mat(m)));
                    }
                }
                let inner_alg: Algebra = Arc::new(inner.as_ref().clone());
                for g in Self::generators(&inner_alg) {
                    if inner.is_central_v(&g.val) {
                        continue;
                    }
                    let mut m = vec![inner.zero_v(); n * n];
                    for i in 0..n {
                        m[i * n + i] = g.val.clone();
                    }
                    gens.push(Self::from_value(alg, Value::Mat(m)));
                }
                gens
            }
        }
    }

    /// True iff `self` commutes with every element of [`generators`](Self::generators).
    pub fn commutes_with_generators(&self) -> bool {
        Self::generators(&self.alg).iter().all(|g| (self * g) == (g * self))
    }

    /// Coordinates over the center in a fixed basis.
    pub fn center_coords(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.alg.dimension());
        self.alg.coords_v(&self.val, &mut out);
        out
    }

    /// Inverse of [`center_coords`](Self::center_coords).
    pub fn from_center_coords(alg: &Algebra, coords: &[Scalar]) -> Result<Element, AlgebraError> {
        if coords.len() != alg.dimension() {
            return Err(AlgebraError::InvalidSpec(format!(
                "expected {} coordinates, got {}",
                alg.dimension(),
                coords.len()
            )));
        }
        let center = alg.center();
        for c in coords {
            let ok = matches!(
                (&center, c),
                (CenterField::Rationals, Scalar::Rat(_)) | (CenterField::Galois(_), Scalar::Gf(_))
            );
            if !ok {
                return Err(AlgebraError::InvalidSpec(format!("{c} is not in {center}")));
            }
        }
        let mut it = coords.iter().cloned();
        Ok(Self::from_value(alg, alg.value_from_coords(&mut it)))
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        self * &Element::from_scalar(&self.alg, s)
    }

    pub fn pow_u(&self, e: &BigUint) -> Element {
        let mut acc = Element::one(&self.alg);
        for bit in (0..e.bits()).rev() {
            acc = &acc * &acc;
            if e.bit(bit) {
                acc = &acc * self;
            }
        }
        acc
    }

    /// Integer power; negative exponents go through [`invert`](Self::invert).
    pub fn pow(&self, e: i64) -> Result<Element, AlgebraError> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        Ok(base.pow_u(&BigUint::from(e.unsigned_abs())))
    }

    pub fn pow_bigint(&self, e: &BigInt) -> Result<Element, AlgebraError> {
        let base = if e.sign() == num_bigint::Sign::Minus { self.invert()? } else { self.clone() };
        Ok(base.pow_u(e.magnitude()))
    }

    /// Largest numerator/denominator bit length among the coordinates.
    pub fn bit_size(&self) -> u64 {
        self.alg.bit_size_v(&self.val)
    }
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;

    /// Panics if the operands live in different algebras; use
    /// [`Element::try_mul`] to get an error instead.
    fn mul(self, rhs: &'a Element) -> Element {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;

    fn add(self, rhs: &'a Element) -> Element {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;

    fn sub(self, rhs: &'a Element) -> Element {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        Element::from_value(&self.alg, self.alg.neg_v(&self.val))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&literal::format_value(&self.alg, &self.val))
    }
}
