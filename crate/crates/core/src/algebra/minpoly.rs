//! Minimal polynomials over the center and torsion detection.

use std::fmt;

use num_rational::BigRational;

use super::{CenterField, Element, Scalar};

/// Monic `x^n + c_{n-1} x^{n-1} + … + c_0` over the center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPolynomial {
    center: CenterField,
    /// `c_0, …, c_{n-1}`; the leading 1 is implicit.
    coeffs: Vec<Scalar>,
}

impl MinimalPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Lower coefficients `c_0, …, c_{n-1}`.
    pub fn lower_coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// All coefficients low-first, including the leading 1.
    pub fn coeffs(&self) -> Vec<Scalar> {
        let mut all = self.coeffs.clone();
        all.push(self.center.one());
        all
    }

    pub fn center(&self) -> &CenterField {
        &self.center
    }

    /// `f(x)` for an element of an algebra with this center.
    pub fn eval(&self, x: &Element) -> Element {
        let alg = x.algebra();
        self.coeffs()
            .iter()
            .rev()
            .fold(Element::zero(alg), |acc, c| &(&acc * x) + &Element::from_scalar(alg, c))
    }

    /// Coefficients as rationals when the center is `ℚ`.
    pub fn rational_coeffs(&self) -> Option<Vec<BigRational>> {
        self.coeffs().iter().map(|c| c.as_rational().cloned()).collect()
    }
}

impl fmt::Display for MinimalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{}", self.degree())?;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.center.is_zero(c) {
                continue;
            }
            match i {
                0 => write!(f, " + ({c})")?,
                1 => write!(f, " + ({c})*x")?,
                _ => write!(f, " + ({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Basis row for incremental elimination: normalized so `vec[pivot] = 1`,
/// with `comb` recording it as a combination of the powers `x^0, x^1, …`.
struct Row {
    pivot: usize,
    vec: Vec<Scalar>,
    comb: Vec<Scalar>,
}

/// Least-degree monic central polynomial annihilating `x`, found as the first
/// linear dependence among `1, x, x², …` over the center.
pub fn minimal_polynomial(x: &Element) -> MinimalPolynomial {
    let alg = x.algebra();
    let center = alg.center();
    let mut rows: Vec<Row> = Vec::new();
    let mut power = Element::one(alg);
    for k in 0..=alg.dimension() {
        let mut vec = power.center_coords();
        let mut comb = vec![center.zero(); k + 1];
        comb[k] = center.one();
        for row in &rows {
            let factor = vec[row.pivot].clone();
            if center.is_zero(&factor) {
                continue;
            }
            for (v, r) in vec.iter_mut().zip(&row.vec) {
                *v = center.sub(v, &center.mul(&factor, r));
            }
            for (c, r) in comb.iter_mut().zip(&row.comb) {
                *c = center.sub(c, &center.mul(&factor, r));
            }
        }
        match vec.iter().position(|v| !center.is_zero(v)) {
            None => {
                comb.truncate(k);
                return MinimalPolynomial { center, coeffs: comb };
            }
            Some(pivot) => {
                let inv = center.inv(&vec[pivot]).expect("nonzero pivot");
                let vec = vec.iter().map(|v| center.mul(&inv, v)).collect();
                let comb = comb.iter().map(|c| center.mul(&inv, c)).collect();
                rows.push(Row { pivot, vec, comb });
            }
        }
        power = &power * x;
    }
    unreachable!("dimension + 1 powers are always dependent")
}

/// Monic polynomials of degree ≤ 2 over `ℚ` dividing some `x^m − 1`, as
/// lower coefficients: `x∓1`, `x²−1`, `x²+x+1`, `x²+1`, `x²−x+1`.
const CYCLOTOMIC_DIVISORS: [&[i64]; 6] = [&[-1], &[1], &[-1, 0], &[1, 1], &[1, 0], &[1, -1]];

fn is_cyclotomic_divisor(f: &MinimalPolynomial) -> bool {
    let center = f.center();
    CYCLOTOMIC_DIVISORS.iter().any(|pattern| {
        pattern.len() == f.degree()
            && pattern.iter().zip(f.lower_coeffs()).all(|(&c, s)| center.from_int(c) == *s)
    })
}

/// Least `m ≤ bound` with `x^m = 1`.
///
/// Over characteristic 0, a unit whose minimal polynomial has degree ≤ 2 and
/// is not a product of distinct cyclotomic factors has infinite order; that
/// case returns `None` without powering.
pub fn is_torsion(x: &Element, bound: u64) -> Option<u64> {
    if !x.is_unit() {
        return None;
    }
    let center = x.algebra().center();
    if center.characteristic() == 0 {
        let f = minimal_polynomial(x);
        if f.degree() <= 2 && !is_cyclotomic_divisor(&f) {
            return None;
        }
    }
    let mut power = x.clone();
    for m in 1..=bound {
        if power.is_one() {
            return Some(m);
        }
        power = &power * x;
    }
    None
}
