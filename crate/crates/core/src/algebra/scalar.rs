//! Elements of the center field and dense polynomials over it.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gf::GfField;

/// The center `F` of a supported coefficient algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CenterField {
    Rationals,
    Galois(GfField),
}

/// An element of a [`CenterField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Gf(Vec<u64>),
}

impl Scalar {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Gf(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Gf(v) if v.len() == 1 => write!(f, "{}", v[0]),
            Scalar::Gf(v) => {
                let parts: Vec<String> = v.iter().map(u64::to_string).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

/// `p/q` with `q > 1`, or the bare integer.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl CenterField {
    pub fn characteristic(&self) -> u64 {
        match self {
            CenterField::Rationals => 0,
            CenterField::Galois(gf) => gf.characteristic(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, CenterField::Galois(_))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            CenterField::Rationals => Scalar::Rat(BigRational::zero()),
            CenterField::Galois(gf) => Scalar::Gf(gf.zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            CenterField::Rationals => Scalar::Rat(BigRational::from_integer(n.into())),
            CenterField::Galois(gf) => Scalar::Gf(gf.from_int(n)),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            CenterField::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            CenterField::Galois(gf) => {
                let p = BigInt::from(gf.characteristic());
                let r: BigInt = ((n % &p) + &p) % &p;
                let r = u64::try_from(r).expect("residue below p");
                Scalar::Gf(gf.from_int(r as i64))
            }
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Gf(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (CenterField::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (CenterField::Galois(gf), Scalar::Gf(x), Scalar::Gf(y)) => Scalar::Gf(gf.add(x, y)),
            _ => panic!("scalar does not belong to {self:?}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (CenterField::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (CenterField::Galois(gf), Scalar::Gf(x)) => Scalar::Gf(gf.neg(x)),
            _ => panic!("scalar does not belong to {self:?}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (CenterField::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (CenterField::Galois(gf), Scalar::Gf(x), Scalar::Gf(y)) => Scalar::Gf(gf.mul(x, y)),
            _ => panic!("scalar does not belong to {self:?}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (CenterField::Rationals, Scalar::Rat(x)) => {
                (!x.is_zero()).then(|| Scalar::Rat(x.recip()))
            }
            (CenterField::Galois(gf), Scalar::Gf(x)) => gf.inv(x).map(Scalar::Gf),
            _ => panic!("scalar does not belong to {self:?}"),
        }
    }

    pub fn pow(&self, a: &Scalar, e: u64) -> Scalar {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Every element, for finite centers.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            CenterField::Rationals => None,
            CenterField::Galois(gf) => {
                Some((0..gf.order()).map(|i| Scalar::Gf(gf.element_at(i))).collect())
            }
        }
    }

    /// Evaluate a low-first polynomial at `x` by Horner's rule.
    pub fn poly_eval(&self, coeffs: &[Scalar], x: &Scalar) -> Scalar {
        coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    pub fn poly_mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        self.poly_trim(out)
    }

    /// Drop trailing zero coefficients.
    pub fn poly_trim(&self, mut p: Vec<Scalar>) -> Vec<Scalar> {
        while p.last().is_some_and(|c| self.is_zero(c)) {
            p.pop();
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horner_matches_direct_sum() {
        let q = CenterField::Rationals;
        // 1 + 2x + 3x^2 at x = 2 is 17
        let p: Vec<Scalar> = [1, 2, 3].iter().map(|&c| q.from_int(c)).collect();
        assert_eq!(q.poly_eval(&p, &q.from_int(2)), q.from_int(17));
    }

    #[test]
    fn galois_center_from_negative_integer() {
        let f = CenterField::Galois(GfField::new(5, 1).unwrap());
        assert_eq!(f.from_bigint(&BigInt::from(-1)), f.from_int(4));
    }
}
