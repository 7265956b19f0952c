//! Three routes to `(1 + a t)^{-1}` and the values `β` where `1 + aβ` is singular.

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{minimal_polynomial, Algebra, CenterField, Element, Scalar};

use super::{LaurentError, TruncatedLaurentSeries};

/// Largest finite center scanned exhaustively for roots.
pub const MAX_ROOT_SCAN: u64 = 1 << 20;
/// Trial division bound when listing divisors for the rational root test.
const MAX_TRIAL_DIVISOR: u64 = 10_000_000;

/// `Σ_{i=0}^{N} (−1)^i a^i t^i`.
pub fn invert_geometric(a: &Element, order: i64) -> Result<TruncatedLaurentSeries, LaurentError> {
    if order < 0 {
        return Err(LaurentError::Precondition("order must be non-negative".into()));
    }
    let alg = a.algebra();
    let neg_a = -a;
    let mut coeffs = Vec::with_capacity(order as usize + 1);
    let mut power = Element::one(alg);
    for _ in 0..=order {
        coeffs.push(power.clone());
        power = &power * &neg_a;
    }
    TruncatedLaurentSeries::new(alg, 0, coeffs, order)
}

/// Inverse of a series with invertible leading coefficient, solved degree by
/// degree. If `s` is known to order `N` with valuation `v`, the inverse is
/// known to order `N − 2v`.
pub fn invert_general(s: &TruncatedLaurentSeries) -> Result<TruncatedLaurentSeries, LaurentError> {
    let lead = s
        .leading_coefficient()
        .ok_or_else(|| LaurentError::LeadingCoefficientNotInvertible("0".into()))?;
    let lead_inv = lead
        .invert()
        .map_err(|_| LaurentError::LeadingCoefficientNotInvertible(lead.to_string()))?;
    let v = s.valuation();
    let known = s.order() - v;
    let shifted: Vec<Element> = (0..=known).map(|k| s.coeff(v + k)).collect::<Result<_, _>>()?;
    let mut inv: Vec<Element> = Vec::with_capacity(known as usize + 1);
    inv.push(lead_inv.clone());
    for k in 1..=known as usize {
        let mut acc = Element::zero(s.algebra());
        for j in 1..=k {
            acc = &acc + &(&shifted[j] * &inv[k - j]);
        }
        inv.push(-&(&lead_inv * &acc));
    }
    TruncatedLaurentSeries::new(s.algebra(), -v, inv, known - v)
}

/// `h₁(t) / h₂(t)` with `h₁ ∈ A[t]` and `h₂` over the center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeriesForm {
    alg: Algebra,
    /// Low-first.
    pub numerator: Vec<Element>,
    /// Low-first, nonzero constant term.
    pub denominator: Vec<Scalar>,
}

impl RationalSeriesForm {
    /// Expand to order `order` by inverting the denominator as a power series.
    pub fn to_series(&self, order: i64) -> Result<TruncatedLaurentSeries, LaurentError> {
        let center = self.alg.center();
        let d0_inv = center
            .inv(&self.denominator[0])
            .ok_or_else(|| LaurentError::LeadingCoefficientNotInvertible(self.denominator[0].to_string()))?;
        // 1/h₂ over the center, coefficient by coefficient.
        let mut inv: Vec<Scalar> = vec![d0_inv.clone()];
        for k in 1..=order.max(0) as usize {
            let mut acc = center.zero();
            for j in 1..=k.min(self.denominator.len() - 1) {
                acc = center.add(&acc, &center.mul(&self.denominator[j], &inv[k - j]));
            }
            inv.push(center.neg(&center.mul(&d0_inv, &acc)));
        }
        let inv: Vec<Element> = inv.iter().map(|s| Element::from_scalar(&self.alg, s)).collect();
        let num = TruncatedLaurentSeries::polynomial(&self.alg, &self.numerator, order);
        let den_inv = TruncatedLaurentSeries::polynomial(&self.alg, &inv, order);
        num.mul(&den_inv)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }
}

/// The polynomials `g_0, …, g_n` over the center with
/// `Σ g_i(t) (1 + a t)^i = t^n f_a(a)` identically, where `f_a` is the
/// minimal polynomial of `a` (so the sum vanishes).
///
/// `g_i(t) = Σ_{j ≥ i} c_j C(j,i) (−1)^{j−i} t^{n−j}`, low-first.
pub fn g_polynomials(a: &Element) -> Vec<Vec<Scalar>> {
    let f = minimal_polynomial(a);
    let center = f.center().clone();
    let c = f.coeffs();
    let n = f.degree();
    (0..=n)
        .map(|i| {
            let mut g = vec![center.zero(); n + 1];
            for (j, cj) in c.iter().enumerate().skip(i) {
                let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                let b = binomial(BigInt::from(j), BigInt::from(i)) * sign;
                g[n - j] = center.add(&g[n - j], &center.mul(cj, &center.from_bigint(&b)));
            }
            center.poly_trim(g)
        })
        .collect()
}

/// `(1 + a t)^{-1} = −(Σ_{i=1}^{n} g_i(t) (1 + a t)^{i−1}) / g_0(t)`.
pub fn invert_algebraic(a: &Element) -> Result<RationalSeriesForm, LaurentError> {
    let alg = a.algebra().clone();
    let g = g_polynomials(a);
    let one = Element::one(&alg);
    let base = [one.clone(), a.clone()];
    let mut power = vec![one];
    let mut numerator: Vec<Element> = Vec::new();
    for gi in &g[1..] {
        let gi_el: Vec<Element> = gi.iter().map(|s| Element::from_scalar(&alg, s)).collect();
        let term = poly_mul(&gi_el, &power);
        add_into(&mut numerator, &term);
        power = poly_mul(&power, &base);
    }
    let numerator: Vec<Element> = numerator.iter().map(|c| -c).collect();
    let numerator = trim(numerator);
    Ok(RationalSeriesForm { alg, numerator, denominator: g[0].clone() })
}

fn poly_mul(a: &[Element], b: &[Element]) -> Vec<Element> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let alg = a[0].algebra();
    let mut out = vec![Element::zero(alg); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn add_into(acc: &mut Vec<Element>, term: &[Element]) {
    for (k, t) in term.iter().enumerate() {
        if k < acc.len() {
            acc[k] = &acc[k] + t;
        } else {
            acc.push(t.clone());
        }
    }
}

fn trim(mut p: Vec<Element>) -> Vec<Element> {
    while p.last().is_some_and(Element::is_zero) {
        p.pop();
    }
    p
}

/// Central `β` for which `1 + aβ` is not a unit: the roots of `g_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadBeta {
    #[serde(serialize_with = "ser_scalars")]
    pub roots: Vec<Scalar>,
    /// Degree of `g_0`: the minimal-polynomial degree when `a` is a unit,
    /// smaller when `a` is singular since the leading coefficient of `g_0` is `f_a(0)`.
    pub degree: usize,
}

fn ser_scalars<S: serde::Serializer>(v: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(Scalar::to_string))
}

/// Roots of `g_0` in the center: every rational root over `ℚ` via the
/// rational root theorem, or an exhaustive scan of a finite center.
pub fn bad_beta(a: &Element) -> Result<BadBeta, LaurentError> {
    let g0 = g_polynomials(a).swap_remove(0);
    let center = a.algebra().center();
    let degree = g0.len() - 1;
    let roots = match &center {
        CenterField::Rationals => {
            let coeffs: Vec<BigRational> =
                g0.iter().map(|s| s.as_rational().expect("rational center").clone()).collect();
            rational_roots(&coeffs)?.into_iter().map(Scalar::Rat).collect()
        }
        CenterField::Galois(gf) => {
            if gf.order() > MAX_ROOT_SCAN {
                return Err(LaurentError::RootSearchUnsupported(format!(
                    "exhaustive scan of {} elements exceeds {MAX_ROOT_SCAN}",
                    gf.order()
                )));
            }
            center
                .elements()
                .expect("finite center")
                .into_iter()
                .filter(|b| center.is_zero(&center.poly_eval(&g0, b)))
                .collect()
        }
    };
    Ok(BadBeta { roots, degree })
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, LaurentError> {
    let n = n.abs();
    let Some(small) = n.to_u64() else {
        return Err(LaurentError::RootSearchUnsupported(format!("cannot factor {n}")));
    };
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= small {
        if d > MAX_TRIAL_DIVISOR {
            return Err(LaurentError::RootSearchUnsupported(format!("cannot factor {n}")));
        }
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d != small / d {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    out.sort();
    Ok(out)
}

/// Distinct rational roots of a low-first polynomial with nonzero constant term,
/// in increasing order.
pub(crate) fn rational_roots(coeffs: &[BigRational]) -> Result<Vec<BigRational>, LaurentError> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let ints: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();
    let c0 = &ints[0];
    let lead = ints.last().expect("nonempty");
    if c0.is_zero() {
        return Err(LaurentError::Precondition("constant term must be nonzero".into()));
    }
    let ps = divisors(c0)?;
    let qs = divisors(lead)?;
    let mut roots: Vec<BigRational> = Vec::new();
    for p in &ps {
        for q in &qs {
            for cand in [BigRational::new(p.clone(), q.clone()), BigRational::new(-p.clone(), q.clone())] {
                if roots.contains(&cand) {
                    continue;
                }
                let value = ints
                    .iter()
                    .rev()
                    .fold(BigRational::zero(), |acc, c| acc * &cand + BigRational::from_integer(c.clone()));
                if value.is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_literal, AlgebraSpec};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn geometric_for_i() {
        let h = AlgebraSpec::hamilton();
        let i = parse_literal(&h, "[0,1,0,0]").unwrap();
        let s = invert_geometric(&i, 3).unwrap();
        let lits: Vec<String> = (0..=3).map(|d| s.coeff(d).unwrap().to_string()).collect();
        assert_eq!(lits, ["[1,0,0,0]", "[0,-1,0,0]", "[-1,0,0,0]", "[0,1,0,0]"]);
        let one_plus = TruncatedLaurentSeries::polynomial(&h, &[Element::one(&h), i], 3);
        let p = one_plus.mul(&s).unwrap();
        assert_eq!(p, TruncatedLaurentSeries::one(&h, 3));
    }

    #[test]
    fn geometric_degenerate_cases() {
        let q = AlgebraSpec::rational();
        let s = invert_geometric(&Element::zero(&q), 5).unwrap();
        assert_eq!(s, TruncatedLaurentSeries::one(&q, 5));
        let s = invert_geometric(&Element::from_int(&q, -1), 2).unwrap();
        assert_eq!(s.terms().len(), 3);
        assert!(s.terms().iter().all(|(_, c)| c.is_one()));
    }

    #[test]
    fn general_inverse() {
        let h = AlgebraSpec::hamilton();
        let a = parse_literal(&h, "[1,2,-1,1/2]").unwrap();
        let s = TruncatedLaurentSeries::polynomial(&h, &[Element::one(&h), a.clone()], 8);
        assert_eq!(invert_general(&s).unwrap(), invert_geometric(&a, 8).unwrap());
        // t (1 + t)
        let q = AlgebraSpec::rational();
        let s = TruncatedLaurentSeries::new(&q, 1, vec![Element::one(&q), Element::one(&q)], 6).unwrap();
        let inv = invert_general(&s).unwrap();
        assert_eq!(inv.valuation(), -1);
        assert_eq!(s.mul(&inv).unwrap().truncate(4), TruncatedLaurentSeries::one(&q, 4));
    }

    #[test]
    fn general_inverse_refuses_zero_divisor_lead() {
        let split = AlgebraSpec::quaternion(r(1, 1), r(1, 1)).unwrap();
        let z = parse_literal(&split, "[1,1,0,0]").unwrap();
        let s = TruncatedLaurentSeries::polynomial(&split, &[z], 4);
        assert!(matches!(invert_general(&s), Err(LaurentError::LeadingCoefficientNotInvertible(_))));
    }

    #[test]
    fn algebraic_inverse_for_i() {
        let h = AlgebraSpec::hamilton();
        let i = parse_literal(&h, "[0,1,0,0]").unwrap();
        let form = invert_algebraic(&i).unwrap();
        let den: Vec<String> = form.denominator.iter().map(|s| s.to_string()).collect();
        assert_eq!(den, ["1", "0", "1"]);
        let num: Vec<String> = form.numerator.iter().map(|s| s.to_string()).collect();
        assert_eq!(num, ["[1,0,0,0]", "[0,-1,0,0]"]);
        assert_eq!(form.to_series(8).unwrap(), invert_geometric(&i, 8).unwrap());
    }

    #[test]
    fn algebraic_inverse_for_central() {
        let q = AlgebraSpec::rational();
        let m1 = Element::from_int(&q, -1);
        let form = invert_algebraic(&m1).unwrap();
        let den: Vec<String> = form.denominator.iter().map(|s| s.to_string()).collect();
        assert_eq!(den, ["-1", "1"]);
        assert_eq!(form.to_series(6).unwrap(), invert_geometric(&m1, 6).unwrap());
        let lam = Element::from_int(&q, 5);
        let den: Vec<String> = invert_algebraic(&lam).unwrap().denominator.iter().map(|s| s.to_string()).collect();
        assert_eq!(den, ["-1", "-5"]);
    }

    #[test]
    fn bad_beta_examples() {
        let h = AlgebraSpec::hamilton();
        let i = parse_literal(&h, "[0,1,0,0]").unwrap();
        assert!(bad_beta(&i).unwrap().roots.is_empty());
        let q = AlgebraSpec::rational();
        let b = bad_beta(&Element::from_int(&q, -1)).unwrap();
        assert_eq!(b.roots, vec![Scalar::Rat(r(1, 1))]);
        let m2 = AlgebraSpec::matrix(2, &AlgebraSpec::Rational).unwrap();
        let d = parse_literal(&m2, "[[-1,0],[0,-1/2]]").unwrap();
        let b = bad_beta(&d).unwrap();
        assert_eq!(b.roots, vec![Scalar::Rat(r(1, 1)), Scalar::Rat(r(2, 1))]);
        for beta in [1, 2] {
            let x = &Element::one(&m2) + &d.scale(&Scalar::Rat(r(beta, 1)));
            assert!(!x.is_unit());
        }
    }

    #[test]
    fn bad_beta_over_finite_field() {
        let f5 = AlgebraSpec::finite_field(5, 1).unwrap();
        let m2 = AlgebraSpec::matrix(2, &f5).unwrap();
        let a = parse_literal(&m2, "[[1,0],[0,2]]").unwrap();
        let b = bad_beta(&a).unwrap();
        // 1 + β = 0 at β = 4, 1 + 2β = 0 at β = 2
        let got: Vec<String> = b.roots.iter().map(|s| s.to_string()).collect();
        assert_eq!(got, ["2", "4"]);
    }

    #[test]
    fn rational_roots_of_product() {
        // (2t − 1)(t + 3)(t² + 1) = 2t⁴ + 5t³ − t² + 5t − 3
        let c: Vec<BigRational> = [-3, 5, -1, 5, 2].iter().map(|&x| r(x, 1)).collect();
        assert_eq!(rational_roots(&c).unwrap(), vec![r(-3, 1), r(1, 2)]);
    }
}
