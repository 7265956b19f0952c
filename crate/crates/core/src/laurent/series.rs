use std::fmt;

use crate::algebra::{Algebra, Element};

use super::LaurentError;

/// `Σ_{d ≥ start} c_d t^d`, known exactly for degrees up to `order`.
///
/// Coefficients above `order` are unknown, never implicitly zero. `start` is
/// the valuation: the first stored coefficient is nonzero. A series known to
/// vanish up to `order` stores nothing and has `start = order + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedLaurentSeries {
    alg: Algebra,
    start: i64,
    order: i64,
    coeffs: Vec<Element>,
}

impl TruncatedLaurentSeries {
    /// Coefficients for degrees `start, start+1, …`; anything after them up
    /// to `order` is zero.
    pub fn new(alg: &Algebra, start: i64, coeffs: Vec<Element>, order: i64) -> Result<Self, LaurentError> {
        if let Some(c) = coeffs.iter().find(|c| !c.same_algebra(&Element::one(alg))) {
            return Err(LaurentError::Precondition(format!("coefficient {c} is not in {alg}")));
        }
        let last = start + coeffs.len() as i64 - 1;
        if last > order {
            return Err(LaurentError::BeyondOrder { degree: last, order });
        }
        Ok(Self::normalized(alg, start, coeffs, order))
    }

    fn normalized(alg: &Algebra, start: i64, mut coeffs: Vec<Element>, order: i64) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Self::zero(alg, order),
            Some(k) => {
                coeffs.drain(..k);
                while coeffs.last().is_some_and(Element::is_zero) {
                    coeffs.pop();
                }
                Self { alg: alg.clone(), start: start + k as i64, order, coeffs }
            }
        }
    }

    /// Zero to order `order`.
    pub fn zero(alg: &Algebra, order: i64) -> Self {
        Self { alg: alg.clone(), start: order + 1, order, coeffs: Vec::new() }
    }

    pub fn one(alg: &Algebra, order: i64) -> Self {
        Self::monomial(Element::one(alg), 0, order)
    }

    /// `c t^d`.
    pub fn monomial(c: Element, degree: i64, order: i64) -> Self {
        let alg = c.algebra().clone();
        if degree > order {
            return Self::zero(&alg, order);
        }
        Self::normalized(&alg, degree, vec![c], order)
    }

    /// Low-first polynomial `Σ c_i t^i`, truncated to `order`.
    pub fn polynomial(alg: &Algebra, coeffs: &[Element], order: i64) -> Self {
        let keep = coeffs.len().min((order + 1).max(0) as usize);
        Self::normalized(alg, 0, coeffs[..keep].to_vec(), order)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    /// Valuation; `order + 1` for the zero series.
    pub fn valuation(&self) -> i64 {
        self.start
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coefficient(&self) -> Option<&Element> {
        self.coeffs.first()
    }

    /// Coefficient of `t^degree`; an error above the order.
    pub fn coeff(&self, degree: i64) -> Result<Element, LaurentError> {
        if degree > self.order {
            return Err(LaurentError::BeyondOrder { degree, order: self.order });
        }
        Ok(self.coeff_unchecked(degree))
    }

    fn coeff_unchecked(&self, degree: i64) -> Element {
        let k = degree - self.start;
        if k < 0 || k as usize >= self.coeffs.len() {
            Element::zero(&self.alg)
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// `(degree, coefficient)` for every nonzero coefficient.
    pub fn terms(&self) -> Vec<(i64, Element)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.start + k as i64, c.clone()))
            .collect()
    }

    /// Forget coefficients above `order`.
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let keep = (order - self.start + 1).clamp(0, self.coeffs.len() as i64) as usize;
        Self::normalized(&self.alg, self.start, self.coeffs[..keep].to_vec(), order)
    }

    fn check_same(&self, rhs: &Self) -> Result<(), LaurentError> {
        if self.alg != rhs.alg {
            return Err(LaurentError::Precondition(format!(
                "series over {} and {} cannot be combined",
                self.alg, rhs.alg
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, LaurentError> {
        self.check_same(rhs)?;
        let order = self.order.min(rhs.order);
        let start = self.start.min(rhs.start);
        if start > order {
            return Ok(Self::zero(&self.alg, order));
        }
        let coeffs = (start..=order).map(|d| &self.coeff_unchecked(d) + &rhs.coeff_unchecked(d)).collect();
        Ok(Self::normalized(&self.alg, start, coeffs, order))
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect(), ..self.clone() }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, LaurentError> {
        self.add(&rhs.neg())
    }

    /// Cauchy product, valid up to `min(N₁ + v₂, N₂ + v₁)`.
    pub fn mul(&self, rhs: &Self) -> Result<Self, LaurentError> {
        self.check_same(rhs)?;
        let order = (self.order + rhs.start).min(rhs.order + self.start);
        let start = self.start + rhs.start;
        if self.is_zero() || rhs.is_zero() || start > order {
            return Ok(Self::zero(&self.alg, order));
        }
        let len = (order - start + 1) as usize;
        let mut coeffs = vec![Element::zero(&self.alg); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(Self::normalized(&self.alg, start, coeffs, order))
    }

    /// Multiply every coefficient on the left by `c`.
    pub fn scale_left(&self, c: &Element) -> Self {
        Self::normalized(&self.alg, self.start, self.coeffs.iter().map(|x| c * x).collect(), self.order)
    }

    /// `self^e` for `e ≥ 0`, by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Result<Self, LaurentError> {
        let mut acc = Self::one(&self.alg, self.order.max(0));
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Machine form: `(degree, literal)` for every nonzero coefficient.
    pub fn machine_terms(&self) -> Vec<(i64, String)> {
        self.terms().into_iter().map(|(d, c)| (d, c.to_string())).collect()
    }
}

impl fmt::Display for TruncatedLaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(d, c)| if d == 0 { c.to_string() } else { format!("{c}*t^{d}") })
            .collect();
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} + O(t^{})", parts.join(" + "), self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_literal, AlgebraSpec};

    #[test]
    fn product_with_conjugate() {
        let h = AlgebraSpec::hamilton();
        let one = Element::one(&h);
        let i = parse_literal(&h, "[0,1,0,0]").unwrap();
        let a = TruncatedLaurentSeries::polynomial(&h, &[one.clone(), i.clone()], 4);
        let b = TruncatedLaurentSeries::polynomial(&h, &[one.clone(), -&i], 4);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.order(), 4);
        assert_eq!(p.terms(), vec![(0, one.clone()), (2, one)]);
    }

    #[test]
    fn zero_times_anything() {
        let h = AlgebraSpec::hamilton();
        let z = TruncatedLaurentSeries::zero(&h, 5);
        let x = TruncatedLaurentSeries::monomial(Element::from_int(&h, 3), -2, 5);
        let p = z.mul(&x).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.order(), 3);
    }

    #[test]
    fn negative_degrees() {
        let q = AlgebraSpec::rational();
        let one = Element::one(&q);
        let tinv = TruncatedLaurentSeries::monomial(one.clone(), -1, 4);
        let t = TruncatedLaurentSeries::monomial(one.clone(), 1, 4);
        let p = tinv.mul(&t).unwrap();
        assert_eq!(p.terms(), vec![(0, one)]);
        assert_eq!(p.order(), 3);
        assert!(p.coeff(4).is_err());
        assert!(p.coeff(3).unwrap().is_zero());
    }

    #[test]
    fn display_form() {
        let q = AlgebraSpec::rational();
        let s = TruncatedLaurentSeries::polynomial(&q, &[Element::one(&q), Element::zero(&q), Element::from_int(&q, -2)], 3);
        assert_eq!(s.to_string(), "1 + -2*t^2 + O(t^4)");
        assert_eq!(TruncatedLaurentSeries::zero(&q, 1).to_string(), "0 + O(t^2)");
    }
}
