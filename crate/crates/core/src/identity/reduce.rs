use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::algebra::{gl_order, AlgebraError, AlgebraSpec, CenterField, Element, Scalar};
use crate::words::{build_u, Monomial, SeriesDescriptor};

use super::check::least_central_power;
use super::IdentityError;

/// Why a monomial was judged (non-)trivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// `i_1 ≠ i_t`: no power can cancel across the seam, for every `p`.
    EndpointsDiffer { first: usize, last: usize },
    /// Every power up to the bound keeps an indeterminate.
    CheckedPowers { up_to: u64 },
    /// `w^p` has no indeterminate left.
    CollapsesAt { p: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nontriviality {
    pub nontrivial: bool,
    pub certificate: Certificate,
}

/// Whether no power `w^p`, `p ≤ p_max`, collapses into the coefficient algebra.
pub fn is_nontrivial(w: &Monomial, p_max: u64) -> Result<Nontriviality, IdentityError> {
    if p_max == 0 {
        return Err(IdentityError::Precondition("p_max must be at least 1".into()));
    }
    let (Some(first), Some(last)) = (w.first_letter(), w.last_letter()) else {
        return Ok(Nontriviality { nontrivial: false, certificate: Certificate::CollapsesAt { p: 1 } });
    };
    if first.var != last.var {
        return Ok(Nontriviality {
            nontrivial: true,
            certificate: Certificate::EndpointsDiffer { first: first.var, last: last.var },
        });
    }
    let mut power = w.clone();
    for p in 1..=p_max {
        if power.is_coefficient_only() {
            return Ok(Nontriviality { nontrivial: false, certificate: Certificate::CollapsesAt { p } });
        }
        if p < p_max {
            power = power.multiply(w)?;
        }
    }
    Ok(Nontriviality { nontrivial: true, certificate: Certificate::CheckedPowers { up_to: p_max } })
}

/// Make the first and last indeterminates differ.
///
/// Words that already have distinct endpoints are returned unchanged.
/// Otherwise every `x_i` becomes `x_i x_{m+i}`; if the endpoints still
/// coincide the transform is reported as failed.
pub fn retarget_endpoints(w: &Monomial) -> Result<Monomial, IdentityError> {
    let (Some(first), Some(last)) = (w.first_letter(), w.last_letter()) else {
        return Err(IdentityError::Precondition("the word has no indeterminate".into()));
    };
    if first.var != last.var {
        return Ok(w.clone());
    }
    let alg = w.algebra();
    let m = w.arity();
    let mut map = BTreeMap::new();
    for i in 1..=m {
        map.insert(i, Monomial::var(alg, i)?.multiply(&Monomial::var(alg, m + i)?)?);
    }
    let doubled = w.substitute(&map)?;
    match (doubled.first_letter(), doubled.last_letter()) {
        (Some(f), Some(l)) if f.var != l.var => Ok(doubled),
        _ => Err(IdentityError::TransformFailed(format!(
            "after x_i -> x_i x_(m+i) the word {doubled} still starts and ends with the same indeterminate"
        ))),
    }
}

/// `w'(y_1, …, y_m) = w(u_r(a, y_1), …, u_r(a, y_m))`, with `y_i` written `x_i`.
pub fn reduce_to_full_group(
    w: &Monomial,
    a: &Element,
    series: &SeriesDescriptor,
) -> Result<Monomial, IdentityError> {
    if !a.is_unit() || a.is_central() {
        return Err(IdentityError::Precondition(format!("{a} must be a non-central unit")));
    }
    match (w.first_letter(), w.last_letter()) {
        (Some(f), Some(l)) if f.var != l.var => {}
        _ => {
            return Err(IdentityError::Precondition(
                "the word must start and end with different indeterminates".into(),
            ))
        }
    }
    let u = build_u(a, series)?.word;
    let mut map = BTreeMap::new();
    for i in 1..=w.arity() {
        let rename = BTreeMap::from([(1, Monomial::var(a.algebra(), i)?)]);
        map.insert(i, u.substitute(&rename)?);
    }
    Ok(w.substitute(&map)?)
}

/// Least `n ≤ n_max` with `x^n` central.
pub fn radical_over_center(x: &Element, n_max: u64) -> Option<u64> {
    if !x.is_unit() {
        return None;
    }
    least_central_power(x, n_max)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocallyFiniteExponent {
    /// Size `q` of the subfield generated by the entries.
    pub q: u64,
    pub n: usize,
    /// `|GL_n(F_q)|`, verified to satisfy `a^m = 1`.
    #[serde(serialize_with = "ser_biguint")]
    pub m: BigUint,
}

fn ser_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `m = |GL_n(P_a)|` for the subfield `P_a` generated by the entries of `a`,
/// after checking `a^m = 1`.
pub fn locally_finite_exponent(a: &Element) -> Result<LocallyFiniteExponent, IdentityError> {
    let alg = a.algebra();
    let CenterField::Galois(gf) = alg.center() else {
        return Err(IdentityError::Unsupported(format!("{alg} is not over a finite field")));
    };
    let n = match alg.as_ref() {
        AlgebraSpec::FiniteField(_) => 1,
        AlgebraSpec::Matrix { n, .. } => *n,
        _ => unreachable!("finite centers only occur for fields and matrices over them"),
    };
    if !a.is_unit() {
        return Err(AlgebraError::NotInvertible(a.to_string()).into());
    }
    let d = a
        .center_coords()
        .iter()
        .map(|c| match c {
            Scalar::Gf(v) => gf.subfield_degree(v),
            Scalar::Rat(_) => unreachable!("finite center"),
        })
        .fold(1usize, |acc, d| acc.lcm(&d));
    let q = gf.characteristic().pow(d as u32);
    let m = gl_order(n, q);
    if !a.pow_u(&m).is_one() {
        return Err(IdentityError::Precondition(format!("{a} does not satisfy a^m = 1 for m = {m}")));
    }
    Ok(LocallyFiniteExponent { q, n, m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_literal, Algebra};
    use crate::words::{parse_monomial, Letter};

    fn quats() -> (Algebra, BTreeMap<String, Element>) {
        let h = AlgebraSpec::hamilton();
        let c = BTreeMap::from([
            ("a".to_string(), parse_literal(&h, "[0,1,0,0]").unwrap()),
            ("b".to_string(), parse_literal(&h, "[1,1,1,0]").unwrap()),
        ]);
        (h, c)
    }

    #[test]
    fn nontriviality_certificates() {
        let (h, c) = quats();
        let w = parse_monomial(&h, "@a * x1 * @a^-1 * x2^-1", &c).unwrap();
        assert_eq!(is_nontrivial(&w, 8).unwrap().certificate, Certificate::EndpointsDiffer { first: 1, last: 2 });
        let w = parse_monomial(&h, "@a * x1 * @a^-1 * x1^-1", &c).unwrap();
        let r = is_nontrivial(&w, 8).unwrap();
        assert!(r.nontrivial);
        assert_eq!(r.certificate, Certificate::CheckedPowers { up_to: 8 });
        // oracle: the powers keep 2p letters
        for p in 1..=8 {
            assert_eq!(w.pow(p).unwrap().letter_count(), 2 * p as usize);
        }
    }

    #[test]
    fn retarget_examples() {
        let (h, c) = quats();
        let w = parse_monomial(&h, "@a * x1 * @a^-1 * x2^-1", &c).unwrap();
        assert_eq!(retarget_endpoints(&w).unwrap(), w);
        let w = parse_monomial(&h, "x1 * @a * x2", &c).unwrap();
        assert_eq!(retarget_endpoints(&w).unwrap(), w);
        let w = parse_monomial(&h, "@a * x1 * @a^-1 * x1^-1", &c).unwrap();
        assert!(matches!(retarget_endpoints(&w), Err(IdentityError::TransformFailed(_))));
        let w = parse_monomial(&h, "@a * x1 * @a^-1 * x1", &c).unwrap();
        let r = retarget_endpoints(&w).unwrap();
        assert_eq!(r.first_letter(), Some(Letter::new(1, 1)));
        assert_eq!(r.last_letter(), Some(Letter::new(2, 1)));
    }

    #[test]
    fn reduction_of_product() {
        let (h, c) = quats();
        let w = parse_monomial(&h, "x1 * x2", &c).unwrap();
        let a = &c["a"];
        let r = reduce_to_full_group(&w, a, &SeriesDescriptor::trivial()).unwrap();
        assert_eq!(r.to_dsl(&c), "x1 * @a^-1 * x1^-1 * x2 * @a^-1 * x2^-1");
        assert!(reduce_to_full_group(&w, &Element::from_int(&h, 2), &SeriesDescriptor::trivial()).is_err());
    }

    #[test]
    fn radicals() {
        let (h, c) = quats();
        let j = parse_literal(&h, "[0,0,1,0]").unwrap();
        assert_eq!(radical_over_center(&j, 64), Some(2));
        let one_i = parse_literal(&h, "[1,1,0,0]").unwrap();
        assert_eq!(radical_over_center(&one_i, 64), Some(4));
        assert_eq!(radical_over_center(&c["b"], 50), None);
    }

    #[test]
    fn locally_finite_examples() {
        let f2 = AlgebraSpec::finite_field(2, 1).unwrap();
        let m2 = AlgebraSpec::matrix(2, &f2).unwrap();
        let id = Element::one(&m2);
        assert_eq!(locally_finite_exponent(&id).unwrap().m, BigUint::from(6u32));
        let a = parse_literal(&m2, "[[0,1],[1,1]]").unwrap();
        assert_eq!(locally_finite_exponent(&a).unwrap().m, BigUint::from(6u32));
        let f5 = AlgebraSpec::finite_field(5, 1).unwrap();
        let two = Element::from_int(&f5, 2);
        let r = locally_finite_exponent(&two).unwrap();
        assert_eq!((r.q, r.m.clone()), (5, BigUint::from(4u32)));
        // entries in F_2 inside F_4 generate only F_2
        let f4 = AlgebraSpec::finite_field(2, 2).unwrap();
        let m2f4 = AlgebraSpec::matrix(2, &f4).unwrap();
        let b = parse_literal(&m2f4, "[[0,1],[1,1]]").unwrap();
        assert_eq!(locally_finite_exponent(&b).unwrap().q, 2);
        let g = parse_literal(&m2f4, "[[[0,1],0],[0,1]]").unwrap();
        assert_eq!(locally_finite_exponent(&g).unwrap().q, 4);
        assert!(locally_finite_exponent(&Element::one(&AlgebraSpec::hamilton())).is_err());
    }
}
