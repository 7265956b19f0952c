#![allow(dead_code)]

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewid::algebra::{sample_element, sample_unit, Algebra, AlgebraSpec, Element};
use skewid::words::{Letter, Monomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// One algebra of every supported shape.
pub fn algebras() -> Vec<Algebra> {
    let f2 = AlgebraSpec::finite_field(2, 1).unwrap();
    let f3 = AlgebraSpec::finite_field(3, 1).unwrap();
    vec![
        AlgebraSpec::rational(),
        AlgebraSpec::finite_field(5, 1).unwrap(),
        AlgebraSpec::finite_field(2, 2).unwrap(),
        AlgebraSpec::hamilton(),
        AlgebraSpec::quaternion(q(2), q(-3)).unwrap(),
        AlgebraSpec::matrix(2, &f2).unwrap(),
        AlgebraSpec::matrix(2, &f3).unwrap(),
        AlgebraSpec::matrix(2, &AlgebraSpec::rational()).unwrap(),
        AlgebraSpec::matrix(2, &AlgebraSpec::hamilton()).unwrap(),
    ]
}

pub fn noncommutative() -> Vec<Algebra> {
    algebras().into_iter().filter(|a| !a.is_commutative()).collect()
}

pub fn element(alg: &Algebra, r: &mut ChaCha8Rng, height: u64) -> Element {
    sample_element(alg, r, height)
}

pub fn unit(alg: &Algebra, r: &mut ChaCha8Rng, height: u64) -> Element {
    sample_unit(alg, r, height).unwrap()
}

/// Non-central unit, by rejection.
pub fn noncentral_unit(alg: &Algebra, r: &mut ChaCha8Rng, height: u64) -> Element {
    loop {
        let x = unit(alg, r, height);
        if !x.is_central() {
            return x;
        }
    }
}

/// A random monomial with `len` letters over `x_1..x_arity`, exponents in ±1..±2.
pub fn monomial(alg: &Algebra, r: &mut ChaCha8Rng, arity: usize, len: usize) -> Monomial {
    let coeffs = (0..=len).map(|_| if r.gen_bool(0.3) { Element::one(alg) } else { unit(alg, r, 2) }).collect();
    let letters = (0..len)
        .map(|_| {
            let e = r.gen_range(1..=2) * if r.gen_bool(0.5) { 1 } else { -1 };
            Letter::new(r.gen_range(1..=arity), e)
        })
        .collect();
    Monomial::from_parts(coeffs, letters).unwrap()
}

/// Direct product `a₁ x^{n₁} a₂ ⋯` without any canonicalization.
pub fn naive_eval(coeffs: &[Element], letters: &[Letter], args: &[Element]) -> Element {
    let mut acc = coeffs[0].clone();
    for (l, c) in letters.iter().zip(&coeffs[1..]) {
        let base = if l.exp > 0 { args[l.var - 1].clone() } else { args[l.var - 1].invert().unwrap() };
        for _ in 0..l.exp.unsigned_abs() {
            acc = &acc * &base;
        }
        acc = &acc * c;
    }
    acc
}
