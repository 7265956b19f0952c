//! Seeded sampling and bounded enumeration of elements.
//!
//! The height of a rational `p/q` in lowest terms is `max(|p|, q)`. Sampled
//! coordinates have height at most the requested bound; finite-field
//! coordinates are uniform.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Algebra, AlgebraError, CenterField, Element, Scalar};

const UNIT_ATTEMPTS: usize = 10_000;

fn sample_scalar<R: Rng + ?Sized>(center: &CenterField, rng: &mut R, height: u64) -> Scalar {
    match center {
        CenterField::Rationals => {
            let h = height.max(1) as i64;
            let num = rng.gen_range(-h..=h);
            let den = rng.gen_range(1..=h);
            Scalar::Rat(BigRational::new(num.into(), den.into()))
        }
        CenterField::Galois(gf) => Scalar::Gf(gf.element_at(rng.gen_range(0..gf.order()))),
    }
}

/// Element with every center coordinate of height ≤ `height`.
pub fn sample_element<R: Rng + ?Sized>(alg: &Algebra, rng: &mut R, height: u64) -> Element {
    let center = alg.center();
    let coords: Vec<Scalar> =
        (0..alg.dimension()).map(|_| sample_scalar(&center, rng, height)).collect();
    Element::from_center_coords(alg, &coords).expect("coordinates match the algebra")
}

/// Rejection-sample a unit.
pub fn sample_unit<R: Rng + ?Sized>(
    alg: &Algebra,
    rng: &mut R,
    height: u64,
) -> Result<Element, AlgebraError> {
    for _ in 0..UNIT_ATTEMPTS {
        let x = sample_element(alg, rng, height);
        if x.is_unit() {
            return Ok(x);
        }
    }
    Err(AlgebraError::SamplingExhausted(UNIT_ATTEMPTS))
}

/// Tuple number `index` of a seeded stream: `arity` elements (units when
/// `units` is set) drawn from a generator keyed by `(seed, index)`, so any
/// tuple can be regenerated on its own.
pub fn sample_tuple(
    alg: &Algebra,
    arity: usize,
    seed: u64,
    index: u64,
    height: u64,
    units: bool,
) -> Result<Vec<Element>, AlgebraError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    (0..arity)
        .map(|_| if units { sample_unit(alg, &mut rng, height) } else { Ok(sample_element(alg, &mut rng, height)) })
        .collect()
}

/// All elements whose center coordinates are integers in `[-height, height]`
/// (every field element for finite centers), in lexicographic coordinate
/// order with the first coordinate varying slowest.
pub fn integral_elements(alg: &Algebra, height: u64) -> Vec<Element> {
    let center = alg.center();
    let values: Vec<Scalar> = match center.elements() {
        Some(all) => all,
        None => {
            let h = height as i64;
            (-h..=h).map(|v| center.from_int(v)).collect()
        }
    };
    let dim = alg.dimension();
    let mut out = Vec::new();
    let mut idx = vec![0usize; dim];
    loop {
        let coords: Vec<Scalar> = idx.iter().map(|&i| values[i].clone()).collect();
        out.push(Element::from_center_coords(alg, &coords).expect("coordinates match"));
        let mut pos = dim;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < values.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
