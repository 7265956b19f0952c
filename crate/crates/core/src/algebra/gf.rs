//! Finite fields `F_{p^k}` in a polynomial basis over the prime field.
//!
//! The defining polynomial is the first monic irreducible of degree `k` in
//! the order of its coefficient vector `(c_0, …, c_{k-1})` read as a base-`p`
//! integer with `c_0` least significant. This makes the basis a pure function
//! of `(p, k)`, so reports are reproducible across runs and machines.

use super::AlgebraError;

/// Largest field order accepted, so that exhaustive scans stay desk-scale.
pub const MAX_FIELD_ORDER: u64 = 1 << 32;

/// A finite field `F_{p^k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GfField {
    p: u64,
    k: usize,
    /// Low coefficients `c_0..c_{k-1}` of the monic modulus.
    modulus: Vec<u64>,
}

impl GfField {
    pub fn new(p: u64, k: usize) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::InvalidSpec(format!("p = {p} is not prime")));
        }
        if k == 0 {
            return Err(AlgebraError::InvalidSpec("k must be at least 1".into()));
        }
        let order = (p as u128).checked_pow(k as u32);
        if !matches!(order, Some(q) if q <= MAX_FIELD_ORDER as u128) {
            return Err(AlgebraError::InvalidSpec(format!(
                "field order {p}^{k} exceeds {MAX_FIELD_ORDER}"
            )));
        }
        let modulus = first_irreducible(p, k);
        Ok(Self { p, k, modulus })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    /// Low coefficients of the monic defining polynomial.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.k]
    }

    pub fn one(&self) -> Vec<u64> {
        self.from_int(1)
    }

    /// Image of an integer under the prime-field embedding.
    pub fn from_int(&self, n: i64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = n.rem_euclid(self.p as i64) as u64;
        v
    }

    /// The class of `x` (the polynomial-basis generator).
    pub fn generator(&self) -> Vec<u64> {
        let mut v = self.zero();
        if self.k > 1 {
            v[1] = 1;
        } else {
            // F_p is generated by 1 over itself.
            v[0] = 1;
        }
        v
    }

    /// Element whose coordinates are the base-`p` digits of `index`.
    pub fn element_at(&self, mut index: u64) -> Vec<u64> {
        let mut v = self.zero();
        for c in v.iter_mut() {
            *c = index % self.p;
            index /= self.p;
        }
        v
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + self.p - y) % self.p).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p as u128;
        let mut prod = vec![0u128; 2 * self.k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        // x^k = -(c_0 + c_1 x + … + c_{k-1} x^{k-1})
        for d in (self.k..prod.len()).rev() {
            let lead = prod[d];
            if lead == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &c) in self.modulus.iter().enumerate() {
                let slot = &mut prod[d - self.k + i];
                *slot = (*slot + (p - lead) * c as u128) % p;
            }
        }
        prod.truncate(self.k);
        prod.into_iter().map(|c| c as u64).collect()
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &[u64]) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.pow(a, self.order() - 2))
        }
    }

    /// Smallest `d | k` with `a ∈ F_{p^d}`, tested by `a^{p^d} = a`.
    pub fn subfield_degree(&self, a: &[u64]) -> usize {
        (1..=self.k)
            .filter(|d| self.k.is_multiple_of(*d))
            .find(|&d| self.pow(a, self.p.pow(d as u32)) == a)
            .unwrap_or(self.k)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Coefficients `c_0..c_{deg}` (low first) of the monic polynomial whose
/// lower coefficients are the base-`p` digits of `index`.
fn monic_from_index(p: u64, deg: usize, mut index: u64) -> Vec<u64> {
    let mut c = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        c.push(index % p);
        index /= p;
    }
    c.push(1);
    c
}

/// Remainder of `f` modulo a monic `g` over `F_p`, both low-first.
fn poly_rem(p: u64, f: &[u64], g: &[u64]) -> Vec<u64> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &c) in g.iter().enumerate() {
                let t = (lead as u128 * c as u128 % p as u128) as u64;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

fn first_irreducible(p: u64, k: usize) -> Vec<u64> {
    if k == 1 {
        return vec![0];
    }
    let total = p.pow(k as u32);
    for index in 0..total {
        let f = monic_from_index(p, k, index);
        if f[0] == 0 {
            continue;
        }
        let reducible = (1..=k / 2).any(|d| {
            (0..p.pow(d as u32)).any(|gi| {
                let g = monic_from_index(p, d, gi);
                poly_rem(p, &f, &g).iter().all(|&c| c == 0)
            })
        });
        if !reducible {
            return f[..k].to_vec();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
