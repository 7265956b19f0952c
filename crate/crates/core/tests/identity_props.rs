mod common;

use common::{monomial, noncentral_unit, noncommutative, rng, unit};
use num_bigint::BigUint;
use num_integer::Integer;
use proptest::prelude::*;
use skewid::algebra::{is_torsion, Algebra, AlgebraSpec, Element, Scalar};
use skewid::identity::{
    check_ggi, check_gpcgi, is_nontrivial, reduce_to_full_group, retarget_endpoints, Certificate, CheckLimits,
    GroupScope, Status,
};
use skewid::words::{build_u, Monomial, SeriesDescriptor, SeriesStep};

fn finite_algebras() -> Vec<Algebra> {
    vec![
        AlgebraSpec::finite_field(5, 1).unwrap(),
        AlgebraSpec::finite_field(2, 2).unwrap(),
        AlgebraSpec::matrix(2, &AlgebraSpec::finite_field(2, 1).unwrap()).unwrap(),
    ]
}

/// Every unit, listed by running through all coordinate vectors.
fn all_units(alg: &Algebra) -> Vec<Element> {
    let values = alg.center().elements().unwrap();
    let dim = alg.dimension();
    let total = values.len().pow(dim as u32);
    (0..total)
        .map(|mut n| {
            let coords: Vec<Scalar> = (0..dim)
                .map(|_| {
                    let v = values[n % values.len()].clone();
                    n /= values.len();
                    v
                })
                .collect();
            Element::from_center_coords(alg, &coords).unwrap()
        })
        .filter(Element::is_unit)
        .collect()
}

fn tuples(units: &[Element], arity: usize) -> Vec<Vec<Element>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out.into_iter().flat_map(|t| units.iter().map(move |u| [t.clone(), vec![u.clone()]].concat())).collect();
    }
    out
}

fn least_central(x: &Element, bound: u64) -> Option<u64> {
    let mut p = x.clone();
    for k in 1..=bound {
        if p.is_central() {
            return Some(k);
        }
        p = &p * x;
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ggi_matches_brute_force(k in 0usize..3, seed in any::<u64>(), arity in 1usize..3, len in 1usize..4, power in any::<bool>()) {
        let alg = &finite_algebras()[k];
        let mut r = rng(seed);
        let mut w = monomial(alg, &mut r, arity, len);
        if power {
            // powers by the group exponent give identities that must hold
            let e = alg.unit_group_order().unwrap();
            let e: u64 = e.try_into().unwrap();
            let inner = monomial(alg, &mut r, arity, len);
            let mut q = Monomial::one(alg);
            for _ in 0..e {
                q = q.multiply(&inner).unwrap();
            }
            w = q;
        }
        if w.is_coefficient_only() {
            return Ok(());
        }
        let units = all_units(alg);
        let all = tuples(&units, w.arity());
        let oracle = all.iter().all(|t| w.evaluate(t).unwrap().is_one());
        let report = check_ggi(&w, &GroupScope::FullGroup, &CheckLimits::default()).unwrap();
        prop_assert_eq!(report.holds(), oracle);
        if oracle {
            prop_assert_eq!(report.status, Status::HoldsExhaustive);
            prop_assert_eq!(report.tuples, all.len() as u64);
        } else {
            let witness = report.witness.unwrap();
            prop_assert!(!w.evaluate(&witness).unwrap().is_one());
        }
    }

    #[test]
    fn gpcgi_exponent_is_uniform(k in 0usize..3, seed in any::<u64>(), len in 1usize..4) {
        let alg = &finite_algebras()[k];
        let w = monomial(alg, &mut rng(seed), 1, len);
        if w.is_coefficient_only() {
            return Ok(());
        }
        let report = check_gpcgi(&w, &GroupScope::FullGroup, &CheckLimits::default()).unwrap();
        // finite groups: every value is torsion, so the identity always holds
        prop_assert_eq!(report.status, Status::HoldsExhaustive);
        let m = report.m.clone().unwrap();
        let units = all_units(alg);
        let mut lcm = BigUint::from(1u32);
        let mut brute = Vec::new();
        for t in tuples(&units, 1) {
            let value = w.evaluate(&t).unwrap();
            let p = least_central(&value, 10_000).unwrap();
            brute.push(p);
            lcm = lcm.lcm(&BigUint::from(p));
            prop_assert!(value.pow_u(&m).is_central());
        }
        let mut reported = report.exponents.clone();
        reported.sort_unstable();
        brute.sort_unstable();
        prop_assert_eq!(reported, brute);
        prop_assert_eq!(m, lcm);
    }

    #[test]
    fn sampled_checks_are_reproducible(k in 0usize..4, seed in any::<u64>()) {
        let alg = &noncommutative()[k];
        let mut r = rng(seed);
        let w = monomial(alg, &mut r, 2, 3);
        if w.is_coefficient_only() {
            return Ok(());
        }
        let scope = GroupScope::Sampler { count: 6, seed, height: 3 };
        let limits = CheckLimits { p_max: 12, ..CheckLimits::default() };
        let a = check_gpcgi(&w, &scope, &limits).unwrap();
        let b = check_gpcgi(&w, &scope, &limits).unwrap();
        prop_assert_eq!(&a, &b);
        if let Some(witness) = &a.witness {
            let v = w.evaluate(witness).unwrap();
            prop_assert!(least_central(&v, 12).is_none());
        }
    }

    #[test]
    fn nontriviality_certificates_are_sound(k in 0usize..4, seed in any::<u64>(), len in 1usize..5) {
        let alg = &noncommutative()[k];
        let w = monomial(alg, &mut rng(seed), 2, len);
        let r = is_nontrivial(&w, 16).unwrap();
        match r.certificate {
            Certificate::EndpointsDiffer { first, last } => {
                prop_assert!(r.nontrivial);
                prop_assert_ne!(first, last);
                prop_assert!(w.pow(5).unwrap().letter_count() > 0);
            }
            Certificate::CheckedPowers { up_to } => {
                prop_assert!(r.nontrivial);
                for p in 1..=up_to as i64 {
                    prop_assert!(!w.pow(p).unwrap().is_coefficient_only());
                }
            }
            Certificate::CollapsesAt { p } => {
                prop_assert!(!r.nontrivial);
                prop_assert!(w.pow(p as i64).unwrap().is_coefficient_only());
            }
        }
    }

    #[test]
    fn retarget_separates_endpoints(k in 0usize..4, seed in any::<u64>(), len in 1usize..5) {
        let alg = &noncommutative()[k];
        let mut r = rng(seed);
        let w = monomial(alg, &mut r, 2, len);
        let Ok(t) = retarget_endpoints(&w) else {
            return Ok(());
        };
        prop_assert_ne!(t.first_letter().unwrap().var, t.last_letter().unwrap().var);
        if t != w {
            let m = w.arity();
            let c: Vec<Element> = (0..2 * m).map(|_| unit(alg, &mut r, 2)).collect();
            let doubled: Vec<Element> = (0..m).map(|i| &c[i] * &c[m + i]).collect();
            prop_assert_eq!(t.evaluate(&c).unwrap(), w.evaluate(&doubled).unwrap());
        }
    }

    #[test]
    fn reduction_keeps_nontriviality_and_values(k in 0usize..4, seed in any::<u64>(), len in 2usize..5, normal in any::<bool>()) {
        let alg = &noncommutative()[k];
        let mut r = rng(seed);
        let w = monomial(alg, &mut r, 2, len);
        let (Some(f), Some(l)) = (w.first_letter(), w.last_letter()) else {
            return Ok(());
        };
        if f.var == l.var {
            return Ok(());
        }
        let a = noncentral_unit(alg, &mut r, 2);
        let series = if normal { SeriesDescriptor::new(vec![SeriesStep::Normal]).unwrap() } else { SeriesDescriptor::trivial() };
        let reduced = reduce_to_full_group(&w, &a, &series).unwrap();
        // a torsion `a` can cancel whole blocks y a^k y⁻¹, so only infinite order guarantees the endpoints survive
        if is_torsion(&a, 64).is_none() {
            prop_assert!(is_nontrivial(&reduced, 8).unwrap().nontrivial);
        }
        let u = build_u(&a, &series).unwrap().word;
        let ys: Vec<Element> = (0..w.arity()).map(|_| unit(alg, &mut r, 2)).collect();
        let us: Vec<Element> = ys.iter().map(|y| u.evaluate(std::slice::from_ref(y)).unwrap()).collect();
        prop_assert_eq!(reduced.evaluate(&ys).unwrap(), w.evaluate(&us).unwrap());
    }
}
