mod common;

use common::{rng, unit};
use proptest::prelude::*;
use skewid::algebra::{is_torsion, parse_literal, AlgebraSpec, Element};
use skewid::freeness::{
    reduced_word_count, relation_search, torsion_partner_scan, Gen, GroupWord, SearchLimits, Verdict,
};
use skewid::words::SeriesDescriptor;

/// All words of length `n` over the four letters, reduced or not.
fn all_words(n: usize) -> Vec<GroupWord> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|w: Vec<Gen>| Gen::ALL.iter().map(move |g| [w.clone(), vec![*g]].concat())).collect();
    }
    out.into_iter().map(GroupWord).collect()
}

#[test]
fn reduced_word_counts() {
    for n in 1..=7 {
        let reduced = all_words(n).into_iter().filter(GroupWord::is_reduced).count() as u64;
        assert_eq!(reduced_word_count(n as u32), reduced, "length {n}");
    }
}

#[test]
fn word_text_round_trip() {
    for w in all_words(4) {
        assert_eq!(GroupWord::parse(&w.to_string()), Some(w));
    }
    assert_eq!(GroupWord::parse("xq"), None);
}

fn limits(max_length: u32) -> SearchLimits {
    SearchLimits { max_length, ..SearchLimits::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verdicts_agree_with_exhaustive_evaluation(k in 0usize..3, seed in any::<u64>()) {
        let algs = [
            AlgebraSpec::hamilton(),
            AlgebraSpec::matrix(2, &AlgebraSpec::finite_field(3, 1).unwrap()).unwrap(),
            AlgebraSpec::matrix(2, &AlgebraSpec::rational()).unwrap(),
        ];
        let alg = &algs[k];
        let mut r = rng(seed);
        let (x, y) = (unit(alg, &mut r, 2), unit(alg, &mut r, 2));
        let cert = relation_search(&x, &y, &limits(4)).unwrap();
        let expected_degenerate =
            &x * &y == &y * &x || is_torsion(&x, 64).is_some() || is_torsion(&y, 64).is_some();
        prop_assert_eq!(cert.degenerate, expected_degenerate);
        let first_relation = (1..=4)
            .flat_map(all_words)
            .filter(GroupWord::is_reduced)
            .find(|w| w.evaluate(&x, &y).unwrap().is_one());
        match &cert.verdict {
            Verdict::RelationFound { word } => {
                let w = GroupWord::parse(word).unwrap();
                prop_assert!(w.is_reduced());
                prop_assert!(w.evaluate(&x, &y).unwrap().is_one());
                // breadth-first, lexicographic: the first relation in that order
                let expected = first_relation.unwrap();
                prop_assert_eq!(w, expected);
            }
            Verdict::NoRelationUpTo { length } => {
                prop_assert_eq!(*length, 4);
                prop_assert!(first_relation.is_none());
                let commutator = GroupWord(vec![Gen::X, Gen::Y, Gen::XInv, Gen::YInv]);
                prop_assert!(!commutator.evaluate(&x, &y).unwrap().is_one());
            }
            Verdict::BudgetTruncated { .. } => prop_assert!(false, "no budget pressure at height 2"),
        }
    }

    #[test]
    fn tight_bit_cap_accounts_for_every_word(seed in any::<u64>()) {
        let alg = AlgebraSpec::matrix(2, &AlgebraSpec::rational()).unwrap();
        let mut r = rng(seed);
        let (x, y) = (unit(&alg, &mut r, 3), unit(&alg, &mut r, 3));
        let tight = SearchLimits { max_length: 5, word_cap: 100_000, bit_cap: 24 };
        let cert = relation_search(&x, &y, &tight).unwrap();
        let words_tested = cert.words_tested;
        match cert.verdict {
            Verdict::BudgetTruncated { skipped } => {
                prop_assert!(skipped > 0);
                let total: u64 = (1..=5).map(reduced_word_count).sum();
                prop_assert_eq!(words_tested + skipped, total);
            }
            Verdict::NoRelationUpTo { .. } => {
                prop_assert_eq!(words_tested, (1..=5).map(reduced_word_count).sum::<u64>());
                for w in (1..=5).flat_map(all_words).filter(GroupWord::is_reduced) {
                    prop_assert!(!w.evaluate(&x, &y).unwrap().is_one());
                }
            }
            Verdict::RelationFound { word } => {
                prop_assert!(GroupWord::parse(&word).unwrap().evaluate(&x, &y).unwrap().is_one());
            }
        }
    }
}

#[test]
fn budget_is_checked_on_total_word_count() {
    let h = AlgebraSpec::hamilton();
    let x = Element::from_int(&h, 2);
    let cap = (1..=6).map(reduced_word_count).sum::<u64>();
    let ok = SearchLimits { max_length: 6, word_cap: cap, bit_cap: 4096 };
    assert!(relation_search(&x, &x, &ok).is_ok());
    let over = SearchLimits { word_cap: cap - 1, ..ok };
    assert!(relation_search(&x, &x, &over).is_err());
}

#[test]
fn scan_skips_torsion_partners() {
    let h = AlgebraSpec::hamilton();
    let u = parse_literal(&h, "[0,1,0,0]").unwrap();
    let certs = torsion_partner_scan(&u, 1, &SeriesDescriptor::trivial(), &SearchLimits::default()).unwrap();
    assert!(!certs.is_empty());
    for cert in certs {
        let v = parse_literal(&h, &cert.provenance.unwrap().v).unwrap();
        assert!(v.is_unit() && is_torsion(&v, 64).is_none(), "{v}");
    }
}
