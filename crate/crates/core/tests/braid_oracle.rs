//! Certifies the level-sorted rewrite system against a direct computation in
//! the free algebra modulo the ideal of infinitesimal braid relations.

mod common;

use std::collections::BTreeMap;

use common::{as_map, relations, Quotient};
use grtkit::braid::{normal_form, normal_product, BraidAlgebra};
use grtkit::ncseries::Word;

#[test]
fn rewrite_system_matches_ideal_quotient_up_to_degree_four() {
    for n in [3, 4] {
        let alg = BraidAlgebra::new(n).unwrap();
        for d in 0..=4 {
            let q = Quotient::new(&alg, d);
            // no pivot on a normal word: level-sorted words stay independent
            assert!(q.pivots.keys().all(|&c| c < q.normal_start), "n={n} d={d}");
            let total = q.words.len();
            assert_eq!((total - q.pivots.len()) as u64, alg.dimension(d), "n={n} d={d}");
            for w in alg.alphabet().words_of_degree(d) {
                assert_eq!(as_map(&normal_form(&alg, &w)), q.normal_form(&w), "n={n} word {w:?}");
            }
        }
    }
}

#[test]
fn basis_counts_for_four_strands() {
    let a4 = BraidAlgebra::a4();
    let counts: Vec<u64> = (0..=3).map(|d| a4.dimension(d)).collect();
    assert_eq!(counts, vec![1, 6, 25, 90]);
}

#[test]
fn every_basis_word_is_reached() {
    let a4 = BraidAlgebra::a4();
    for d in 0..=4 {
        let mut seen = std::collections::BTreeSet::new();
        for w in a4.alphabet().words_of_degree(d) {
            seen.extend(normal_form(&a4, &w).iter().map(|(v, _)| v.clone()));
        }
        assert_eq!(seen.len() as u64, a4.dimension(d));
    }
}

#[test]
fn relations_vanish_in_context() {
    let a4 = BraidAlgebra::a4();
    for r in relations(&a4) {
        for u in a4.basis(1).into_iter().chain([Word::empty()]) {
            for v in a4.basis(2).into_iter().chain(a4.basis(1)) {
                let mut acc: BTreeMap<Word, i64> = BTreeMap::new();
                for (m, c) in &r {
                    for (w, k) in normal_form(&a4, &u.concat(m).concat(&v)).iter() {
                        *acc.entry(w.clone()).or_insert(0) += c * k;
                    }
                }
                assert!(acc.values().all(|c| *c == 0));
            }
        }
    }
}

#[test]
fn normal_product_is_multiplicative() {
    let a4 = BraidAlgebra::a4();
    let raws: Vec<Word> = (1..=3).flat_map(|d| a4.alphabet().words_of_degree(d)).step_by(7).collect();
    for u in &raws {
        for v in raws.iter().filter(|v| v.len() + u.len() <= 5) {
            let mut lhs: BTreeMap<Word, i64> = BTreeMap::new();
            for (a, x) in normal_form(&a4, u).iter() {
                for (b, y) in normal_form(&a4, v).iter() {
                    for (w, z) in normal_product(&a4, a, b).iter() {
                        *lhs.entry(w.clone()).or_insert(0) += x * y * z;
                    }
                }
            }
            lhs.retain(|_, c| *c != 0);
            let rhs: BTreeMap<Word, i64> = normal_form(&a4, &u.concat(v)).iter().cloned().collect();
            assert_eq!(lhs, rhs);
        }
    }
}
