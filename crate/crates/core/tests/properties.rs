//! Algebraic invariants on random inputs.

use grtkit::assoc::{grt_inverse, grt_mul};
use grtkit::braid::{BraidAlgebra, BraidSeries};
use grtkit::kv::{taut_apply, taut_compose, TAutPair};
use grtkit::ncseries::lyndon::lyndon_lie_basis;
use grtkit::ncseries::{exp, group_like_residual, log, Alphabet, Series, Word};
use grtkit::scalar::{rat, BigComplex, Rational, Scalar};
use proptest::prelude::*;

const N: usize = 4;

fn terms(letters: u8, max_len: usize) -> impl Strategy<Value = Vec<(Vec<u8>, i64, i64)>> {
    prop::collection::vec((prop::collection::vec(0..letters, 0..=max_len), -9i64..10, 1i64..7), 0..12)
}

fn series(a: &Alphabet, n: usize, raw: &[(Vec<u8>, i64, i64)]) -> Series<Rational> {
    let mut s = Series::zero(a, n, &());
    for (w, p, q) in raw {
        s.add_term(Word::from_letters(w), rat(*p, *q));
    }
    s
}

/// Random Lie series without constant term, in the Lyndon basis.
fn lie(raw: &[(i64, i64)]) -> Series<Rational> {
    let a = Alphabet::x01();
    let mut s = Series::zero(&a, N, &());
    let basis: Vec<_> = (1..=N).flat_map(|d| lyndon_lie_basis(&a, d)).collect();
    for (b, (p, q)) in basis.iter().zip(raw) {
        s = &s + &b.bracket.to_series::<Rational>(&a, N, &()).scale_rational(&rat(*p, *q));
    }
    s
}

fn lie_coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    // 2 + 1 + 2 + 3 Lyndon words in degrees 1..4
    prop::collection::vec((-4i64..5, 1i64..5), 8)
}

fn grouplike() -> impl Strategy<Value = Series<Rational>> {
    lie_coeffs().prop_map(|c| exp(&lie(&c)).unwrap())
}

fn pair() -> impl Strategy<Value = TAutPair<Rational>> {
    (grouplike(), grouplike()).prop_map(|(a, b)| TAutPair::new(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rational_series_round_trip(raw in terms(2, N)) {
        let s = series(&Alphabet::x01(), N, &raw);
        prop_assert_eq!(Series::<Rational>::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn weighted_series_round_trip(raw in terms(3, 2)) {
        let a = Alphabet::y(3);
        let s = series(&a, 6, &raw);
        prop_assert_eq!(Series::<Rational>::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn complex_series_round_trip(raw in terms(2, N)) {
        let digits = 30;
        let mut s = Series::zero(&Alphabet::x01(), N, &digits);
        for (w, p, q) in &raw {
            let re = BigComplex::from_rational(&rat(*p, *q), &digits);
            s.add_term(Word::from_letters(w), re.mul(&BigComplex::i(digits)).add(&re.mul_rational(&rat(1, 3))));
        }
        let back = Series::<BigComplex>::from_json(&s.to_json()).unwrap();
        prop_assert!((&back - &s).max_coeff().0 <= 1e-28);
    }

    #[test]
    fn braid_series_round_trip(raw in terms(6, 3)) {
        let a4 = BraidAlgebra::a4();
        let b = BraidSeries::from_raw(&a4, &series(a4.alphabet(), 3, &raw)).unwrap();
        prop_assert_eq!(BraidSeries::<Rational>::from_json(&b.to_json()).unwrap(), b);
    }

    #[test]
    fn taut_pair_round_trip(p in pair()) {
        prop_assert_eq!(TAutPair::<Rational>::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn exp_and_log_are_inverse(c in lie_coeffs()) {
        let l = lie(&c);
        let g = exp(&l).unwrap();
        prop_assert_eq!(log(&g).unwrap(), l);
        prop_assert_eq!(group_like_residual(&g).residual, 0.0);
    }

    #[test]
    fn taut_action_is_multiplicative(p in pair(), g in grouplike(), h in grouplike()) {
        let lhs = taut_apply(&p, &(&g * &h)).unwrap();
        let rhs = &taut_apply(&p, &g).unwrap() * &taut_apply(&p, &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn taut_composition_is_associative(p in pair(), q in pair(), r in pair()) {
        let lhs = taut_compose(&taut_compose(&p, &q).unwrap(), &r).unwrap();
        let rhs = taut_compose(&p, &taut_compose(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn taut_composition_acts_as_composition(p in pair(), q in pair(), g in grouplike()) {
        let pq = taut_compose(&p, &q).unwrap();
        prop_assert_eq!(taut_apply(&pq, &g).unwrap(), taut_apply(&p, &taut_apply(&q, &g).unwrap()).unwrap());
    }

    #[test]
    fn twisted_composition_is_a_group_law(a in grouplike(), b in grouplike(), c in grouplike()) {
        let lhs = grt_mul(&grt_mul(&a, &b).unwrap(), &c).unwrap();
        let rhs = grt_mul(&a, &grt_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let one = Series::one(&Alphabet::x01(), N, &());
        prop_assert_eq!(grt_mul(&grt_inverse(&a).unwrap(), &a).unwrap(), one.clone());
        prop_assert_eq!(grt_mul(&a, &grt_inverse(&a).unwrap()).unwrap(), one);
    }
}
