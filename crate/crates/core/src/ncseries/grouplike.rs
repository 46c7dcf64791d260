//! Group-likeness: the shuffle relations `c(u) c(v) = c(u ш v)`.

use std::collections::{BTreeMap, HashMap};

use crate::ncseries::alphabet::{Alphabet, Word};
use crate::ncseries::lyndon::{is_lyndon, lyndon_factorization};
use crate::ncseries::series::Series;
use crate::ncseries::shuffle::{shuffle, shuffle_multiset};
use crate::scalar::{Rational, Scalar};

/// Outcome of a group-likeness test.
#[derive(Clone, Debug)]
pub struct GroupLikeReport {
    /// Largest `|c(u)c(v) - c(u ш v)|`; infinite when the constant term is not 1.
    pub residual: f64,
    /// Pair of words realising the largest residual.
    pub worst_pair: Option<(Word, Word)>,
    pub note: Option<String>,
}

impl GroupLikeReport {
    pub fn passes(&self, threshold: f64) -> bool {
        self.residual.is_finite() && self.residual <= threshold
    }
}

/// Checks the shuffle relations for every pair of non-empty words `u, v`
/// with `deg u + deg v <= N`.
pub fn group_like_residual<C: Scalar>(phi: &Series<C>) -> GroupLikeReport {
    let ctx = phi.ctx().clone();
    let c0 = phi.constant_term();
    if !c0.sub(&C::one(&ctx)).is_zero() {
        return GroupLikeReport {
            residual: f64::INFINITY,
            worst_pair: None,
            note: Some(format!("constant term is {c0:?}, not 1")),
        };
    }
    let a = phi.alphabet();
    let n = phi.truncation();
    let words: Vec<Word> = a.words_up_to(n).into_iter().filter(|w| !w.is_empty()).collect();
    let mut best = 0.0f64;
    let mut worst = None;
    for (i, u) in words.iter().enumerate() {
        let du = a.degree(u);
        if 2 * du > n {
            break;
        }
        for v in &words[i..] {
            let dv = a.degree(v);
            if du + dv > n {
                continue;
            }
            let mut r = phi.coeff(u).mul(&phi.coeff(v));
            for (w, k) in shuffle(u, v) {
                if let Some(c) = phi.get(&w) {
                    r = r.sub(&c.mul_i64(k as i64));
                }
            }
            let m = r.magnitude();
            if m > best || (worst.is_none() && !r.is_zero()) {
                best = best.max(m);
                worst = Some((u.clone(), v.clone()));
            }
        }
    }
    GroupLikeReport { residual: best, worst_pair: worst, note: None }
}

/// Builds the group-like series whose coefficient on each Lyndon word is
/// `value(word)`, using that every word `w` with Lyndon factorisation
/// `l1^e1 ... lk^ek` satisfies `l1 ш ... = e1!...ek! w + (lexicographically
/// smaller words)`.
pub fn grouplike_from_lyndon<C: Scalar>(
    alphabet: &Alphabet,
    truncation: usize,
    ctx: &C::Ctx,
    mut value: impl FnMut(&Word) -> C,
) -> Series<C> {
    let mut coeffs: HashMap<Word, C> = HashMap::new();
    let mut out = Series::one(alphabet, truncation, ctx);
    let mut lyndon_values: HashMap<Word, C> = HashMap::new();
    for len in 1..=truncation {
        let mut words: Vec<Word> = alphabet.words_up_to(truncation).into_iter().filter(|w| w.len() == len).collect();
        words.sort();
        for w in words {
            let c = if is_lyndon(&w) {
                let v = value(&w);
                lyndon_values.insert(w.clone(), v.clone());
                v
            } else {
                let factors = lyndon_factorization(&w);
                let mut prod = C::one(ctx);
                let mut sh: BTreeMap<Word, u64> = BTreeMap::from([(Word::empty(), 1)]);
                for f in &factors {
                    prod = prod.mul(&lyndon_values[f]);
                    sh = shuffle_multiset(&sh, f);
                }
                let lead = sh.remove(&w).expect("Lyndon factorisation word occurs in its shuffle");
                for (u, k) in &sh {
                    debug_assert!(u < &w);
                    if let Some(cu) = coeffs.get(u) {
                        prod = prod.sub(&cu.mul_i64(*k as i64));
                    }
                }
                prod.mul_rational(&Rational::new(1.into(), (lead as i64).into()))
            };
            if !c.is_zero() {
                coeffs.insert(w.clone(), c.clone());
                out.add_term(w, c);
            }
        }
    }
    out
}
