//! The coproduct `Delta_*(Y_n) = sum_{i=0}^{n} Y_i ⊗ Y_{n-i}` (`Y_0 = 1`) on
//! words in `Y_1, Y_2, ...`, and its dual, the stuffle product.
//!
//! Letter `l` of a Y-word stands for `Y_{l+1}`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::ncseries::Word;

/// `Delta_*(w)` as multiplicities of `u ⊗ v`.
pub type Coproduct = BTreeMap<(Word, Word), u64>;

thread_local! {
    static MEMO: RefCell<HashMap<Word, Rc<Coproduct>>> = RefCell::new(HashMap::new());
}

fn letter_coproduct(l: u8) -> Coproduct {
    let n = l as usize + 1;
    let mut out = Coproduct::new();
    for i in 0..=n {
        let side = |k: usize| if k == 0 { Word::empty() } else { Word::letter(k as u8 - 1) };
        *out.entry((side(i), side(n - i))).or_default() += 1;
    }
    out
}

/// `Delta_*(w)`, built as the product of the letter coproducts.
pub fn delta_star(w: &Word) -> Rc<Coproduct> {
    if let Some(c) = MEMO.with(|m| m.borrow().get(w).cloned()) {
        return c;
    }
    let out = match w.first() {
        None => Coproduct::from([((Word::empty(), Word::empty()), 1)]),
        Some(l) => {
            let head = letter_coproduct(l);
            let tail = delta_star(&w.suffix_from(1));
            let mut out = Coproduct::new();
            for ((a, b), m) in &head {
                for ((c, d), k) in tail.iter() {
                    *out.entry((a.concat(c), b.concat(d))).or_default() += m * k;
                }
            }
            out
        }
    };
    let out = Rc::new(out);
    MEMO.with(|m| m.borrow_mut().insert(w.clone(), out.clone()));
    out
}

/// `<Delta_*(w), u ⊗ v>`.
pub fn delta_star_coeff(w: &Word, u: &Word, v: &Word) -> u64 {
    delta_star(w).get(&(u.clone(), v.clone())).copied().unwrap_or(0)
}

/// Stuffle product `u * v`, as multiplicities of words.
pub fn stuffle(u: &Word, v: &Word) -> BTreeMap<Word, u64> {
    let mut out = BTreeMap::new();
    if u.is_empty() || v.is_empty() {
        out.insert(u.concat(v), 1);
        return out;
    }
    let (a, u2) = (u.first().unwrap(), u.suffix_from(1));
    let (b, v2) = (v.first().unwrap(), v.suffix_from(1));
    let mut add = |head: u8, rest: BTreeMap<Word, u64>| {
        for (w, m) in rest {
            *out.entry(Word::letter(head).concat(&w)).or_default() += m;
        }
    };
    add(a, stuffle(&u2, v));
    add(b, stuffle(u, &v2));
    // Y_a Y_b merge into Y_{a+b}
    add(a + b + 1, stuffle(&u2, &v2));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncseries::Alphabet;

    fn y(ks: &[u8]) -> Word {
        Word::from_letters(&ks.iter().map(|k| k - 1).collect::<Vec<_>>())
    }

    #[test]
    fn low_weight_coproducts() {
        let d = delta_star(&y(&[2]));
        assert_eq!(d.len(), 3);
        assert_eq!(d[&(y(&[1]), y(&[1]))], 1);
        assert_eq!(d[&(y(&[2]), Word::empty())], 1);
        let d = delta_star(&y(&[1]));
        assert_eq!(d.len(), 2);
        // (Y1⊗1 + 1⊗Y1)^2 has Y1⊗Y1 twice
        assert_eq!(delta_star_coeff(&y(&[1, 1]), &y(&[1]), &y(&[1])), 2);
    }

    #[test]
    fn coproduct_is_dual_to_stuffle() {
        let a = Alphabet::y(4);
        let words = a.words_up_to(4);
        for u in &words {
            for v in &words {
                if a.degree(u) + a.degree(v) > 4 {
                    continue;
                }
                for (w, m) in stuffle(u, v) {
                    assert_eq!(delta_star_coeff(&w, u, v), m, "{u:?} {v:?} {w:?}");
                }
            }
        }
    }
}
