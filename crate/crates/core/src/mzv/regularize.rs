//! Coefficients of the Drinfeld associator on arbitrary words.
//!
//! The coefficient map of a group-like series is a shuffle character, and
//! the Drinfeld associator has `c_X0 = c_X1 = 0`. Together these reduce
//! every word to a rational combination of convergent words (first letter
//! `X0`, last letter `X1`), whose coefficients are signed MZVs:
//!
//! * `v X0^k = -(1/k) sum v' X0^(k-1)`, the sum over insertions of one `X0`
//!   strictly inside `v`, from `c((v X0^(k-1)) ш X0) = 0`;
//! * `X1^k v = -(1/k) sum X1^(k-1) v'`, symmetrically.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_traits::{One, Signed, Zero};

use crate::mzv::index::MzvIndex;
use crate::ncseries::{Word, X0, X1};
use crate::scalar::{Rational, Scalar, SymbolicPoly};

/// Rational combination of convergent words (or the empty word).
pub type ConvergentCombination = BTreeMap<Word, Rational>;

thread_local! {
    static MEMO: RefCell<HashMap<Word, Rc<ConvergentCombination>>> = RefCell::new(HashMap::new());
}

fn insert_at(v: &Word, pos: usize, l: u8) -> Word {
    let mut out = Word::empty();
    for (i, &x) in v.letters().iter().enumerate() {
        if i == pos {
            out.push(l);
        }
        out.push(x);
    }
    if pos == v.len() {
        out.push(l);
    }
    out
}

fn accumulate(out: &mut ConvergentCombination, part: &ConvergentCombination, scale: &Rational) {
    for (w, c) in part {
        let e = out.entry(w.clone()).or_insert_with(<Rational as Zero>::zero);
        *e += c * scale;
        if Zero::is_zero(e) {
            out.remove(w);
        }
    }
}

fn reduce(w: &Word) -> Rc<ConvergentCombination> {
    if let Some(r) = MEMO.with(|m| m.borrow().get(w).cloned()) {
        return r;
    }
    let letters = w.letters();
    let trailing = letters.iter().rev().take_while(|&&l| l == X0).count();
    let leading = letters.iter().take_while(|&&l| l == X1).count();
    let mut out = ConvergentCombination::new();
    if w.is_empty() {
        out.insert(Word::empty(), <Rational as One>::one());
    } else if trailing > 0 {
        let v = w.prefix(w.len() - trailing);
        if !v.is_empty() {
            let scale = -Rational::from_integer(trailing.into()).recip();
            let tail = Word::from_letters(&vec![X0; trailing - 1]);
            for pos in 0..v.len() {
                accumulate(&mut out, &reduce(&insert_at(&v, pos, X0).concat(&tail)), &scale);
            }
        }
    } else if leading > 0 {
        let v = w.suffix_from(leading);
        if !v.is_empty() {
            let scale = -Rational::from_integer(leading.into()).recip();
            let head = Word::from_letters(&vec![X1; leading - 1]);
            for pos in 1..=v.len() {
                accumulate(&mut out, &reduce(&head.concat(&insert_at(&v, pos, X1))), &scale);
            }
        }
    } else {
        out.insert(w.clone(), <Rational as One>::one());
    }
    let out = Rc::new(out);
    MEMO.with(|m| m.borrow_mut().insert(w.clone(), out.clone()));
    out
}

/// `c_w(Phi_KZ)` as a combination of convergent words.
pub fn convergent_combination(w: &Word) -> ConvergentCombination {
    (*reduce(w)).clone()
}

/// `c_w(Phi_KZ)` as a polynomial in the symbols `z_k1_..._km`, where the
/// convergent word of `zeta(k)` contributes `(-1)^m zeta(k)`.
pub fn shuffle_regularize(w: &Word) -> SymbolicPoly {
    let mut out = SymbolicPoly::default();
    for (u, c) in reduce(w).iter() {
        let term = match MzvIndex::from_word(u) {
            Some(idx) => {
                let sign = if idx.depth() % 2 == 0 { c.clone() } else { -c.clone() };
                Scalar::mul_rational(&SymbolicPoly::var(&idx.symbol()), &sign)
            }
            None => SymbolicPoly::constant(c.clone()),
        };
        out = Scalar::add(&out, &term);
    }
    out
}

/// Sum of absolute values of the coefficients in the reduction of `w`;
/// bounds the amplification of errors in the MZV values.
pub fn amplification(w: &Word) -> Rational {
    reduce(w).values().map(|c| c.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[u8]) -> Word {
        Word::from_letters(l)
    }

    #[test]
    fn convergent_words_map_to_signed_zetas() {
        assert_eq!(shuffle_regularize(&w(&[X0, X1])).to_string(), "-z_2");
        assert_eq!(shuffle_regularize(&w(&[X0, X1, X1])).to_string(), "z_1_2");
        assert!(shuffle_regularize(&w(&[X0])).is_empty());
        assert!(shuffle_regularize(&w(&[X1, X1])).is_empty());
    }

    #[test]
    fn weight_three_shuffle_identity() {
        // c_X1 c_X0X1 = c_X1X0X1 + 2 c_X0X1X1 with c_X1 = 0
        let p = shuffle_regularize(&w(&[X1, X0, X1]));
        assert_eq!(p, SymbolicPoly::parse("-2*z_1_2").unwrap());
        // c_X0 c_X0X1 = 2 c_X0X0X1 + c_X0X1X0
        let p = shuffle_regularize(&w(&[X0, X1, X0]));
        assert_eq!(p, SymbolicPoly::parse("2*z_3").unwrap());
        // c_X1X0 = -c_X0X1
        assert_eq!(shuffle_regularize(&w(&[X1, X0])).to_string(), "z_2");
    }
}
