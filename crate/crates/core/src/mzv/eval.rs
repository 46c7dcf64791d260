//! Numerical MZVs by Hölder convolution.
//!
//! `(-1)^m zeta(k)` is the iterated integral over `[0, 1]` of the word
//! `X0^{k_m-1} X1 ... X0^{k_1-1} X1` with `X0 = dt/t`, `X1 = dt/(t-1)`.
//! Splitting the path at 1/2 turns it into a sum of products of integrals
//! over `[0, 1/2]`, each a power series evaluated at 1/2.

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::mzv::index::MzvIndex;
use crate::ncseries::{Word, X0, X1};
use crate::scalar::bigfloat::{bits_for_digits, BigFloat};
use crate::scalar::BigComplex;

/// Integrals over `[0, 1/2]`, memoised by word.
///
/// Every power series that occurs has coefficients of modulus at most 1,
/// so truncating after `M` terms leaves an error below `2^-M`.
pub struct MzvEvaluator {
    digits: u32,
    bits: u32,
    terms: usize,
    coeffs: HashMap<Word, Rc<Vec<BigFloat>>>,
    values: HashMap<Word, BigFloat>,
}

impl MzvEvaluator {
    pub fn new(digits: u32) -> Self {
        let bits = bits_for_digits(digits) + 32;
        MzvEvaluator { digits, bits, terms: bits as usize + 16, coeffs: HashMap::new(), values: HashMap::new() }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Taylor coefficients at 0 of the integral of `w` from 0 to `z`;
    /// `w` must be empty or end in `X1`.
    fn series(&mut self, w: &Word) -> Rc<Vec<BigFloat>> {
        if let Some(c) = self.coeffs.get(w) {
            return c.clone();
        }
        let m = self.terms;
        let out = match w.first() {
            None => {
                let mut v = vec![BigFloat::zero(self.bits); m + 1];
                v[0] = BigFloat::from_i64(1, self.bits);
                v
            }
            Some(l) => {
                let inner = self.series(&w.suffix_from(1));
                let mut g = vec![BigFloat::zero(self.bits); m + 1];
                if l == X0 {
                    for n in 1..=m {
                        g[n] = inner[n].div_bigint(&BigInt::from(n));
                    }
                } else {
                    // 1/(t-1) = -sum t^j
                    let mut partial = BigFloat::zero(self.bits);
                    for n in 1..=m {
                        partial = partial.add(&inner[n - 1]);
                        g[n] = partial.div_bigint(&BigInt::from(n)).neg();
                    }
                }
                g
            }
        };
        let out = Rc::new(out);
        self.coeffs.insert(w.clone(), out.clone());
        out
    }

    /// Integral of `w` from 0 to 1/2.
    fn half(&mut self, w: &Word) -> BigFloat {
        if let Some(v) = self.values.get(w) {
            return v.clone();
        }
        let c = self.series(w);
        let mut acc = BigFloat::zero(self.bits);
        for (n, a) in c.iter().enumerate() {
            if !a.is_zero() {
                acc = acc.add(&a.mul_pow2(-(n as i64)));
            }
        }
        self.values.insert(w.clone(), acc.clone());
        acc
    }

    /// Integral of a convergent word (first letter `X0`, last `X1`) over
    /// `[0, 1]`.
    pub fn integral(&mut self, w: &Word) -> Result<BigFloat> {
        if w.first() != Some(X0) || w.last() != Some(X1) {
            return Err(Error::Precondition(format!("word {w:?} diverges at an endpoint")));
        }
        // path [1/2, 1] is the reversal of [0, 1/2] under t -> 1 - t,
        // which swaps X0 and X1
        let mut acc = BigFloat::zero(self.bits);
        for i in 0..=w.len() {
            let prefix = w.prefix(i);
            let right = self.half(&w.suffix_from(i));
            let left = self.half(&prefix.reversed().map_letters(|l| 1 - l));
            let term = left.mul(&right);
            acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        Ok(acc)
    }

    pub fn zeta_real(&mut self, idx: &MzvIndex) -> Result<BigFloat> {
        if !idx.is_admissible() {
            return Err(Error::Precondition(format!(
                "zeta({idx}) diverges (last entry must exceed 1); regularised values come from shuffle_regularize"
            )));
        }
        let v = self.integral(&idx.to_word())?;
        Ok(if idx.depth() % 2 == 0 { v } else { v.neg() })
    }

    pub fn zeta(&mut self, idx: &MzvIndex) -> Result<BigComplex> {
        Ok(BigComplex::from_real(self.zeta_real(idx)?, self.digits))
    }
}

/// `zeta(idx)` to `digits` decimal digits.
pub fn zeta(idx: &MzvIndex, digits: u32) -> Result<BigComplex> {
    MzvEvaluator::new(digits).zeta(idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::bigfloat::{ln2, pi};

    #[test]
    fn half_integrals_are_polylogarithms() {
        let mut ev = MzvEvaluator::new(30);
        let l2 = ln2(ev.bits);
        // integral of dt/(t-1) over [0,1/2] is -ln 2
        let v = ev.half(&Word::from_letters(&[X1]));
        assert!(v.add(&l2).to_f64().abs() < 1e-35);
        // Li_2(1/2) = pi^2/12 - ln^2(2)/2
        let li2 = ev.half(&Word::from_letters(&[X0, X1])).neg();
        let p = pi(ev.bits);
        let expect = p.mul(&p).div_bigint(&BigInt::from(12)).sub(&l2.mul(&l2).mul_pow2(-1));
        assert!(li2.sub(&expect).to_f64().abs() < 1e-35);
    }

    #[test]
    fn divergent_index_is_rejected() {
        assert!(zeta(&"2,1".parse().unwrap(), 20).is_err());
    }
}
