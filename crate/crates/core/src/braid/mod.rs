//! Truncated enveloping algebras `U(a_3)` and `U(a_4)` of the pure braid Lie
//! algebras, in the basis of level-sorted words.
//!
//! The generator `t_ij` (`i < j`) has level `j`. Every element has a unique
//! expansion in words whose letter levels are non-decreasing; a product is
//! brought to that form by moving letters leftwards with
//! `y x = x y - [x, y]`, where for `level(y) > level(x)` the bracket
//! `[x, y]` is rewritten into level-`level(y)` letters.

mod normal;
mod series;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ncseries::{Alphabet, Word};

pub use normal::{normal_form, normal_product, LinComb};
pub use series::{inject, BraidSeries};

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    n: usize,
    alphabet: Alphabet,
    pairs: Vec<(usize, usize)>,
}

/// `U(a_n)` for `n` in `{3, 4}`.
#[derive(Clone)]
pub struct BraidAlgebra(Arc<Inner>);

impl PartialEq for BraidAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.0.n == other.0.n
    }
}

impl Eq for BraidAlgebra {}

impl fmt::Debug for BraidAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U(a{})", self.0.n)
    }
}

impl BraidAlgebra {
    pub fn new(n: usize) -> Result<Self> {
        thread_local! {
            static A3: BraidAlgebra = BraidAlgebra::build(3);
            static A4: BraidAlgebra = BraidAlgebra::build(4);
        }
        match n {
            3 => Ok(A3.with(Clone::clone)),
            4 => Ok(A4.with(Clone::clone)),
            _ => Err(Error::Precondition(format!("only 3 and 4 strands are supported, got {n}"))),
        }
    }

    pub fn a3() -> Self {
        Self::new(3).expect("a3")
    }

    pub fn a4() -> Self {
        Self::new(4).expect("a4")
    }

    fn build(n: usize) -> Self {
        let mut pairs = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                pairs.push((i, j));
            }
        }
        let names: Vec<String> = pairs.iter().map(|(i, j)| format!("t{i}{j}")).collect();
        let alphabet = Alphabet::new(names, vec![1; pairs.len()]).expect("braid alphabet");
        BraidAlgebra(Arc::new(Inner { n, alphabet, pairs }))
    }

    pub fn strands(&self) -> usize {
        self.0.n
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.0.alphabet
    }

    /// Letter of `t_ij`; `t_ji` is the same generator.
    pub fn gen(&self, i: usize, j: usize) -> Result<u8> {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.0
            .pairs
            .iter()
            .position(|&p| p == (a, b))
            .map(|k| k as u8)
            .ok_or_else(|| Error::UnknownGenerator(format!("t{i}{j}")))
    }

    pub fn pair(&self, letter: u8) -> (usize, usize) {
        self.0.pairs[letter as usize]
    }

    pub fn level(&self, letter: u8) -> usize {
        self.0.pairs[letter as usize].1
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        w.letters().windows(2).all(|p| self.level(p[0]) <= self.level(p[1]))
    }

    /// Parses space-separated generators, accepting `tji` for `tij`.
    pub fn parse_raw_word(&self, s: &str) -> Result<Word> {
        s.split_whitespace()
            .map(|tok| {
                let digits: Vec<usize> = tok
                    .strip_prefix('t')
                    .filter(|d| d.len() == 2)
                    .map(|d| d.chars().filter_map(|c| c.to_digit(10)).map(|x| x as usize).collect())
                    .unwrap_or_default();
                match digits.as_slice() {
                    &[i, j] if i != j && i >= 1 && j >= 1 => self.gen(i, j),
                    _ => Err(Error::UnknownGenerator(tok.to_string())),
                }
            })
            .collect()
    }

    /// Number of level-sorted words of degree `d`: the coefficient of `t^d`
    /// in `prod_{m=1}^{n-1} 1/(1 - m t)`.
    pub fn dimension(&self, d: usize) -> u64 {
        let mut coeffs = vec![0u64; d + 1];
        coeffs[0] = 1;
        for m in 1..self.0.n as u64 {
            for k in 1..=d {
                coeffs[k] += m * coeffs[k - 1];
            }
        }
        coeffs[d]
    }

    /// Normal-form words of degree exactly `d`.
    pub fn basis(&self, d: usize) -> Vec<Word> {
        self.0.alphabet.words_of_degree(d).into_iter().filter(|w| self.is_normal(w)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let a4 = BraidAlgebra::a4();
        let a3 = BraidAlgebra::a3();
        assert_eq!((0..=3).map(|d| a4.dimension(d)).collect::<Vec<_>>(), vec![1, 6, 25, 90]);
        for d in 0..=6 {
            assert_eq!(a3.dimension(d), (1u64 << (d + 1)) - 1);
            // (3^{d+2} - 2^{d+3} + 1) / 2
            assert_eq!(a4.dimension(d), (3u64.pow(d as u32 + 2) - (1u64 << (d + 3)) + 1) / 2);
            assert_eq!(a4.basis(d).len() as u64, a4.dimension(d));
        }
    }

    #[test]
    fn generator_names() {
        let a4 = BraidAlgebra::a4();
        assert_eq!(a4.alphabet().names(), &["t12", "t13", "t14", "t23", "t24", "t34"]);
        let w = a4.parse_raw_word("t42 t12").unwrap();
        assert_eq!(w.letters(), &[a4.gen(2, 4).unwrap(), a4.gen(1, 2).unwrap()]);
        assert!(a4.parse_raw_word("t11").is_err());
        assert!(a4.parse_raw_word("t15").is_err());
        assert!(BraidAlgebra::a3().parse_raw_word("t34").is_err());
        assert!(BraidAlgebra::new(5).is_err());
    }
}
