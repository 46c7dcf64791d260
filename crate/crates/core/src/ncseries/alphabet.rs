use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A word: sequence of letter indices into an [`Alphabet`]. The empty word
/// is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(SmallVec<[u8; 14]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_letters(letters: &[u8]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letter(l: u8) -> Self {
        Word::from_letters(&[l])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        Word(v)
    }

    pub fn push(&mut self, l: u8) {
        self.0.push(l);
    }

    pub fn pop(&mut self) -> Option<u8> {
        self.0.pop()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word::from_letters(&self.0[..n])
    }

    pub fn suffix_from(&self, n: usize) -> Word {
        Word::from_letters(&self.0[n..])
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn map_letters(&self, f: impl Fn(u8) -> u8) -> Word {
        Word(self.0.iter().map(|&l| f(l)).collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl FromIterator<u8> for Word {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    names: Vec<String>,
    weights: Vec<u32>,
    uniform: bool,
}

/// Named generators with positive integer weights.
#[derive(Clone)]
pub struct Alphabet(Arc<Inner>);

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Alphabet {}

pub const X0: u8 = 0;
pub const X1: u8 = 1;

impl Alphabet {
    pub fn new(names: Vec<String>, weights: Vec<u32>) -> Result<Self> {
        if names.len() != weights.len() {
            return Err(Error::Parse("alphabet names and weights differ in length".into()));
        }
        if names.is_empty() || names.len() > 250 {
            return Err(Error::Parse("alphabet must have between 1 and 250 letters".into()));
        }
        if weights.contains(&0) {
            return Err(Error::Parse("letter weights must be positive".into()));
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() || names.iter().any(|n| n.is_empty() || n.contains(char::is_whitespace)) {
            return Err(Error::Parse("alphabet letters must be distinct non-blank names".into()));
        }
        let uniform = weights.iter().all(|&w| w == 1);
        Ok(Alphabet(Arc::new(Inner { names, weights, uniform })))
    }

    pub fn uniform(names: &[&str]) -> Self {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let weights = vec![1; names.len()];
        Alphabet::new(names, weights).expect("valid alphabet")
    }

    /// `{X0, X1}`, the alphabet of `k<<X0,X1>>`.
    pub fn x01() -> Self {
        thread_local! {
            static X: Alphabet = Alphabet::uniform(&["X0", "X1"]);
        }
        X.with(Clone::clone)
    }

    /// `{Y1, ..., Yn}` with `weight(Yk) = k`.
    pub fn y(n: usize) -> Self {
        let names = (1..=n).map(|k| format!("Y{k}")).collect();
        let weights = (1..=n as u32).collect();
        Alphabet::new(names, weights).expect("valid alphabet")
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }

    pub fn is_uniform(&self) -> bool {
        self.0.uniform
    }

    pub fn name(&self, l: u8) -> &str {
        &self.0.names[l as usize]
    }

    pub fn weight(&self, l: u8) -> usize {
        self.0.weights[l as usize] as usize
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.0.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    pub fn degree(&self, w: &Word) -> usize {
        if self.0.uniform {
            w.len()
        } else {
            w.letters().iter().map(|&l| self.weight(l)).sum()
        }
    }

    /// Parses space-separated generator names; the empty string is the unit.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        s.split_whitespace()
            .map(|tok| self.index_of(tok).ok_or_else(|| Error::UnknownGenerator(tok.to_string())))
            .collect::<Result<SmallVec<_>>>()
            .map(Word)
    }

    pub fn format_word(&self, w: &Word) -> String {
        let parts: Vec<&str> = w.letters().iter().map(|&l| self.name(l)).collect();
        parts.join(" ")
    }

    /// All words of degree exactly `d`.
    pub fn words_of_degree(&self, d: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Word::empty();
        self.extend_words(d, &mut cur, &mut out);
        out
    }

    fn extend_words(&self, remaining: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for l in 0..self.len() as u8 {
            let w = self.weight(l);
            if w <= remaining {
                cur.push(l);
                self.extend_words(remaining - w, cur, out);
                cur.pop();
            }
        }
    }

    /// All words of degree at most `n`, by increasing degree.
    pub fn words_up_to(&self, n: usize) -> Vec<Word> {
        (0..=n).flat_map(|d| self.words_of_degree(d)).collect()
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.names)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let a = Alphabet::x01();
        let w = a.parse_word("X0 X1 X1").unwrap();
        assert_eq!(w.letters(), &[0, 1, 1]);
        assert_eq!(a.format_word(&w), "X0 X1 X1");
        assert!(a.parse_word("").unwrap().is_empty());
        assert!(matches!(a.parse_word("X2"), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn weighted_degree() {
        let y = Alphabet::y(4);
        let w = y.parse_word("Y2 Y3").unwrap();
        assert_eq!(y.degree(&w), 5);
        // compositions of 4
        assert_eq!(y.words_of_degree(4).len(), 8);
    }

    #[test]
    fn rejects_bad_alphabets() {
        assert!(Alphabet::new(vec!["a".into(), "a".into()], vec![1, 1]).is_err());
        assert!(Alphabet::new(vec!["a".into()], vec![0]).is_err());
    }
}
