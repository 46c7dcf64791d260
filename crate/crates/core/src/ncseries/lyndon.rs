//! Lyndon words, their standard bracketing, and the Lyndon factorisation.

use std::fmt;

use crate::ncseries::alphabet::{Alphabet, Word};
use crate::ncseries::series::Series;
use crate::scalar::Scalar;

/// Lie bracketing of a Lyndon word.
#[derive(Clone, PartialEq, Eq)]
pub enum Bracket {
    Letter(u8),
    Pair(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    /// Expands the bracket into a homogeneous polynomial.
    pub fn to_series<C: Scalar>(&self, alphabet: &Alphabet, truncation: usize, ctx: &C::Ctx) -> Series<C> {
        match self {
            Bracket::Letter(l) => Series::generator(alphabet, *l, truncation, ctx),
            Bracket::Pair(a, b) => {
                let a = a.to_series(alphabet, truncation, ctx);
                let b = b.to_series(alphabet, truncation, ctx);
                &(&a * &b) - &(&b * &a)
            }
        }
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        match self {
            Bracket::Letter(l) => alphabet.name(*l).to_string(),
            Bracket::Pair(a, b) => format!("[{},{}]", a.format(alphabet), b.format(alphabet)),
        }
    }
}

impl fmt::Debug for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracket::Letter(l) => write!(f, "{l}"),
            Bracket::Pair(a, b) => write!(f, "[{a:?},{b:?}]"),
        }
    }
}

/// A Lyndon word with its standard bracketing: an element of the Lyndon
/// basis of the free Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieWord {
    pub word: Word,
    pub bracket: Bracket,
}

pub fn is_lyndon(w: &Word) -> bool {
    let l = w.letters();
    if l.is_empty() {
        return false;
    }
    (1..l.len()).all(|i| l < &l[i..])
}

/// Lyndon words of length exactly `d` over `k` letters, in lexicographic
/// order (Duval's generation algorithm).
pub fn lyndon_words(k: usize, d: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if k == 0 || d == 0 {
        return out;
    }
    let mut w: Vec<i32> = vec![-1];
    while !w.is_empty() {
        *w.last_mut().unwrap() += 1;
        let m = w.len();
        if m == d {
            out.push(w.iter().map(|&x| x as u8).collect());
        }
        while w.len() < d {
            w.push(w[w.len() - m]);
        }
        while let Some(&last) = w.last() {
            if last == k as i32 - 1 {
                w.pop();
            } else {
                break;
            }
        }
    }
    out
}

/// Standard bracketing: `w = u v` with `v` the longest proper Lyndon suffix.
pub fn standard_bracket(w: &Word) -> Bracket {
    debug_assert!(is_lyndon(w));
    if w.len() == 1 {
        return Bracket::Letter(w.letters()[0]);
    }
    let split = (1..w.len()).find(|&i| is_lyndon(&w.suffix_from(i))).expect("Lyndon word has a Lyndon suffix");
    Bracket::Pair(Box::new(standard_bracket(&w.prefix(split))), Box::new(standard_bracket(&w.suffix_from(split))))
}

/// The Lyndon basis of the degree-`d` part of the free Lie algebra on the
/// (uniformly weighted) alphabet.
pub fn lyndon_lie_basis(alphabet: &Alphabet, d: usize) -> Vec<LieWord> {
    lyndon_words(alphabet.len(), d).into_iter().map(|w| LieWord { bracket: standard_bracket(&w), word: w }).collect()
}

/// Lyndon (Chen–Fox–Lyndon) factorisation into non-increasing Lyndon words.
pub fn lyndon_factorization(w: &Word) -> Vec<Word> {
    let s = w.letters();
    let n = s.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            out.push(Word::from_letters(&s[i..i + j - k]));
            i += j - k;
        }
    }
    out
}

fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Witt's formula for the number of Lyndon words of length `d` over `k` letters.
pub fn witt_dimension(k: usize, d: usize) -> usize {
    let total: i64 = (1..=d).filter(|e| d % e == 0).map(|e| mobius(e) * (k as i64).pow((d / e) as u32)).sum();
    (total / d as i64) as usize
}
