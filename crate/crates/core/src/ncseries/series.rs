use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ncseries::algebra::TruncatedAlgebra;
use crate::ncseries::alphabet::{Alphabet, Word};
use crate::scalar::{Rational, Scalar};

/// Degree-truncated non-commutative formal power series.
///
/// Only words of degree `<= truncation` are stored and no stored
/// coefficient is zero. Binary operations truncate to the smaller of the
/// operand truncations.
#[derive(Clone)]
pub struct Series<C: Scalar> {
    alphabet: Alphabet,
    truncation: usize,
    ctx: C::Ctx,
    terms: BTreeMap<Word, C>,
}

impl<C: Scalar> Series<C> {
    pub fn zero(alphabet: &Alphabet, truncation: usize, ctx: &C::Ctx) -> Self {
        Series { alphabet: alphabet.clone(), truncation, ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alphabet: &Alphabet, truncation: usize, ctx: &C::Ctx) -> Self {
        let mut s = Self::zero(alphabet, truncation, ctx);
        s.add_term(Word::empty(), C::one(ctx));
        s
    }

    pub fn generator(alphabet: &Alphabet, letter: u8, truncation: usize, ctx: &C::Ctx) -> Self {
        let mut s = Self::zero(alphabet, truncation, ctx);
        s.add_term(Word::letter(letter), C::one(ctx));
        s
    }

    pub fn from_terms(
        alphabet: &Alphabet,
        truncation: usize,
        ctx: &C::Ctx,
        terms: impl IntoIterator<Item = (Word, C)>,
    ) -> Self {
        let mut s = Self::zero(alphabet, truncation, ctx);
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    /// Adds `c * w`; words above the truncation are dropped.
    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() || self.alphabet.degree(&w) > self.truncation {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn set_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            self.terms.remove(&w);
        } else if self.alphabet.degree(&w) <= self.truncation {
            self.terms.insert(w, c);
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, C)> {
        self.terms.into_iter()
    }

    pub fn get(&self, w: &Word) -> Option<&C> {
        self.terms.get(w)
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(|| C::zero(&self.ctx))
    }

    pub fn degree(&self, w: &Word) -> usize {
        self.alphabet.degree(w)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Word::empty())
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| self.alphabet.degree(w)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| self.alphabet.degree(w)).max()
    }

    /// Same series seen at a lower truncation.
    pub fn truncated(&self, n: usize) -> Self {
        let n = n.min(self.truncation);
        let terms =
            self.terms.iter().filter(|(w, _)| self.alphabet.degree(w) <= n).map(|(w, c)| (w.clone(), c.clone()));
        Series { alphabet: self.alphabet.clone(), truncation: n, ctx: self.ctx.clone(), terms: terms.collect() }
    }

    /// Same terms, claimed valid to degree `n`. Used when the caller knows
    /// the omitted higher terms vanish (polynomials, homogeneous pieces).
    pub fn with_truncation(&self, n: usize) -> Self {
        let mut s = self.truncated(n);
        s.truncation = n;
        s
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        let terms =
            self.terms.iter().filter(|(w, _)| self.alphabet.degree(w) == d).map(|(w, c)| (w.clone(), c.clone()));
        Series {
            alphabet: self.alphabet.clone(),
            truncation: self.truncation,
            ctx: self.ctx.clone(),
            terms: terms.collect(),
        }
    }

    fn check_alphabet(&self, rhs: &Self) -> Result<()> {
        if self.alphabet != rhs.alphabet {
            return Err(Error::AlphabetMismatch { left: self.alphabet.to_string(), right: rhs.alphabet.to_string() });
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check_alphabet(rhs)?;
        let mut out = self.truncated(rhs.truncation);
        out.ctx = C::join(&self.ctx, &rhs.ctx);
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_alphabet(rhs)?;
        let mut out = self.truncated(rhs.truncation);
        out.ctx = C::join(&self.ctx, &rhs.ctx);
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.neg());
        }
        Ok(out)
    }

    /// Concatenation product, truncated to the smaller truncation.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_alphabet(rhs)?;
        let n = self.truncation.min(rhs.truncation);
        let ctx = C::join(&self.ctx, &rhs.ctx);
        let by_degree = rhs.bucket_by_degree(n);
        let mut acc: HashMap<Word, C> = HashMap::new();
        for (u, a) in &self.terms {
            let du = self.alphabet.degree(u);
            if du > n {
                continue;
            }
            for bucket in &by_degree[..=n - du] {
                for (v, b) in bucket {
                    let p = a.mul(b);
                    let w = u.concat(v);
                    match acc.entry(w) {
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(p);
                        }
                        std::collections::hash_map::Entry::Occupied(mut e) => {
                            let s = e.get().add(&p);
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Series { alphabet: self.alphabet.clone(), truncation: n, ctx, terms })
    }

    fn bucket_by_degree(&self, n: usize) -> Vec<Vec<(&Word, &C)>> {
        let mut buckets = vec![Vec::new(); n + 1];
        for (w, c) in &self.terms {
            let d = self.alphabet.degree(w);
            if d <= n {
                buckets[d].push((w, c));
            }
        }
        buckets
    }

    pub fn scale(&self, c: &C) -> Self {
        let ctx = C::join(&self.ctx, &c.ctx());
        let terms = self.terms.iter().map(|(w, a)| (w.clone(), a.mul(c))).filter(|(_, a)| !a.is_zero());
        Series { alphabet: self.alphabet.clone(), truncation: self.truncation, ctx, terms: terms.collect() }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        let terms = self.terms.iter().map(|(w, a)| (w.clone(), a.mul_rational(q))).filter(|(_, a)| !a.is_zero());
        Series {
            alphabet: self.alphabet.clone(),
            truncation: self.truncation,
            ctx: self.ctx.clone(),
            terms: terms.collect(),
        }
    }

    /// Multiplies the degree-`d` part by `c^d` (the substitution `x -> c x`
    /// on every generator).
    pub fn scale_by_degree(&self, c: &C) -> Self {
        let ctx = C::join(&self.ctx, &c.ctx());
        let maxd = self.max_degree().unwrap_or(0);
        let mut powers = vec![C::one(&ctx)];
        for k in 1..=maxd {
            let p = powers[k - 1].mul(c);
            powers.push(p);
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, a)| (w.clone(), a.mul(&powers[self.alphabet.degree(w)])))
            .filter(|(_, a)| !a.is_zero());
        Series { alphabet: self.alphabet.clone(), truncation: self.truncation, ctx, terms: terms.collect() }
    }

    /// Coefficient-wise ring change.
    pub fn map_coeffs<D: Scalar>(&self, ctx: &D::Ctx, f: impl Fn(&C) -> D) -> Series<D> {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), f(c))).filter(|(_, c)| !c.is_zero());
        Series {
            alphabet: self.alphabet.clone(),
            truncation: self.truncation,
            ctx: ctx.clone(),
            terms: terms.collect(),
        }
    }

    /// Words with letters renamed into another alphabet of the same shape.
    pub fn map_words(&self, alphabet: &Alphabet, f: impl Fn(&Word) -> Word) -> Series<C> {
        let mut out = Series::zero(alphabet, self.truncation, &self.ctx);
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    /// Largest coefficient magnitude of `self - rhs`, with the lowest-degree
    /// word realising a non-zero difference.
    pub fn distance(&self, rhs: &Self) -> Result<(f64, Option<Word>)> {
        let diff = self.checked_sub(rhs)?;
        Ok(diff.max_coeff())
    }

    /// Largest coefficient magnitude and the first (lowest degree, then
    /// lexicographic) word attaining a non-zero coefficient.
    pub fn max_coeff(&self) -> (f64, Option<Word>) {
        let mut best = 0.0f64;
        let mut first: Option<(usize, Word, f64)> = None;
        for (w, c) in &self.terms {
            let m = c.magnitude();
            best = best.max(m);
            let d = self.alphabet.degree(w);
            let better = match &first {
                None => true,
                Some((fd, _, fm)) => {
                    if C::is_exact() {
                        d < *fd
                    } else {
                        m > *fm
                    }
                }
            };
            if better {
                first = Some((d, w.clone(), m));
            }
        }
        (best, first.map(|(_, w, _)| w))
    }

    pub fn format_word(&self, w: &Word) -> String {
        self.alphabet.format_word(w)
    }
}

impl<C: Scalar + PartialEq> PartialEq for Series<C> {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.truncation == other.truncation && self.terms == other.terms
    }
}

impl<C: Scalar> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O({})", self.truncation + 1);
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(w, _)| (self.alphabet.degree(w), (*w).clone()));
        for (k, (w, c)) in terms.into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if w.is_empty() {
                write!(f, "{c:?}")?;
            } else {
                write!(f, "{c:?}*[{}]", self.alphabet.format_word(w))?;
            }
        }
        write!(f, " + O({})", self.truncation + 1)
    }
}

impl<C: Scalar> Add for &Series<C> {
    type Output = Series<C>;

    fn add(self, rhs: Self) -> Series<C> {
        self.checked_add(rhs).expect("series sum over different alphabets")
    }
}

impl<C: Scalar> Sub for &Series<C> {
    type Output = Series<C>;

    fn sub(self, rhs: Self) -> Series<C> {
        self.checked_sub(rhs).expect("series difference over different alphabets")
    }
}

impl<C: Scalar> Mul for &Series<C> {
    type Output = Series<C>;

    fn mul(self, rhs: Self) -> Series<C> {
        self.checked_mul(rhs).expect("series product over different alphabets")
    }
}

impl<C: Scalar> Neg for &Series<C> {
    type Output = Series<C>;

    fn neg(self) -> Series<C> {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), c.neg()));
        Series {
            alphabet: self.alphabet.clone(),
            truncation: self.truncation,
            ctx: self.ctx.clone(),
            terms: terms.collect(),
        }
    }
}

impl<C: Scalar> TruncatedAlgebra for Series<C> {
    type Coeff = C;

    fn one_like(&self) -> Self {
        Series::one(&self.alphabet, self.truncation, &self.ctx)
    }

    fn zero_like(&self) -> Self {
        Series::zero(&self.alphabet, self.truncation, &self.ctx)
    }

    fn truncation(&self) -> usize {
        self.truncation
    }

    fn truncated(&self, n: usize) -> Self {
        Series::truncated(self, n)
    }

    fn constant_term(&self) -> C {
        Series::constant_term(self)
    }

    fn min_degree(&self) -> Option<usize> {
        Series::min_degree(self)
    }

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn scaled(&self, c: &C) -> Self {
        self.scale(c)
    }

    fn scaled_rational(&self, q: &Rational) -> Self {
        self.scale_rational(q)
    }
}

/// Applies the continuous algebra homomorphism sending generator `k` of
/// `phi`'s alphabet to `images[k]`.
///
/// Every image must have zero constant term. The result is truncated at the
/// smaller of `phi`'s truncation and the images' truncation.
pub fn substitute<C: Scalar, A: TruncatedAlgebra<Coeff = C>>(phi: &Series<C>, images: &[A]) -> Result<A> {
    if images.len() != phi.alphabet().len() {
        return Err(Error::Precondition(format!(
            "substitution needs {} images, got {}",
            phi.alphabet().len(),
            images.len()
        )));
    }
    for (k, img) in images.iter().enumerate() {
        if !img.constant_term().is_zero() {
            return Err(Error::Precondition(format!(
                "image of {} has a non-zero constant term",
                phi.alphabet().name(k as u8)
            )));
        }
    }
    let n = images.iter().map(TruncatedAlgebra::truncation).min().unwrap_or(0).min(phi.truncation());
    let images: Vec<A> = images.iter().map(|a| a.truncated(n)).collect();
    let one = images[0].one_like();
    let mut result = one.zero_like();
    // value of every prefix of every word in phi, built letter by letter
    let mut prefix: HashMap<Word, A> = HashMap::new();
    prefix.insert(Word::empty(), one);
    let mut words: Vec<&Word> = phi.terms().map(|(w, _)| w).collect();
    words.sort_by_key(|w| w.len());
    for w in &words {
        for k in 1..=w.len() {
            let p = w.prefix(k);
            if prefix.contains_key(&p) {
                continue;
            }
            let prev = &prefix[&w.prefix(k - 1)];
            let v = prev.times(&images[w.letters()[k - 1] as usize]);
            prefix.insert(p, v);
        }
    }
    for (w, c) in phi.terms() {
        if phi.degree(w) > n {
            continue;
        }
        result = result.plus(&prefix[w].scaled(c));
    }
    Ok(result.truncated(n))
}
