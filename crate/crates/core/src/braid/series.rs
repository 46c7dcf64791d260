use std::collections::HashMap;
use std::fmt;

use crate::braid::normal::{normal_form, normal_product};
use crate::braid::BraidAlgebra;
use crate::error::{Error, Result};
use crate::ncseries::{substitute, JsonCoeff, Series, TruncatedAlgebra, Word};
use crate::scalar::{Rational, Scalar};

/// Element of truncated `U(a_n)`, stored on level-sorted words.
#[derive(Clone, PartialEq)]
pub struct BraidSeries<C: Scalar> {
    algebra: BraidAlgebra,
    inner: Series<C>,
}

impl<C: Scalar> BraidSeries<C> {
    pub fn zero(algebra: &BraidAlgebra, truncation: usize, ctx: &C::Ctx) -> Self {
        BraidSeries { algebra: algebra.clone(), inner: Series::zero(algebra.alphabet(), truncation, ctx) }
    }

    pub fn one(algebra: &BraidAlgebra, truncation: usize, ctx: &C::Ctx) -> Self {
        BraidSeries { algebra: algebra.clone(), inner: Series::one(algebra.alphabet(), truncation, ctx) }
    }

    /// `t_ij` as a series.
    pub fn t(algebra: &BraidAlgebra, i: usize, j: usize, truncation: usize, ctx: &C::Ctx) -> Result<Self> {
        let l = algebra.gen(i, j)?;
        Ok(BraidSeries { algebra: algebra.clone(), inner: Series::generator(algebra.alphabet(), l, truncation, ctx) })
    }

    /// Sum of `t_ij` over the given pairs.
    pub fn sum_of(algebra: &BraidAlgebra, pairs: &[(usize, usize)], truncation: usize, ctx: &C::Ctx) -> Result<Self> {
        let mut s = Self::zero(algebra, truncation, ctx);
        for &(i, j) in pairs {
            s = s.plus(&Self::t(algebra, i, j, truncation, ctx)?);
        }
        Ok(s)
    }

    /// `t12 + t13 + t23`, central in `U(a_3)`.
    pub fn central_a3(truncation: usize, ctx: &C::Ctx) -> Self {
        Self::sum_of(&BraidAlgebra::a3(), &[(1, 2), (1, 3), (2, 3)], truncation, ctx).expect("a3 generators")
    }

    /// Normal form of an arbitrary series in the generators.
    pub fn from_raw(algebra: &BraidAlgebra, raw: &Series<C>) -> Result<Self> {
        if raw.alphabet() != algebra.alphabet() {
            return Err(Error::AlphabetMismatch {
                left: raw.alphabet().to_string(),
                right: algebra.alphabet().to_string(),
            });
        }
        let mut out = Series::zero(algebra.alphabet(), raw.truncation(), raw.ctx());
        for (w, c) in raw.terms() {
            for (v, k) in normal_form(algebra, w).iter() {
                out.add_term(v.clone(), c.mul_i64(*k));
            }
        }
        Ok(BraidSeries { algebra: algebra.clone(), inner: out })
    }

    /// Wraps a series already known to be in normal form.
    pub fn from_normal(algebra: &BraidAlgebra, s: Series<C>) -> Result<Self> {
        if s.alphabet() != algebra.alphabet() {
            return Err(Error::AlphabetMismatch {
                left: s.alphabet().to_string(),
                right: algebra.alphabet().to_string(),
            });
        }
        if let Some((w, _)) = s.terms().find(|(w, _)| !algebra.is_normal(w)) {
            return Err(Error::Parse(format!("word `{}` is not level-sorted", s.format_word(w))));
        }
        Ok(BraidSeries { algebra: algebra.clone(), inner: s })
    }

    pub fn algebra(&self) -> &BraidAlgebra {
        &self.algebra
    }

    pub fn as_series(&self) -> &Series<C> {
        &self.inner
    }

    pub fn into_series(self) -> Series<C> {
        self.inner
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.inner.coeff(w)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.algebra != rhs.algebra {
            return Err(Error::AlphabetMismatch {
                left: self.algebra.alphabet().to_string(),
                right: rhs.algebra.alphabet().to_string(),
            });
        }
        let n = self.inner.truncation().min(rhs.inner.truncation());
        let ctx = C::join(self.inner.ctx(), rhs.inner.ctx());
        let mut by_degree: Vec<Vec<(&Word, &C)>> = vec![Vec::new(); n + 1];
        for (w, c) in rhs.inner.terms() {
            if w.len() <= n {
                by_degree[w.len()].push((w, c));
            }
        }
        let mut acc: HashMap<Word, C> = HashMap::new();
        for (u, a) in self.inner.terms() {
            if u.len() > n {
                continue;
            }
            for bucket in &by_degree[..=n - u.len()] {
                for (v, b) in bucket {
                    let ab = a.mul(b);
                    for (w, k) in normal_product(&self.algebra, u, v).iter() {
                        let term = ab.mul_i64(*k);
                        match acc.get_mut(w) {
                            Some(e) => *e = e.add(&term),
                            None => {
                                acc.insert(w.clone(), term);
                            }
                        }
                    }
                }
            }
        }
        let inner = Series::from_terms(self.algebra.alphabet(), n, &ctx, acc);
        Ok(BraidSeries { algebra: self.algebra.clone(), inner })
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.times(rhs).minus(&rhs.times(self))
    }

    pub fn max_coeff(&self) -> (f64, Option<Word>) {
        self.inner.max_coeff()
    }
}

impl<C: JsonCoeff> BraidSeries<C> {
    pub fn to_json(&self) -> String {
        self.inner.to_json()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let series = Series::<C>::from_json(s)?;
        let n = series.alphabet().len();
        let algebra = match n {
            3 => BraidAlgebra::a3(),
            6 => BraidAlgebra::a4(),
            _ => return Err(Error::Parse(format!("no braid algebra has {n} generators"))),
        };
        // re-home the words on the shared alphabet instance
        let series = series.map_words(algebra.alphabet(), Word::clone);
        if series.alphabet().names() != algebra.alphabet().names() {
            return Err(Error::Parse("braid alphabet must list t_ij in lexicographic order".into()));
        }
        Self::from_normal(&algebra, series)
    }
}

impl<C: Scalar> fmt::Debug for BraidSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.inner)
    }
}

impl<C: Scalar> TruncatedAlgebra for BraidSeries<C> {
    type Coeff = C;

    fn one_like(&self) -> Self {
        BraidSeries { algebra: self.algebra.clone(), inner: self.inner.one_like() }
    }

    fn zero_like(&self) -> Self {
        BraidSeries { algebra: self.algebra.clone(), inner: self.inner.zero_like() }
    }

    fn truncation(&self) -> usize {
        self.inner.truncation()
    }

    fn truncated(&self, n: usize) -> Self {
        BraidSeries { algebra: self.algebra.clone(), inner: self.inner.truncated(n) }
    }

    fn constant_term(&self) -> C {
        self.inner.constant_term()
    }

    fn min_degree(&self) -> Option<usize> {
        self.inner.min_degree()
    }

    fn plus(&self, rhs: &Self) -> Self {
        BraidSeries { algebra: self.algebra.clone(), inner: &self.inner + &rhs.inner }
    }

    fn minus(&self, rhs: &Self) -> Self {
        BraidSeries { algebra: self.algebra.clone(), inner: &self.inner - &rhs.inner }
    }

    fn times(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("product of series in different braid algebras")
    }

    fn scaled(&self, c: &C) -> Self {
        BraidSeries { algebra: self.algebra.clone(), inner: self.inner.scale(c) }
    }

    fn scaled_rational(&self, q: &Rational) -> Self {
        BraidSeries { algebra: self.algebra.clone(), inner: self.inner.scale_rational(q) }
    }
}

/// `phi(arg0, arg1)` in `U(a_n)`.
pub fn inject<C: Scalar>(phi: &Series<C>, arg0: &BraidSeries<C>, arg1: &BraidSeries<C>) -> Result<BraidSeries<C>> {
    if arg0.algebra != arg1.algebra {
        return Err(Error::AlphabetMismatch {
            left: arg0.algebra.alphabet().to_string(),
            right: arg1.algebra.alphabet().to_string(),
        });
    }
    substitute(phi, &[arg0.clone(), arg1.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncseries::{exp, Alphabet, X0, X1};
    use crate::scalar::rat;

    fn t(alg: &BraidAlgebra, i: usize, j: usize, n: usize) -> BraidSeries<Rational> {
        BraidSeries::t(alg, i, j, n, &()).unwrap()
    }

    fn x(n: usize, l: u8) -> Series<Rational> {
        Series::generator(&Alphabet::x01(), l, n, &())
    }

    #[test]
    fn bracket_of_disjoint_generators_injects_to_one() {
        let a4 = BraidAlgebra::a4();
        let one = Series::one(&Alphabet::x01(), 4, &());
        let br = &(&x(4, X0) * &x(4, X1)) - &(&x(4, X1) * &x(4, X0));
        let out = inject(&(&one + &br), &t(&a4, 1, 2, 4), &t(&a4, 3, 4, 4)).unwrap();
        assert_eq!(out, BraidSeries::one(&a4, 4, &()));
    }

    #[test]
    fn simple_injection() {
        let a3 = BraidAlgebra::a3();
        let one = Series::one(&Alphabet::x01(), 3, &());
        let phi = &one + &(&x(3, X0) * &x(3, X1));
        let out = inject(&phi, &t(&a3, 1, 2, 3), &t(&a3, 2, 3, 3)).unwrap();
        let want = BraidSeries::one(&a3, 3, &()).plus(&t(&a3, 1, 2, 3).times(&t(&a3, 2, 3, 3)));
        assert_eq!(out, want);
    }

    #[test]
    fn central_element_commutes() {
        let n = 4;
        let a3 = BraidAlgebra::a3();
        let c = BraidSeries::<Rational>::central_a3(n, &());
        let e = inject(&exp(&x(n, X0)).unwrap(), &c, &BraidSeries::zero(&a3, n, &())).unwrap();
        for w in (1..=n).flat_map(|d| a3.basis(d)) {
            let s = BraidSeries::from_normal(&a3, Series::from_terms(a3.alphabet(), n, &(), [(w, rat(1, 1))])).unwrap();
            assert!(e.commutator(&s).is_zero());
        }
    }

    #[test]
    fn json_round_trip_keeps_normal_words() {
        let a4 = BraidAlgebra::a4();
        let s = t(&a4, 2, 4, 3).times(&t(&a4, 1, 2, 3));
        let back = BraidSeries::<Rational>::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        let raw = r#"{"alphabet":["t12","t13","t23"],"truncation":2,"ring":"rational","terms":[{"word":"t23 t12","coeff":"1"}]}"#;
        assert!(BraidSeries::<Rational>::from_json(raw).is_err());
    }
}
