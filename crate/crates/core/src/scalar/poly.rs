use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::scalar::{format_rational, parse_rational, rational_magnitude, Rational, RingKind, Scalar};

/// Monomial: variables with positive exponents, sorted by name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(SmallVec<[(Arc<str>, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(name: &str) -> Self {
        let mut v = SmallVec::new();
        v.push((Arc::from(name), 1));
        Monomial(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.0.iter().find(|(v, _)| &**v == name).map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(v, e)| (&**v, *e))
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut out: SmallVec<[(Arc<str>, u32); 4]> = SmallVec::with_capacity(self.0.len() + rhs.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < rhs.0.len() {
            match self.0[i].0.cmp(&rhs.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(rhs.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + rhs.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.0[i..].iter().cloned());
        out.extend(rhs.0[j..].iter().cloned());
        Monomial(out)
    }

    /// Removes `name` entirely, returning its exponent and the remainder.
    fn split_off(&self, name: &str) -> (u32, Monomial) {
        let e = self.exponent(name);
        let rest = self.0.iter().filter(|(v, _)| &**v != name).cloned().collect();
        (e, Monomial(rest))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial over the rationals with named unknowns.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymbolicPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl SymbolicPoly {
    pub fn constant(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&q) {
            terms.insert(Monomial::one(), q);
        }
        SymbolicPoly { terms }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(name), <Rational as One>::one());
        SymbolicPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = SymbolicPoly::default();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if Zero::is_zero(c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if Zero::is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }

    /// Constant value if the polynomial has no unknowns.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(<Rational as Zero>::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vs: Vec<String> = self.terms.keys().flat_map(|m| m.factors().map(|(v, _)| v.to_string())).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Replaces `name^2` by `square` until `name` appears at most linearly,
    /// i.e. reduces modulo `name^2 - square`.
    pub fn reduce_square(&self, name: &str, square: &SymbolicPoly) -> SymbolicPoly {
        let mut out = SymbolicPoly::default();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(name);
            let mut t = SymbolicPoly::from_terms([(rest, c.clone())]);
            if e % 2 == 1 {
                t = t.mul(&SymbolicPoly::var(name));
            }
            for _ in 0..e / 2 {
                t = t.mul(square);
            }
            out = Scalar::add(&out, &t);
        }
        out
    }

    /// Evaluates the polynomial in any ring, given values for its unknowns.
    pub fn eval<C: Scalar>(&self, ctx: &C::Ctx, value: &dyn Fn(&str) -> Option<C>) -> Option<C> {
        let mut acc = C::zero(ctx);
        for (m, c) in &self.terms {
            let mut t = C::from_rational(c, ctx);
            for (v, e) in m.factors() {
                t = t.mul(&value(v)?.pow(e));
            }
            acc = acc.add(&t);
        }
        Some(acc)
    }

    /// Parses the output of `Display`, e.g. `3/2*c_a^2 - mu + 1`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Some(SymbolicPoly::default());
        }
        let mut out = SymbolicPoly::default();
        let mut rest = s;
        let mut sign = <Rational as One>::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
        }
        loop {
            let end = rest.find([' ', '\t']).map(|i| {
                // terms are separated by " + " / " - "
                let tail = rest[i..].trim_start();
                if tail.starts_with('+') || tail.starts_with('-') {
                    i
                } else {
                    usize::MAX
                }
            });
            let (term, tail) = match end {
                Some(i) if i != usize::MAX => (&rest[..i], rest[i..].trim_start()),
                _ => (rest, ""),
            };
            let (coef, mono) = parse_term(term.trim())?;
            out.add_term(mono, &(coef * &sign));
            if tail.is_empty() {
                break;
            }
            sign = if tail.starts_with('-') { -<Rational as One>::one() } else { <Rational as One>::one() };
            rest = tail[1..].trim_start();
        }
        Some(out)
    }
}

fn parse_term(t: &str) -> Option<(Rational, Monomial)> {
    let mut coef = <Rational as One>::one();
    let mut mono = Monomial::one();
    for factor in t.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return None;
        }
        if factor.starts_with(|c: char| c.is_ascii_digit()) {
            coef *= parse_rational(factor)?;
            continue;
        }
        let (name, e) = match factor.split_once('^') {
            Some((n, e)) => (n, e.parse::<u32>().ok()?),
            None => (factor, 1),
        };
        if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return None;
        }
        let mut m = Monomial::one();
        for _ in 0..e {
            m = m.mul(&Monomial::var(name));
        }
        mono = mono.mul(&m);
    }
    Some((coef, mono))
}

impl Scalar for SymbolicPoly {
    type Ctx = ();

    const RING: RingKind = RingKind::Symbolic;

    fn ctx(&self) {}

    fn join(_: &(), _: &()) {}

    fn from_rational(q: &Rational, _: &()) -> Self {
        SymbolicPoly::constant(q.clone())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    fn neg(&self) -> Self {
        SymbolicPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = SymbolicPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    fn mul_rational(&self, q: &Rational) -> Self {
        if Zero::is_zero(q) {
            return SymbolicPoly::default();
        }
        SymbolicPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect() }
    }

    fn inv(&self) -> Option<Self> {
        let c = self.as_constant()?;
        if Zero::is_zero(&c) {
            None
        } else {
            Some(SymbolicPoly::constant(c.recip()))
        }
    }

    fn magnitude(&self) -> f64 {
        self.terms.values().map(rational_magnitude).fold(0.0, f64::max)
    }
}

impl fmt::Display for SymbolicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn x() -> SymbolicPoly {
        SymbolicPoly::var("x")
    }

    fn y() -> SymbolicPoly {
        SymbolicPoly::var("y")
    }

    #[test]
    fn ring_laws_on_samples() {
        let a = x().add(&SymbolicPoly::constant(rat(1, 2)));
        let b = y().sub(&x());
        assert_eq!(a.mul(&b), b.mul(&a));
        let c = a.mul(&a).sub(&x().mul(&x()));
        assert_eq!(c, x().add(&SymbolicPoly::constant(rat(1, 4))));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn display_parse_round_trip() {
        let p = x().mul(&x()).mul_rational(&rat(3, 2)).sub(&y()).add(&SymbolicPoly::constant(rat(-7, 3)));
        let s = p.to_string();
        assert_eq!(SymbolicPoly::parse(&s).unwrap(), p, "{s}");
        assert_eq!(SymbolicPoly::parse("-mu^2 + 24*c").unwrap().to_string(), "24*c - mu^2");
    }

    #[test]
    fn reduction_modulo_square() {
        let mu = SymbolicPoly::var("mu");
        let p = mu.pow(3).add(&mu.pow(2));
        let r = p.reduce_square("mu", &SymbolicPoly::var("c").mul_rational(&rat(24, 1)));
        assert_eq!(r.to_string(), "24*c + 24*c*mu");
    }

    #[test]
    fn evaluation() {
        let p = x().mul(&y()).add(&SymbolicPoly::constant(rat(1, 1)));
        let v = p.eval::<Rational>(&(), &|n| Some(if n == "x" { rat(2, 1) } else { rat(3, 1) }));
        assert_eq!(v, Some(rat(7, 1)));
    }
}
