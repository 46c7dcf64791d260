//! Associator relations: the pentagon expanded with a fully symbolic
//! group-like series.
//!
//! The symbolic series has one unknown `c_<word>` per Lyndon word; every
//! other coefficient is the polynomial forced by the shuffle relations, so
//! group-likeness holds identically.

use std::collections::BTreeSet;

use num_traits::One;
use serde::Serialize;

use crate::assoc::pentagon::pentagon_difference;
use crate::config::MAX_SYMBOLIC_DEGREE;
use crate::error::{Error, Result};
use crate::ncseries::lyndon::is_lyndon;
use crate::ncseries::{grouplike_from_lyndon, Alphabet, Series, Word};
use crate::scalar::{Scalar, SymbolicPoly};

/// One coefficient of the symbolic pentagon, required to vanish.
#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    /// Normal-form word of `U(a_4)` carrying the coefficient.
    pub word: String,
    pub degree: usize,
    #[serde(serialize_with = "as_string")]
    pub poly: SymbolicPoly,
}

fn as_string<S: serde::Serializer>(p: &SymbolicPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// Name of the unknown attached to the Lyndon word `w`, e.g. `c_X0X1`.
pub fn coefficient_name(alphabet: &Alphabet, w: &Word) -> String {
    let mut s = String::from("c_");
    for &l in w.letters() {
        s.push_str(alphabet.name(l));
    }
    s
}

/// Inverse of [`coefficient_name`] on `{X0, X1}`.
pub fn word_of_name(name: &str) -> Option<Word> {
    let body = name.strip_prefix("c_")?;
    let mut w = Word::empty();
    let mut rest = body;
    while !rest.is_empty() {
        let l = if let Some(r) = rest.strip_prefix("X0") {
            rest = r;
            0
        } else if let Some(r) = rest.strip_prefix("X1") {
            rest = r;
            1
        } else {
            return None;
        };
        w.push(l);
    }
    Some(w)
}

/// The generic group-like series to degree `n`.
pub fn symbolic_grouplike(n: usize) -> Series<SymbolicPoly> {
    let a = Alphabet::x01();
    grouplike_from_lyndon(&a, n, &(), |w| SymbolicPoly::var(&coefficient_name(&a, w)))
}

/// Scales so that the first stored coefficient is 1.
fn monic(p: &SymbolicPoly) -> SymbolicPoly {
    match p.terms().next() {
        Some((_, c)) if !c.is_one() => p.mul_rational(&c.recip()),
        _ => p.clone(),
    }
}

/// Distinct (up to scaling) coefficient identities of the pentagon through
/// degree `d`.
pub fn extract_relations(d: usize) -> Result<Vec<Relation>> {
    if d > MAX_SYMBOLIC_DEGREE {
        return Err(Error::Precondition(format!(
            "symbolic expansion is limited to degree {MAX_SYMBOLIC_DEGREE}, got {d}"
        )));
    }
    let phi = symbolic_grouplike(d);
    let diff = pentagon_difference(&phi)?;
    let alphabet = diff.algebra().alphabet().clone();
    let mut seen = BTreeSet::new();
    let mut terms: Vec<_> = diff.as_series().terms().collect();
    terms.sort_by_key(|(w, _)| (w.len(), (*w).clone()));
    let mut out = Vec::new();
    for (w, p) in terms {
        let m = monic(p);
        if seen.insert(m.to_string()) {
            out.push(Relation { word: alphabet.format_word(w), degree: w.len(), poly: m });
        }
    }
    Ok(out)
}

/// Value of a relation at the coefficients of a concrete series.
pub fn evaluate_relation<C: Scalar>(rel: &Relation, phi: &Series<C>) -> Result<C> {
    rel.poly
        .eval(phi.ctx(), &|name| {
            let w = word_of_name(name)?;
            is_lyndon(&w).then(|| phi.coeff(&w))
        })
        .ok_or_else(|| Error::Parse(format!("relation `{}` has an unknown that is not a Lyndon coefficient", rel.poly)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    #[test]
    fn degree_one_forces_vanishing_linear_terms() {
        let rels = extract_relations(1).unwrap();
        let polys: BTreeSet<String> = rels.iter().map(|r| r.poly.to_string()).collect();
        assert!(polys.contains("c_X0"));
        assert!(polys.contains("c_X1"));
    }

    #[test]
    fn names_round_trip() {
        let a = Alphabet::x01();
        let w = Word::from_letters(&[0, 0, 1]);
        assert_eq!(coefficient_name(&a, &w), "c_X0X0X1");
        assert_eq!(word_of_name("c_X0X0X1"), Some(w));
        assert_eq!(word_of_name("mu"), None);
    }

    #[test]
    fn relations_vanish_on_the_unit() {
        let one = Series::<Rational>::one(&Alphabet::x01(), 3, &());
        for r in extract_relations(3).unwrap() {
            assert_eq!(evaluate_relation(&r, &one).unwrap(), rat(0, 1));
        }
    }
}
