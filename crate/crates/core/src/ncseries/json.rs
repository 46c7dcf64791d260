//! JSON exchange format for series.
//!
//! ```json
//! {"alphabet": ["X0","X1"], "truncation": 4, "ring": "rational",
//!  "terms": [{"word": "", "coeff": "1"}, {"word": "X0 X1", "coeff": "-1/24"}]}
//! ```
//!
//! Complex series carry `"precision"` (decimal digits) and `re`/`im`
//! strings; symbolic coefficients are polynomial strings such as
//! `"c^2 - 1/3*mu"`. Weighted alphabets list `"weights"`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ncseries::alphabet::Alphabet;
use crate::ncseries::series::Series;
use crate::scalar::{format_rational, parse_rational, BigComplex, Rational, RingKind, Scalar, SymbolicPoly};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesEnvelope {
    pub alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
    pub truncation: usize,
    pub ring: RingKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    pub terms: Vec<TermEnvelope>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct TermEnvelope {
    pub word: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub re: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<String>,
}

/// Coefficients that know how to appear in a [`TermEnvelope`].
pub trait JsonCoeff: Scalar {
    fn precision(ctx: &Self::Ctx) -> Option<u32>;
    fn ctx_from_precision(precision: Option<u32>) -> Result<Self::Ctx>;
    fn encode(&self, term: &mut TermEnvelope);
    fn decode(term: &TermEnvelope, ctx: &Self::Ctx) -> Result<Self>;
}

fn missing(field: &str, word: &str) -> Error {
    Error::Parse(format!("term `{word}` lacks `{field}`"))
}

impl JsonCoeff for Rational {
    fn precision(_: &()) -> Option<u32> {
        None
    }

    fn ctx_from_precision(_: Option<u32>) -> Result<()> {
        Ok(())
    }

    fn encode(&self, term: &mut TermEnvelope) {
        term.coeff = Some(format_rational(self));
    }

    fn decode(term: &TermEnvelope, _: &()) -> Result<Self> {
        let s = term.coeff.as_deref().ok_or_else(|| missing("coeff", &term.word))?;
        parse_rational(s).ok_or_else(|| Error::Parse(format!("bad rational `{s}`")))
    }
}

impl JsonCoeff for BigComplex {
    fn precision(digits: &u32) -> Option<u32> {
        Some(*digits)
    }

    fn ctx_from_precision(precision: Option<u32>) -> Result<u32> {
        precision.ok_or_else(|| Error::Parse("complex series need `precision`".into()))
    }

    fn encode(&self, term: &mut TermEnvelope) {
        term.re = Some(self.re().to_decimal_string(self.digits()));
        term.im = Some(self.im().to_decimal_string(self.digits()));
    }

    fn decode(term: &TermEnvelope, digits: &u32) -> Result<Self> {
        // a bare `coeff` is accepted as a real number
        let (re, im) = match (&term.re, &term.im, &term.coeff) {
            (Some(r), i, _) => (r.as_str(), i.as_deref().unwrap_or("0")),
            (None, Some(i), _) => ("0", i.as_str()),
            (None, None, Some(c)) => (c.as_str(), "0"),
            _ => return Err(missing("re", &term.word)),
        };
        BigComplex::parse(re, im, *digits).ok_or_else(|| Error::Parse(format!("bad complex `{re}`, `{im}`")))
    }
}

impl JsonCoeff for SymbolicPoly {
    fn precision(_: &()) -> Option<u32> {
        None
    }

    fn ctx_from_precision(_: Option<u32>) -> Result<()> {
        Ok(())
    }

    fn encode(&self, term: &mut TermEnvelope) {
        term.coeff = Some(self.to_string());
    }

    fn decode(term: &TermEnvelope, _: &()) -> Result<Self> {
        let s = term.coeff.as_deref().ok_or_else(|| missing("coeff", &term.word))?;
        SymbolicPoly::parse(s).ok_or_else(|| Error::Parse(format!("bad polynomial `{s}`")))
    }
}

impl<C: JsonCoeff> Series<C> {
    pub fn to_envelope(&self) -> SeriesEnvelope {
        let a = self.alphabet();
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|(w, _)| (a.degree(w), (*w).clone()));
        SeriesEnvelope {
            alphabet: a.names().to_vec(),
            weights: (!a.is_uniform()).then(|| a.weights().to_vec()),
            truncation: self.truncation(),
            ring: C::RING,
            precision: C::precision(self.ctx()),
            terms: terms
                .into_iter()
                .map(|(w, c)| {
                    let mut t = TermEnvelope { word: a.format_word(w), ..Default::default() };
                    c.encode(&mut t);
                    t
                })
                .collect(),
        }
    }

    pub fn from_envelope(env: &SeriesEnvelope) -> Result<Self> {
        if env.ring != C::RING {
            return Err(Error::Parse(format!("expected a {} series, found {}", C::RING, env.ring)));
        }
        let weights = env.weights.clone().unwrap_or_else(|| vec![1; env.alphabet.len()]);
        let alphabet = canonical_alphabet(Alphabet::new(env.alphabet.clone(), weights)?);
        let ctx = C::ctx_from_precision(env.precision)?;
        let mut s = Series::zero(&alphabet, env.truncation, &ctx);
        let mut seen = BTreeSet::new();
        for t in &env.terms {
            let w = alphabet.parse_word(&t.word)?;
            if alphabet.degree(&w) > env.truncation {
                return Err(Error::Parse(format!(
                    "term `{}` has degree {} above the truncation {}",
                    t.word,
                    alphabet.degree(&w),
                    env.truncation
                )));
            }
            if !seen.insert(w.clone()) {
                return Err(Error::Parse(format!("word `{}` listed twice", t.word)));
            }
            s.add_term(w, C::decode(t, &ctx)?);
        }
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_envelope()).expect("envelope serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_envelope(&serde_json::from_str(s)?)
    }
}

/// Reuses the shared `{X0, X1}` alphabet when the names match, so that
/// parsed series combine cheaply with built-in ones.
fn canonical_alphabet(a: Alphabet) -> Alphabet {
    let x = Alphabet::x01();
    if a == x {
        x
    } else {
        a
    }
}

/// A series over any of the three coefficient rings.
#[derive(Clone, Debug)]
pub enum AnySeries {
    Rational(Series<Rational>),
    Complex(Series<BigComplex>),
    Symbolic(Series<SymbolicPoly>),
}

impl AnySeries {
    pub fn from_json(s: &str) -> Result<Self> {
        let env: SeriesEnvelope = serde_json::from_str(s)?;
        Ok(match env.ring {
            RingKind::Rational => AnySeries::Rational(Series::from_envelope(&env)?),
            RingKind::Complex => AnySeries::Complex(Series::from_envelope(&env)?),
            RingKind::Symbolic => AnySeries::Symbolic(Series::from_envelope(&env)?),
        })
    }

    pub fn to_json(&self) -> String {
        match self {
            AnySeries::Rational(s) => s.to_json(),
            AnySeries::Complex(s) => s.to_json(),
            AnySeries::Symbolic(s) => s.to_json(),
        }
    }

    pub fn ring(&self) -> RingKind {
        match self {
            AnySeries::Rational(_) => RingKind::Rational,
            AnySeries::Complex(_) => RingKind::Complex,
            AnySeries::Symbolic(_) => RingKind::Symbolic,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            AnySeries::Rational(s) => s.alphabet(),
            AnySeries::Complex(s) => s.alphabet(),
            AnySeries::Symbolic(s) => s.alphabet(),
        }
    }

    pub fn truncation(&self) -> usize {
        match self {
            AnySeries::Rational(s) => s.truncation(),
            AnySeries::Complex(s) => s.truncation(),
            AnySeries::Symbolic(s) => s.truncation(),
        }
    }

    /// Converts to complex coefficients (rationals embed exactly).
    pub fn to_complex(&self, digits: u32) -> Result<Series<BigComplex>> {
        match self {
            AnySeries::Rational(s) => Ok(s.map_coeffs(&digits, |q| BigComplex::from_rational(q, &digits))),
            AnySeries::Complex(s) => Ok(s.clone()),
            AnySeries::Symbolic(_) => Err(Error::NotRepresentable("a symbolic series as complex numbers".into())),
        }
    }
}
