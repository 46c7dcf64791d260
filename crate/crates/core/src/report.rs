//! Machine-readable results of checks.

use serde::{Deserialize, Serialize};

/// Outcome of one equation check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub equation: String,
    /// Largest coefficient magnitude of `lhs - rhs`; infinite when the input
    /// was rejected before evaluation.
    #[serde(with = "finite_or_inf")]
    pub residual: f64,
    /// Whether the coefficients were exact, so that only zero passes.
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offending_word: Option<String>,
    pub truncation: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ResidualReport {
    pub fn new(equation: &str, residual: f64, exact: bool, offending_word: Option<String>, truncation: usize) -> Self {
        ResidualReport { equation: equation.to_string(), residual, exact, offending_word, truncation, note: None }
    }

    pub fn rejected(equation: &str, truncation: usize, why: String) -> Self {
        ResidualReport {
            equation: equation.to_string(),
            residual: f64::INFINITY,
            exact: true,
            offending_word: None,
            truncation,
            note: Some(why),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Exact results pass only at zero; inexact ones at `<= threshold`.
    pub fn passes(&self, threshold: f64) -> bool {
        if !self.residual.is_finite() {
            return false;
        }
        if self.exact {
            self.residual == 0.0
        } else {
            self.residual <= threshold
        }
    }
}

mod finite_or_inf {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            Repr::Num(*v).serialize(s)
        } else {
            Repr::Text("inf".into()).serialize(s)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) if t == "inf" => Ok(f64::INFINITY),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("bad residual `{t}`"))),
        }
    }
}

/// SHA-256 of an input, for run reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(name: &str, bytes: &[u8]) -> Self {
        use sha2::{Digest, Sha256};
        InputDigest { name: name.to_string(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

/// Everything one command run checked.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub truncation: Option<usize>,
    pub ring: Option<String>,
    pub precision: Option<u32>,
    pub threshold: f64,
    pub checks: Vec<ResidualReport>,
    /// Extra findings that are not residuals (verdicts, dimensions, values).
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
    pub verdict: bool,
    pub wall_time_ms: u128,
}

impl RunReport {
    /// `verdict` holds iff every check passes its threshold.
    pub fn verdict_of(checks: &[ResidualReport], threshold: f64) -> bool {
        checks.iter().all(|c| c.passes(threshold))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinite_residual_round_trips() {
        let r = ResidualReport::rejected("pentagon", 4, "constant term is 2".into());
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"inf\""));
        let back: ResidualReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(!back.passes(1.0));
    }

    #[test]
    fn exact_reports_need_zero() {
        let r = ResidualReport::new("x", 1e-300, true, None, 3);
        assert!(!r.passes(1e-10));
        let r = ResidualReport::new("x", 1e-30, false, None, 3);
        assert!(r.passes(1e-25));
    }

    #[test]
    fn digest_is_hex_sha256() {
        let d = InputDigest::of("empty", b"");
        assert_eq!(d.sha256, "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
