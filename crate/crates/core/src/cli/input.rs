use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kv::TAutPair;
use crate::ncseries::AnySeries;
use crate::report::InputDigest;
use crate::scalar::bigfloat::{bits_for_digits, parse_decimal, BigFloat};
use crate::scalar::{BigComplex, Rational, Scalar, SymbolicPoly};

pub fn read_input(path: &Path) -> Result<(String, InputDigest)> {
    let bytes = fs::read(path)?;
    let digest = InputDigest::of(&path.display().to_string(), &bytes);
    let text = String::from_utf8(bytes).map_err(|_| Error::Parse(format!("{} is not UTF-8", path.display())))?;
    Ok((text, digest))
}

pub fn load_series(path: &Path) -> Result<(AnySeries, InputDigest)> {
    let (text, digest) = read_input(path)?;
    Ok((AnySeries::from_json(&text)?, digest))
}

pub fn load_pair(path: &Path) -> Result<(AnyPair, InputDigest)> {
    let (text, digest) = read_input(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let ring = value.pointer("/p1/ring").and_then(|r| r.as_str()).unwrap_or("");
    let pair = match ring {
        "rational" => AnyPair::Rational(TAutPair::from_json(&text)?),
        "complex" => AnyPair::Complex(TAutPair::from_json(&text)?),
        other => return Err(Error::Parse(format!("unsupported ring `{other}` for a TAut pair"))),
    };
    Ok((pair, digest))
}

pub enum AnyPair {
    Rational(TAutPair<Rational>),
    Complex(TAutPair<BigComplex>),
}

/// Value of `--mu`.
#[derive(Clone, Debug, PartialEq)]
pub enum MuArg {
    /// Recover `mu` from the quadratic coefficient.
    Auto,
    /// `k * 2 pi i` for integer `k`.
    TwoPiI(i64),
    Real(Rational),
    Complex(Rational, Rational),
}

impl FromStr for MuArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace(' ', "");
        if t == "auto" {
            return Ok(MuArg::Auto);
        }
        if let Some(k) = t.strip_suffix("2pii") {
            return match k {
                "" | "+" => Ok(MuArg::TwoPiI(1)),
                "-" => Ok(MuArg::TwoPiI(-1)),
                _ => k
                    .trim_end_matches('*')
                    .parse()
                    .map(MuArg::TwoPiI)
                    .map_err(|_| Error::Parse(format!("bad mu `{s}`"))),
            };
        }
        if let Some((re, im)) = t.split_once(',') {
            let re = parse_decimal(re).ok_or_else(|| Error::Parse(format!("bad mu `{s}`")))?;
            let im = parse_decimal(im).ok_or_else(|| Error::Parse(format!("bad mu `{s}`")))?;
            return Ok(MuArg::Complex(re, im));
        }
        parse_decimal(&t)
            .map(MuArg::Real)
            .ok_or_else(|| Error::Parse(format!("bad mu `{s}`: expected auto, 2pii, -2pii, a rational, or `re,im`")))
    }
}

impl MuArg {
    pub fn to_complex(&self, digits: u32) -> Option<BigComplex> {
        let bits = bits_for_digits(digits);
        match self {
            MuArg::Auto => None,
            MuArg::TwoPiI(k) => Some(BigComplex::two_pi_i(digits).mul_i64(*k)),
            MuArg::Real(q) => Some(BigComplex::from_rational(q, &digits)),
            MuArg::Complex(a, b) => {
                Some(BigComplex::new(BigFloat::from_rational(a, bits), BigFloat::from_rational(b, bits), digits))
            }
        }
    }

    /// `mu` in an exact ring; `None` when it is transcendental or complex.
    pub fn to_rational(&self) -> Option<Rational> {
        match self {
            MuArg::Real(q) => Some(q.clone()),
            MuArg::TwoPiI(0) => Some(Rational::from_integer(0.into())),
            _ => None,
        }
    }

    pub fn to_symbolic(&self) -> Option<SymbolicPoly> {
        self.to_rational().map(SymbolicPoly::constant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn mu_arguments() {
        assert_eq!("auto".parse::<MuArg>().unwrap(), MuArg::Auto);
        assert_eq!("2pii".parse::<MuArg>().unwrap(), MuArg::TwoPiI(1));
        assert_eq!("-2pii".parse::<MuArg>().unwrap(), MuArg::TwoPiI(-1));
        assert_eq!("1/2".parse::<MuArg>().unwrap(), MuArg::Real(rat(1, 2)));
        assert_eq!("0,1.5".parse::<MuArg>().unwrap(), MuArg::Complex(rat(0, 1), rat(3, 2)));
        assert!("pi".parse::<MuArg>().is_err());
    }
}
