//! Binary floating point numbers with an arbitrary-size mantissa.
//!
//! A value is `mant * 2^exp` with `|mant| < 2^prec`. Every operation rounds
//! to the larger of the operand precisions (round-to-nearest).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Rational;

/// Guard bits added on top of the bits implied by a decimal precision.
pub const GUARD_BITS: u32 = 24;

/// Number of bits needed to carry `digits` significant decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
}

#[derive(Clone)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn bit_len(m: &BigInt) -> u64 {
    m.magnitude().bits()
}

/// `m / 2^shift` rounded to nearest, ties away from zero.
fn round_shift(m: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    let half = BigInt::one() << (shift - 1);
    let mag = (m.magnitude().clone() + half.magnitude()) >> shift;
    BigInt::from_biguint(m.sign(), mag)
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn from_bigint(m: BigInt, prec: u32) -> Self {
        Self::from_parts(m, 0, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_bigint(BigInt::from(v), prec)
    }

    /// Builds `m * 2^exp` rounded to `prec` bits.
    pub fn from_parts(mant: BigInt, exp: i64, prec: u32) -> Self {
        let mut x = BigFloat { mant, exp, prec };
        x.normalize();
        x
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let num = BigFloat::from_bigint(q.numer().clone(), prec);
        if q.denom().is_one() {
            return num;
        }
        num.div_bigint(q.denom())
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let bits = bit_len(&self.mant);
        if bits > self.prec as u64 {
            let shift = bits - self.prec as u64;
            self.mant = round_shift(&self.mant, shift);
            self.exp += shift as i64;
            // rounding may carry into one extra bit
            if bit_len(&self.mant) > self.prec as u64 {
                self.mant >>= 1;
                self.exp += 1;
            }
        }
        // drop trailing zero bits so that equal values share a representation
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::from_parts(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Exponent of the leading bit plus one; `None` for zero.
    fn top(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + bit_len(&self.mant) as i64)
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.max(rhs.prec);
        let (ta, tb) = match (self.top(), rhs.top()) {
            (None, _) => return rhs.with_prec(prec),
            (_, None) => return self.with_prec(prec),
            (Some(a), Some(b)) => (a, b),
        };
        // an operand entirely below the rounding window cannot change the result
        let window = prec as i64 + 4;
        if ta - tb > window && rhs.exp < self.exp {
            return self.with_prec(prec);
        }
        if tb - ta > window && self.exp < rhs.exp {
            return rhs.with_prec(prec);
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &rhs.mant << (rhs.exp - e) as usize;
        Self::from_parts(a + b, e, prec)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let prec = self.prec.max(rhs.prec);
        Self::from_parts(&self.mant * &rhs.mant, self.exp + rhs.exp, prec)
    }

    pub fn mul_bigint(&self, k: &BigInt) -> Self {
        Self::from_parts(&self.mant * k, self.exp, self.prec)
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        Self::from_parts(&self.mant * k, self.exp, self.prec)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn div_bigint(&self, d: &BigInt) -> Self {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return self.clone();
        }
        let shift = (self.prec as i64 + 2 + bit_len(d) as i64 - bit_len(&self.mant) as i64).max(0);
        let num = &self.mant << shift as usize;
        let (q, r) = num.div_rem(d);
        if r.is_zero() {
            return Self::from_parts(q, self.exp - shift, self.prec);
        }
        // sticky bit keeps round-to-nearest honest after truncating division
        let q = (q << 1usize) + sticky(&num, d);
        Self::from_parts(q, self.exp - shift - 1, self.prec)
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        let prec = self.prec.max(rhs.prec);
        let lhs = self.with_prec(prec);
        let q = lhs.div_bigint(&rhs.mant);
        Self::from_parts(q.mant, q.exp - rhs.exp, prec)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative number");
        if self.is_zero() {
            return self.clone();
        }
        let want = 2 * (self.prec as i64 + 2);
        let mut shift = (want - bit_len(&self.mant) as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.mant << shift as usize;
        let r = m.sqrt();
        Self::from_parts(r, (self.exp - shift) / 2, self.prec)
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Nearest `f64`; very small magnitudes flush to zero.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = bit_len(&self.mant);
        let (m, e) = if bits > 60 {
            let s = bits - 60;
            (round_shift(&self.mant, s), self.exp + s as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(0.0);
        ldexp(mf, e)
    }

    /// Exact rational value of this float.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as usize)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Scientific notation with `digits` significant digits, e.g. `1.6449e0`.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let q = self.to_rational().abs();
        // estimate decimal exponent, then correct
        let est = (self.abs().to_f64_log10()).floor() as i64;
        let mut d10 = est;
        let scaled = loop {
            let k = digits as i64 - 1 - d10;
            let s = scale_pow10(&q, k);
            let n = round_rational(&s);
            let len = n.to_string().len() as i64;
            if len > digits as i64 {
                d10 += 1;
            } else if len < digits as i64 {
                d10 -= 1;
            } else {
                break n;
            }
        };
        let s = scaled.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        let (head, tail) = s.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{d10}")
        } else {
            format!("{sign}{head}.{tail}e{d10}")
        }
    }

    fn to_f64_log10(&self) -> f64 {
        let bits = bit_len(&self.mant) as i64;
        let s = (bits - 60).max(0);
        let m = (self.mant.magnitude() >> s as u64).to_f64().unwrap_or(1.0);
        m.log10() + ((self.exp + s) as f64) * std::f64::consts::LOG10_2
    }

    /// Parses decimal notation (`-1.25`, `3e-7`, `12`) or a rational `p/q`.
    pub fn parse(s: &str, prec: u32) -> Option<Self> {
        parse_decimal(s).map(|q| Self::from_rational(&q, prec))
    }

    pub fn cmp_value(&self, rhs: &Self) -> Ordering {
        self.sub(rhs).signum().cmp(&0)
    }
}

fn sticky(num: &BigInt, d: &BigInt) -> BigInt {
    // the discarded remainder is non-zero: push one low bit with the quotient's sign
    if (num.sign() == Sign::Minus) != (d.sign() == Sign::Minus) {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

fn ldexp(x: f64, e: i64) -> f64 {
    let mut x = x;
    let mut e = e;
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

fn scale_pow10(q: &Rational, k: i64) -> Rational {
    let p = BigInt::from(10).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        q * Rational::from_integer(p)
    } else {
        q / Rational::from_integer(p)
    }
}

fn round_rational(q: &Rational) -> BigInt {
    let two = BigInt::from(2);
    let num = q.numer() * &two + q.denom();
    num.div_floor(&(q.denom() * two))
}

/// Parses a decimal or `p/q` literal into an exact rational.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    if neg {
        n = -n;
    }
    let e = exponent - frac_part.len() as i64;
    Some(scale_pow10(&Rational::from_integer(n), e))
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(20))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec.saturating_sub(GUARD_BITS)) as f64 / std::f64::consts::LOG2_10).floor() as u32;
        write!(f, "{}", self.to_decimal_string(digits.max(1)))
    }
}

/// `atan(1/x)` for integer `x >= 2`, as a float of `prec` bits.
fn atan_inv(x: u64, prec: u32) -> BigFloat {
    let scale = prec as usize + 32;
    let one = BigInt::one() << scale;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut term = &one / &x;
    let mut sum = term.clone();
    let mut k: u64 = 1;
    while !term.is_zero() {
        term = &term / &x2;
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        k += 1;
    }
    BigFloat::from_parts(sum, -(scale as i64), prec)
}

/// π by Machin's formula.
pub fn pi(prec: u32) -> BigFloat {
    let a = atan_inv(5, prec + 8).mul_i64(16);
    let b = atan_inv(239, prec + 8).mul_i64(4);
    a.sub(&b).with_prec(prec)
}

/// ln 2 = Σ 1/(k 2^k).
pub fn ln2(prec: u32) -> BigFloat {
    let scale = prec as usize + 32;
    let mut sum = BigInt::zero();
    let mut k: usize = 1;
    loop {
        let t = (BigInt::one() << scale.saturating_sub(k)) / BigInt::from(k);
        if k > scale || t.is_zero() {
            break;
        }
        sum += t;
        k += 1;
    }
    BigFloat::from_parts(sum, -(scale as i64), prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_decimal(s).unwrap()
    }

    #[test]
    fn arithmetic_round_trips() {
        let p = 200;
        let a = BigFloat::from_rational(&q("1/3"), p);
        let b = BigFloat::from_rational(&q("2/3"), p);
        let one = a.add(&b);
        assert!(one.sub(&BigFloat::from_i64(1, p)).abs().to_f64() < 1e-55);
        let c = a.mul(&BigFloat::from_i64(3, p));
        assert!(c.sub(&BigFloat::from_i64(1, p)).abs().to_f64() < 1e-55);
        let d = BigFloat::from_i64(1, p).div(&BigFloat::from_i64(3, p));
        assert!(d.sub(&a).abs().to_f64() < 1e-58);
    }

    #[test]
    fn sqrt_and_constants() {
        let p = bits_for_digits(50);
        let two = BigFloat::from_i64(2, p);
        let r = two.sqrt();
        assert!(r.mul(&r).sub(&two).abs().to_f64() < 1e-50);
        let pi = pi(p);
        assert!(pi.to_decimal_string(40).starts_with("3.14159265358979323846264338327950288419"));
        let l = ln2(p);
        assert!(l.to_decimal_string(30).starts_with("6.93147180559945309417232121458e-1"));
    }

    #[test]
    fn parse_and_print() {
        let x = BigFloat::parse("-1.25e-3", 100).unwrap();
        assert_eq!(x.to_decimal_string(3), "-1.25e-3");
        assert_eq!(BigFloat::parse("7/2", 64).unwrap().to_f64(), 3.5);
        assert!(BigFloat::parse("1.2.3", 64).is_none());
        assert_eq!(BigFloat::from_i64(100, 64).to_decimal_string(1), "1e2");
    }

    #[test]
    fn mixed_precision_takes_the_max() {
        let a = BigFloat::from_i64(1, 80);
        let b = BigFloat::from_i64(1, 200);
        assert_eq!(a.add(&b).prec(), 200);
        assert_eq!(a.mul(&b).prec(), 200);
    }

    #[test]
    fn tiny_addend_is_absorbed_without_blowup() {
        let a = BigFloat::from_i64(1, 64);
        let tiny = BigFloat::from_parts(BigInt::one(), -100_000, 64);
        assert_eq!(a.add(&tiny).to_f64(), 1.0);
    }
}
