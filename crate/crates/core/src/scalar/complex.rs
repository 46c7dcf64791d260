use std::fmt;

use crate::scalar::bigfloat::{self, bits_for_digits, BigFloat};
use crate::scalar::{Rational, RingKind, Scalar};

/// Complex number with real and imaginary parts carried at `digits`
/// significant decimal digits (plus guard bits).
///
/// Mixing precisions never happens silently: every result carries the
/// larger of the operand precisions.
#[derive(Clone)]
pub struct BigComplex {
    re: BigFloat,
    im: BigFloat,
    digits: u32,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        BigComplex { re: re.with_prec(bits), im: im.with_prec(bits), digits }
    }

    pub fn from_real(re: BigFloat, digits: u32) -> Self {
        Self::new(re, BigFloat::zero(bits_for_digits(digits)), digits)
    }

    pub fn i(digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        BigComplex { re: BigFloat::zero(bits), im: BigFloat::from_i64(1, bits), digits }
    }

    /// 2πi with π computed independently by Machin's formula.
    pub fn two_pi_i(digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        BigComplex { re: BigFloat::zero(bits), im: bigfloat::pi(bits).mul_i64(2), digits }
    }

    pub fn parse(re: &str, im: &str, digits: u32) -> Option<Self> {
        let bits = bits_for_digits(digits);
        Some(BigComplex { re: BigFloat::parse(re, bits)?, im: BigFloat::parse(im, bits)?, digits })
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: self.im.neg(), digits: self.digits }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt()
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let d = rhs.norm_sqr();
        let num = self.mul(&rhs.conj());
        BigComplex { re: num.re.div(&d), im: num.im.div(&d), digits: num.digits }
    }

    /// Principal square root (non-negative real part; `sqrt(-x) = i sqrt(x)`).
    pub fn sqrt(&self) -> Self {
        let r = self.abs();
        let two = BigFloat::from_i64(2, r.prec());
        let re = r.add(&self.re).div(&two);
        let im = r.sub(&self.re).div(&two);
        let re = if re.is_negative() { BigFloat::zero(r.prec()) } else { re.sqrt() };
        let mut im = if im.is_negative() { BigFloat::zero(r.prec()) } else { im.sqrt() };
        if self.im.is_negative() {
            im = im.neg();
        }
        BigComplex { re, im, digits: self.digits }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn with_digits(&self, digits: u32) -> Self {
        Self::new(self.re.clone(), self.im.clone(), digits)
    }

    /// Distance to `other` is at most `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.sub(other).magnitude() <= tol
    }
}

impl Scalar for BigComplex {
    type Ctx = u32;

    const RING: RingKind = RingKind::Complex;

    fn ctx(&self) -> u32 {
        self.digits
    }

    fn join(a: &u32, b: &u32) -> u32 {
        *a.max(b)
    }

    fn digits(ctx: &u32) -> Option<u32> {
        Some(*ctx)
    }

    fn from_rational(q: &Rational, digits: &u32) -> Self {
        let bits = bits_for_digits(*digits);
        BigComplex { re: BigFloat::from_rational(q, bits), im: BigFloat::zero(bits), digits: *digits }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        BigComplex { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im), digits: self.digits.max(rhs.digits) }
    }

    fn sub(&self, rhs: &Self) -> Self {
        BigComplex { re: self.re.sub(&rhs.re), im: self.im.sub(&rhs.im), digits: self.digits.max(rhs.digits) }
    }

    fn neg(&self) -> Self {
        BigComplex { re: self.re.neg(), im: self.im.neg(), digits: self.digits }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let digits = self.digits.max(rhs.digits);
        if self.im.is_zero() && rhs.im.is_zero() {
            let re = self.re.mul(&rhs.re);
            let im = BigFloat::zero(re.prec());
            return BigComplex { re, im, digits };
        }
        let re = self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im));
        let im = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        BigComplex { re, im, digits }
    }

    fn mul_rational(&self, q: &Rational) -> Self {
        let bits = bits_for_digits(self.digits);
        let f = BigFloat::from_rational(q, bits);
        BigComplex { re: self.re.mul(&f), im: self.im.mul(&f), digits: self.digits }
    }

    fn mul_i64(&self, k: i64) -> Self {
        BigComplex { re: self.re.mul_i64(k), im: self.im.mul_i64(k), digits: self.digits }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::one(&self.digits).div(self))
    }

    fn magnitude(&self) -> f64 {
        let (a, b) = self.to_f64_pair();
        a.hypot(b)
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.re.to_decimal_string(self.digits))?;
        if !self.im.is_zero() {
            write!(f, " + {}i", self.im.to_decimal_string(self.digits))?;
        }
        Ok(())
    }
}
