//! Coefficient rings.
//!
//! Series are generic over [`Scalar`]. Three rings are provided: exact
//! rationals, arbitrary-precision complex numbers and multivariate
//! polynomials over the rationals.

pub mod bigfloat;
pub mod complex;
pub mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use bigfloat::BigFloat;
pub use complex::BigComplex;
pub use poly::SymbolicPoly;

/// Exact rationals, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Rational,
    Complex,
    Symbolic,
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingKind::Rational => "rational",
            RingKind::Complex => "complex",
            RingKind::Symbolic => "symbolic",
        })
    }
}

/// A commutative coefficient ring containing the rationals.
///
/// `Ctx` carries whatever a value needs beyond its own data to build
/// constants of the same ring (the working precision for complex numbers).
pub trait Scalar: Clone + fmt::Debug + Send + Sync + 'static {
    type Ctx: Clone + fmt::Debug + PartialEq + Send + Sync;

    const RING: RingKind;

    fn ctx(&self) -> Self::Ctx;

    /// Context of a result combining operands from `a` and `b`.
    fn join(a: &Self::Ctx, b: &Self::Ctx) -> Self::Ctx;

    fn from_rational(q: &Rational, ctx: &Self::Ctx) -> Self;

    fn zero(ctx: &Self::Ctx) -> Self {
        Self::from_rational(&<Rational as Zero>::zero(), ctx)
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_rational(&<Rational as One>::one(), ctx)
    }

    fn from_i64(k: i64, ctx: &Self::Ctx) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(k)), ctx)
    }

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn mul_rational(&self, q: &Rational) -> Self;

    fn mul_i64(&self, k: i64) -> Self {
        self.mul_rational(&Rational::from_integer(BigInt::from(k)))
    }

    /// Multiplicative inverse when it exists in the ring.
    fn inv(&self) -> Option<Self>;

    /// Size used for residuals. Exact zero maps to `0.0`; a non-zero
    /// exact value never maps to `0.0`.
    fn magnitude(&self) -> f64;

    fn is_exact() -> bool {
        Self::RING != RingKind::Complex
    }

    /// Working precision in decimal digits, for inexact rings.
    fn digits(_ctx: &Self::Ctx) -> Option<u32> {
        None
    }

    fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ctx());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

pub(crate) fn rational_magnitude(q: &Rational) -> f64 {
    if Zero::is_zero(q) {
        return 0.0;
    }
    let v = q.abs().to_f64().unwrap_or(f64::INFINITY);
    if v == 0.0 {
        f64::MIN_POSITIVE
    } else {
        v
    }
}

impl Scalar for Rational {
    type Ctx = ();

    const RING: RingKind = RingKind::Rational;

    fn ctx(&self) {}

    fn join(_: &(), _: &()) {}

    fn from_rational(q: &Rational, _: &()) -> Self {
        q.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn mul_rational(&self, q: &Rational) -> Self {
        self * q
    }

    fn mul_i64(&self, k: i64) -> Self {
        self * BigInt::from(k)
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn magnitude(&self) -> f64 {
        rational_magnitude(self)
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q` or a terminating decimal into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    bigfloat::parse_decimal(s)
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(parse_rational("-3/2"), Some(q));
        assert_eq!(parse_rational("0.25"), Some(rat(1, 4)));
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
    }

    #[test]
    fn nonzero_rationals_have_nonzero_magnitude() {
        let tiny = Rational::new(BigInt::one(), BigInt::from(10).pow(400));
        assert!(tiny.magnitude() > 0.0);
        assert_eq!(rat(0, 1).magnitude(), 0.0);
    }
}
