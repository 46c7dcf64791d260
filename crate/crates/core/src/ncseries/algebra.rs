//! Power-series functions shared by every truncated graded algebra.

use crate::error::{Error, Result};
use crate::scalar::{rat, Rational, Scalar};

/// A degree-truncated, connected graded algebra over a [`Scalar`] ring.
pub trait TruncatedAlgebra: Clone {
    type Coeff: Scalar;

    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn truncation(&self) -> usize;
    fn truncated(&self, n: usize) -> Self;
    fn constant_term(&self) -> Self::Coeff;
    fn min_degree(&self) -> Option<usize>;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn scaled(&self, c: &Self::Coeff) -> Self;
    fn scaled_rational(&self, q: &Rational) -> Self;
}

fn is_one<C: Scalar>(c: &C) -> bool {
    c.sub(&C::one(&c.ctx())).is_zero()
}

/// Truncated exponential; `s` must have zero constant term.
pub fn exp<A: TruncatedAlgebra>(s: &A) -> Result<A> {
    if !s.constant_term().is_zero() {
        return Err(Error::Precondition("exp needs a zero constant term".into()));
    }
    let n = s.truncation();
    let mut result = s.one_like();
    let mut term = s.one_like();
    for k in 1..=n {
        term = term.times(s).scaled_rational(&rat(1, k as i64));
        result = result.plus(&term);
    }
    Ok(result)
}

/// Truncated logarithm; `g` must have constant term 1.
pub fn log<A: TruncatedAlgebra>(g: &A) -> Result<A> {
    if !is_one(&g.constant_term()) {
        return Err(Error::Precondition("log needs constant term 1".into()));
    }
    let h = g.minus(&g.one_like());
    let n = g.truncation();
    let mut result = g.zero_like();
    let mut power = g.one_like();
    for k in 1..=n {
        power = power.times(&h);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        result = result.plus(&power.scaled_rational(&rat(sign, k as i64)));
    }
    Ok(result)
}

/// Multiplicative inverse of a series with constant term 1.
pub fn inverse<A: TruncatedAlgebra>(g: &A) -> Result<A> {
    if !is_one(&g.constant_term()) {
        return Err(Error::Precondition("inverse needs constant term 1".into()));
    }
    let h = g.one_like().minus(g);
    let mut result = g.one_like();
    let mut power = g.one_like();
    for _ in 1..=g.truncation() {
        power = power.times(&h);
        result = result.plus(&power);
    }
    Ok(result)
}

/// `a * b * a^-1` for `a` with constant term 1.
pub fn conjugate<A: TruncatedAlgebra>(a: &A, b: &A) -> Result<A> {
    Ok(a.times(b).times(&inverse(a)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncseries::alphabet::{Alphabet, X0, X1};
    use crate::ncseries::series::Series;

    fn x(n: usize, l: u8) -> Series<Rational> {
        Series::generator(&Alphabet::x01(), l, n, &())
    }

    fn one(n: usize) -> Series<Rational> {
        Series::one(&Alphabet::x01(), n, &())
    }

    #[test]
    fn exp_of_generator() {
        let e = exp(&x(2, X0)).unwrap();
        let x0 = x(2, X0);
        let want = &(&one(2) + &x0) + &(&x0 * &x0).scale_rational(&rat(1, 2));
        assert_eq!(e, want);
    }

    #[test]
    fn log_of_one_plus_generator() {
        let x0 = x(3, X0);
        let l = log(&(&one(3) + &x0)).unwrap();
        let x2 = &x0 * &x0;
        let x3 = &x2 * &x0;
        let want = &(&x0 - &x2.scale_rational(&rat(1, 2))) + &x3.scale_rational(&rat(1, 3));
        assert_eq!(l, want);
    }

    #[test]
    fn exp_log_round_trip_example() {
        let g = &(&one(2) + &x(2, X0)) + &(&x(2, X0) * &x(2, X1));
        assert_eq!(exp(&log(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn preconditions() {
        assert!(exp(&one(2)).is_err());
        assert!(log(&x(2, X0)).is_err());
        assert!(inverse(&x(2, X0)).is_err());
    }

    #[test]
    fn inverse_is_two_sided() {
        let g = &(&one(4) + &x(4, X0)) + &(&x(4, X1) * &x(4, X0)).scale_rational(&rat(-3, 2));
        let gi = inverse(&g).unwrap();
        assert_eq!(&g * &gi, one(4));
        assert_eq!(&gi * &g, one(4));
    }
}
