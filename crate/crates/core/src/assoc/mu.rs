use std::fmt;

use serde::Serialize;

use crate::assoc::hexagon::{hexagon_residuals, hexagon_residuals_adjoined};
use crate::assoc::pentagon::pentagon_residual;
use crate::config::threshold_for;
use crate::error::{Error, Result};
use crate::ncseries::{Series, Word, X0, X1};
use crate::report::ResidualReport;
use crate::scalar::{rat, rational_sqrt, BigComplex, Rational, Scalar, SymbolicPoly};

/// Rings in which a square root may or may not exist.
pub trait SquareRoot: Scalar {
    fn square_root(&self) -> Option<Self>;
}

impl SquareRoot for Rational {
    fn square_root(&self) -> Option<Self> {
        rational_sqrt(self)
    }
}

impl SquareRoot for BigComplex {
    fn square_root(&self) -> Option<Self> {
        Some(self.sqrt())
    }
}

impl SquareRoot for SymbolicPoly {
    fn square_root(&self) -> Option<Self> {
        self.as_constant().and_then(|q| rational_sqrt(&q)).map(SymbolicPoly::constant)
    }
}

/// `mu` with `mu^2 = 24 c_{X0 X1}(phi)`, determined up to sign.
#[derive(Clone, Debug)]
pub struct RecoveredMu<C: Scalar> {
    pub mu_squared: C,
    /// One root; the other is its negative. `None` when the root does not
    /// lie in the coefficient ring and is carried symbolically.
    pub root: Option<C>,
}

impl<C: Scalar> RecoveredMu<C> {
    pub fn is_symbolic(&self) -> bool {
        self.root.is_none()
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for RecoveredMu<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.root {
            Some(r) => write!(f, "±{r}"),
            None => write!(f, "±sqrt({})", self.mu_squared),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MuSummary {
    pub mu_squared: String,
    pub root: Option<String>,
    pub symbolic: bool,
}

/// `24 c_{X0 X1}(phi)`.
pub fn mu_squared<C: Scalar>(phi: &Series<C>) -> C {
    phi.coeff(&Word::from_letters(&[X0, X1])).mul_i64(24)
}

/// Recovers `mu` from a pentagon solution. Refuses when the pentagon fails
/// at the truncation of `phi`.
pub fn recover_mu<C: SquareRoot>(phi: &Series<C>) -> Result<RecoveredMu<C>> {
    let p = pentagon_residual(phi)?;
    if !p.passes(threshold_for::<C>(phi.ctx())) {
        return Err(Error::Precondition(format!(
            "pentagon fails (residual {:e}{}); mu is only defined for pentagon solutions",
            p.residual,
            p.note.map(|n| format!(": {n}")).unwrap_or_default()
        )));
    }
    let sq = mu_squared(phi);
    let root = sq.square_root();
    Ok(RecoveredMu { mu_squared: sq, root })
}

/// Both hexagons for an exact pentagon solution at its recovered `mu`,
/// checking each sign of a rational root, or the adjoined root otherwise.
pub fn hexagons_at_recovered_mu(phi: &Series<Rational>) -> Result<Vec<ResidualReport>> {
    let mu = recover_mu(phi)?;
    match &mu.root {
        Some(r) => {
            let mut out = Vec::new();
            let signs: &[i64] = if r == &rat(0, 1) { &[1] } else { &[1, -1] };
            for &s in signs {
                let m = r * rat(s, 1);
                let (a, b) = hexagon_residuals(&m, phi)?;
                let note = format!("mu = {m}");
                out.push(a.with_note(note.clone()));
                out.push(b.with_note(note));
            }
            Ok(out)
        }
        None => {
            let (a, b) = hexagon_residuals_adjoined(phi, &mu.mu_squared)?;
            Ok(vec![a, b])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncseries::{exp, Alphabet};

    #[test]
    fn unit_has_mu_zero() {
        let mu = recover_mu(&Series::<Rational>::one(&Alphabet::x01(), 3, &())).unwrap();
        assert_eq!(mu.root, Some(rat(0, 1)));
    }

    #[test]
    fn refuses_non_solutions() {
        let x0 = Series::<Rational>::generator(&Alphabet::x01(), X0, 3, &());
        assert!(recover_mu(&exp(&x0).unwrap()).is_err());
    }

    #[test]
    fn non_square_is_flagged() {
        let a = Alphabet::x01();
        let x = |l| Series::<Rational>::generator(&a, l, 3, &());
        let br = &(&x(X0) * &x(X1)) - &(&x(X1) * &x(X0));
        let phi = exp(&br.scale_rational(&rat(1, 12))).unwrap();
        let mu = recover_mu(&phi).unwrap();
        assert_eq!(mu.mu_squared, rat(2, 1));
        assert!(mu.is_symbolic());
        assert_eq!(mu.to_string(), "±sqrt(2)");
    }
}
