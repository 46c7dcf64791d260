//! Tangential automorphisms of `exp F_2` and the Kashiwara–Vergne equations.
//!
//! An automorphism `P` with `P(e^X0) = p1 e^X0 p1^-1`, `P(e^X1) = p2 e^X1 p2^-1`
//! is stored as the pair `(p1, p2)`; it acts on any series in `X0, X1` by
//! substituting `X0 -> p1 X0 p1^-1` and `X1 -> p2 X1 p2^-1`.

use serde::{Deserialize, Serialize};

use crate::assoc::pentagon::require_x01;
use crate::config::threshold_for;
use crate::error::{Error, Result};
use crate::ncseries::{conjugate, exp, group_like_residual, substitute, JsonCoeff, Series, SeriesEnvelope, X0, X1};
use crate::report::ResidualReport;
use crate::scalar::{rat, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct TAutPair<C: Scalar> {
    pub p1: Series<C>,
    pub p2: Series<C>,
}

#[derive(Serialize, Deserialize)]
struct PairEnvelope {
    p1: SeriesEnvelope,
    p2: SeriesEnvelope,
}

impl<C: Scalar> TAutPair<C> {
    pub fn new(p1: Series<C>, p2: Series<C>) -> Result<Self> {
        require_x01(&p1)?;
        require_x01(&p2)?;
        for (name, p) in [("p1", &p1), ("p2", &p2)] {
            if !p.constant_term().sub(&C::one(p.ctx())).is_zero() {
                return Err(Error::Precondition(format!("{name} must have constant term 1")));
            }
        }
        Ok(TAutPair { p1, p2 })
    }

    pub fn identity(n: usize, ctx: &C::Ctx) -> Self {
        let one = Series::one(&crate::ncseries::Alphabet::x01(), n, ctx);
        TAutPair { p1: one.clone(), p2: one }
    }

    pub fn truncation(&self) -> usize {
        self.p1.truncation().min(self.p2.truncation())
    }

    /// Images of `X0` and `X1`.
    pub fn generator_images(&self) -> Result<[Series<C>; 2]> {
        let n = self.truncation();
        let (p1, p2) = (self.p1.truncated(n), self.p2.truncated(n));
        let x = |l| Series::generator(p1.alphabet(), l, n, p1.ctx());
        Ok([conjugate(&p1, &x(X0))?, conjugate(&p2, &x(X1))?])
    }

    /// Worst group-like residual of the two components.
    pub fn group_like_residual(&self) -> ResidualReport {
        let (a, b) = (group_like_residual(&self.p1), group_like_residual(&self.p2));
        let (which, g) = if a.residual >= b.residual { ("p1", a) } else { ("p2", b) };
        let mut r = ResidualReport::new("group-like", g.residual, C::is_exact(), None, self.truncation());
        if g.residual > 0.0 {
            r = r.with_note(format!("worst component {which}"));
        }
        r
    }
}

impl<C: JsonCoeff> TAutPair<C> {
    pub fn to_json(&self) -> String {
        let env = PairEnvelope { p1: self.p1.to_envelope(), p2: self.p2.to_envelope() };
        serde_json::to_string_pretty(&env).expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let env: PairEnvelope = serde_json::from_str(s)?;
        TAutPair::new(Series::from_envelope(&env.p1)?, Series::from_envelope(&env.p2)?)
    }
}

/// `P(g)`, truncated at the smaller truncation.
pub fn taut_apply<C: Scalar>(pair: &TAutPair<C>, g: &Series<C>) -> Result<Series<C>> {
    require_x01(g)?;
    let n = pair.truncation().min(g.truncation());
    let [a, b] = pair.generator_images()?;
    substitute(&g.truncated(n), &[a.truncated(n), b.truncated(n)])
}

/// The pair of `P ∘ Q`: `(P(q1) p1, P(q2) p2)`.
pub fn taut_compose<C: Scalar>(p: &TAutPair<C>, q: &TAutPair<C>) -> Result<TAutPair<C>> {
    let n = p.truncation().min(q.truncation());
    let r1 = &taut_apply(p, &q.p1)? * &p.p1.truncated(n);
    let r2 = &taut_apply(p, &q.p2)? * &p.p2.truncated(n);
    TAutPair::new(r1, r2)
}

/// `(phi(X0/mu, X_inf/mu), e^{X_inf/2} phi(X1/mu, X_inf/mu))` with
/// `X_inf = -X0 - X1`.
pub fn kv_pair_from_associator<C: Scalar>(mu: &C, phi: &Series<C>) -> Result<TAutPair<C>> {
    require_x01(phi)?;
    let inv_mu = mu
        .inv()
        .filter(|_| !mu.is_zero())
        .ok_or_else(|| Error::Precondition("mu must be non-zero: the pair divides by mu".into()))?;
    let n = phi.truncation();
    let ctx = C::join(phi.ctx(), &mu.ctx());
    let phi = phi.map_coeffs(&ctx, Clone::clone);
    let x = |l| Series::generator(phi.alphabet(), l, n, &ctx);
    let x_inf = (&x(X0) + &x(X1)).scale_rational(&rat(-1, 1));
    let p1 = substitute(&phi, &[x(X0).scale(&inv_mu), x_inf.scale(&inv_mu)])?;
    let p2 =
        &exp(&x_inf.scale_rational(&rat(1, 2)))? * &substitute(&phi, &[x(X1).scale(&inv_mu), x_inf.scale(&inv_mu)])?;
    TAutPair::new(p1, p2)
}

fn difference_report<C: Scalar>(equation: &str, d: &Series<C>) -> ResidualReport {
    let (residual, word) = d.max_coeff();
    let word = word.map(|w| if w.is_empty() { "1".to_string() } else { d.format_word(&w) });
    ResidualReport::new(equation, residual, C::is_exact(), word, d.truncation())
}

fn exp_sum<C: Scalar>(n: usize, ctx: &C::Ctx) -> Result<Series<C>> {
    let a = crate::ncseries::Alphabet::x01();
    exp(&(&Series::generator(&a, X0, n, ctx) + &Series::generator(&a, X1, n, ctx)))
}

/// `P(e^X0) P(e^X1) - e^{X0+X1}`.
pub fn kv_main_residual<C: Scalar>(pair: &TAutPair<C>) -> Result<ResidualReport> {
    let n = pair.truncation();
    let ctx = pair.p1.ctx().clone();
    let [a, b] = pair.generator_images()?;
    let lhs = &exp(&a)? * &exp(&b)?;
    Ok(difference_report("kv-main", &(&lhs - &exp_sum(n, &ctx)?)))
}

/// `P(e^{X0+X1}) - e^{X0+X1}`.
pub fn krv_fixedpoint_residual<C: Scalar>(pair: &TAutPair<C>) -> Result<ResidualReport> {
    let n = pair.truncation();
    let ctx = pair.p1.ctx().clone();
    let [a, b] = pair.generator_images()?;
    Ok(difference_report("krv-fixed-point", &(&exp(&(&a + &b))? - &exp_sum(n, &ctx)?)))
}

/// The implementable part of KRV0 membership. The Jacobian condition is not
/// checked, so a passing pair only meets the necessary conditions.
#[derive(Clone, Debug, Serialize)]
pub struct Krv0Report {
    pub group_like: ResidualReport,
    pub fixed_point: ResidualReport,
    pub linear_terms_zero: bool,
    pub necessary_conditions_passed: bool,
    pub jacobian_condition: &'static str,
}

pub fn krv0_necessary_conditions<C: Scalar>(pair: &TAutPair<C>) -> Result<Krv0Report> {
    let tol = threshold_for::<C>(pair.p1.ctx());
    let group_like = pair.group_like_residual();
    let fixed_point = krv_fixedpoint_residual(pair)?;
    let linear_terms_zero =
        [&pair.p1, &pair.p2].iter().all(|p| p.terms().filter(|(w, _)| w.len() == 1).all(|(_, c)| c.magnitude() <= tol));
    let necessary_conditions_passed = group_like.passes(tol) && fixed_point.passes(tol) && linear_terms_zero;
    Ok(Krv0Report {
        group_like,
        fixed_point,
        linear_terms_zero,
        necessary_conditions_passed,
        jacobian_condition: "not checked",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncseries::Alphabet;
    use crate::scalar::Rational;

    fn gen(l: u8, n: usize) -> Series<Rational> {
        Series::generator(&Alphabet::x01(), l, n, &())
    }

    #[test]
    fn identity_pair() {
        let id = TAutPair::<Rational>::identity(4, &());
        let g = exp(&(&gen(X0, 4) * &gen(X1, 4))).unwrap();
        assert_eq!(taut_apply(&id, &g).unwrap(), g);
        assert_eq!(krv_fixedpoint_residual(&id).unwrap().residual, 0.0);
        let main = kv_main_residual(&id).unwrap();
        assert!(main.residual > 0.0);
        assert_eq!(main.offending_word.as_deref().map(|w| w.split(' ').count()), Some(2));
    }

    #[test]
    fn defining_equation_on_exponentials() {
        let n = 4;
        let p1 = exp(&(&gen(X0, n) * &gen(X1, n)).scale_rational(&rat(1, 3))).unwrap();
        let p2 = exp(&gen(X1, n).scale_rational(&rat(-2, 1))).unwrap();
        let pair = TAutPair::new(p1.clone(), p2).unwrap();
        let e0 = exp(&gen(X0, n)).unwrap();
        assert_eq!(taut_apply(&pair, &e0).unwrap(), conjugate(&p1, &e0).unwrap());
    }

    #[test]
    fn global_conjugation_fixes_the_sum() {
        let n = 4;
        let c = exp(&(&gen(X0, n) + &gen(X1, n))).unwrap();
        let pair = TAutPair::new(c.clone(), c).unwrap();
        assert_eq!(krv_fixedpoint_residual(&pair).unwrap().residual, 0.0);
    }

    #[test]
    fn zero_mu_is_refused() {
        let one = Series::<Rational>::one(&Alphabet::x01(), 3, &());
        assert!(kv_pair_from_associator(&rat(0, 1), &one).is_err());
    }
}
