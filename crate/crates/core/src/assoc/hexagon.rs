use crate::assoc::pentagon::{group_like_rejection, report_from_difference, require_x01, tsum};
use crate::braid::{inject, BraidAlgebra, BraidSeries};
use crate::error::Result;
use crate::ncseries::{exp, inverse, Series, TruncatedAlgebra};
use crate::report::ResidualReport;
use crate::scalar::{rat, Rational, Scalar, SymbolicPoly};

/// Left minus right sides of the two hexagon equations in `U(a_3)`:
///
/// `exp(mu(t13+t23)/2) = phi(t13,t12) exp(mu t13/2) phi(t13,t23)^-1 exp(mu t23/2) phi(t12,t23)`
///
/// `exp(mu(t12+t13)/2) = phi(t23,t13)^-1 exp(mu t13/2) phi(t12,t13) exp(mu t12/2) phi(t12,t23)^-1`
pub fn hexagon_differences<C: Scalar>(mu: &C, phi: &Series<C>) -> Result<(BraidSeries<C>, BraidSeries<C>)> {
    require_x01(phi)?;
    let a3 = BraidAlgebra::a3();
    let n = phi.truncation();
    let ctx = C::join(phi.ctx(), &mu.ctx());
    let phi = phi.map_coeffs(&ctx, Clone::clone);
    let t = |pairs: &[(usize, usize)]| tsum::<C>(&a3, pairs, n, &ctx);
    let half_mu = mu.mul_rational(&rat(1, 2));
    let e = |pairs: &[(usize, usize)]| exp(&t(pairs).scaled(&half_mu));
    let (t12, t13, t23) = (t(&[(1, 2)]), t(&[(1, 3)]), t(&[(2, 3)]));

    let phi_13_12 = inject(&phi, &t13, &t12)?;
    let phi_13_23 = inject(&phi, &t13, &t23)?;
    let phi_12_23 = inject(&phi, &t12, &t23)?;
    let phi_23_13 = inject(&phi, &t23, &t13)?;
    let phi_12_13 = inject(&phi, &t12, &t13)?;

    let lhs1 = e(&[(1, 3), (2, 3)])?;
    let rhs1 = phi_13_12.times(&e(&[(1, 3)])?).times(&inverse(&phi_13_23)?).times(&e(&[(2, 3)])?).times(&phi_12_23);
    let lhs2 = e(&[(1, 2), (1, 3)])?;
    let rhs2 =
        inverse(&phi_23_13)?.times(&e(&[(1, 3)])?).times(&phi_12_13).times(&e(&[(1, 2)])?).times(&inverse(&phi_12_23)?);
    Ok((lhs1.minus(&rhs1), lhs2.minus(&rhs2)))
}

/// Residuals of both hexagons at the given `mu`.
pub fn hexagon_residuals<C: Scalar>(mu: &C, phi: &Series<C>) -> Result<(ResidualReport, ResidualReport)> {
    require_x01(phi)?;
    if let Some(r) = group_like_rejection(phi, "hexagon-1") {
        let mut r2 = r.clone();
        r2.equation = "hexagon-2".into();
        return Ok((r, r2));
    }
    let (d1, d2) = hexagon_differences(mu, phi)?;
    Ok((report_from_difference("hexagon-1", &d1), report_from_difference("hexagon-2", &d2)))
}

/// Hexagon residuals for a rational `phi` and `mu = sqrt(mu_squared)`
/// adjoined symbolically: the computation runs over `Q[mu]` and every
/// coefficient is reduced modulo `mu^2 - mu_squared`. A zero residual holds
/// for both square roots.
pub fn hexagon_residuals_adjoined(
    phi: &Series<Rational>,
    mu_squared: &Rational,
) -> Result<(ResidualReport, ResidualReport)> {
    require_x01(phi)?;
    if let Some(r) = group_like_rejection(phi, "hexagon-1") {
        let mut r2 = r.clone();
        r2.equation = "hexagon-2".into();
        return Ok((r, r2));
    }
    let sym = phi.map_coeffs(&(), |q| SymbolicPoly::constant(q.clone()));
    let (d1, d2) = hexagon_differences(&SymbolicPoly::var("mu"), &sym)?;
    let square = SymbolicPoly::constant(mu_squared.clone());
    let reduce = |d: &BraidSeries<SymbolicPoly>| {
        let s = d.as_series().map_coeffs(&(), |p| p.reduce_square("mu", &square));
        BraidSeries::from_normal(d.algebra(), s).expect("normal words stay normal")
    };
    let note = format!("mu^2 = {mu_squared} adjoined symbolically");
    Ok((
        report_from_difference("hexagon-1", &reduce(&d1)).with_note(note.clone()),
        report_from_difference("hexagon-2", &reduce(&d2)).with_note(note),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncseries::{grouplike_from_lyndon, Alphabet};

    #[test]
    fn trivial_pair() {
        let one = Series::<Rational>::one(&Alphabet::x01(), 4, &());
        let (a, b) = hexagon_residuals(&rat(0, 1), &one).unwrap();
        assert_eq!((a.residual, b.residual), (0.0, 0.0));
    }

    #[test]
    fn degree_two_constraint_is_mu_squared_over_24() {
        // generic group-like phi with no linear terms, truncated at 2
        let phi = grouplike_from_lyndon::<SymbolicPoly>(&Alphabet::x01(), 2, &(), |w| {
            if w.len() == 2 {
                SymbolicPoly::var("c")
            } else {
                SymbolicPoly::constant(rat(0, 1))
            }
        });
        let (d1, d2) = hexagon_differences(&SymbolicPoly::var("mu"), &phi).unwrap();
        let target = SymbolicPoly::parse("c - 1/24*mu^2").unwrap();
        for d in [d1, d2] {
            assert!(!d.is_zero());
            for (w, p) in d.as_series().terms() {
                assert_eq!(w.len(), 2, "only degree 2 survives");
                // every coefficient is a rational multiple of c - mu^2/24
                let q = p.terms().next().map(|(m, c)| (m.clone(), c.clone())).unwrap();
                let (_, lead) = target.terms().find(|(m, _)| **m == q.0).expect("same monomials");
                let scaled = target.mul_rational(&(&q.1 / lead));
                assert_eq!(p, &scaled);
            }
        }
    }
}
