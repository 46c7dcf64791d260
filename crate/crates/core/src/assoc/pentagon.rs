use crate::braid::{inject, BraidAlgebra, BraidSeries};
use crate::config::threshold_for;
use crate::error::{Error, Result};
use crate::ncseries::{group_like_residual, Alphabet, Series, TruncatedAlgebra};
use crate::report::ResidualReport;
use crate::scalar::Scalar;

pub(crate) fn require_x01<C: Scalar>(phi: &Series<C>) -> Result<()> {
    let x = Alphabet::x01();
    if phi.alphabet() != &x {
        return Err(Error::AlphabetMismatch { left: phi.alphabet().to_string(), right: x.to_string() });
    }
    Ok(())
}

/// `None` when `phi` is group-like within the ring's tolerance, otherwise a
/// rejection report for `equation`.
pub(crate) fn group_like_rejection<C: Scalar>(phi: &Series<C>, equation: &str) -> Option<ResidualReport> {
    let g = group_like_residual(phi);
    if g.passes(threshold_for::<C>(phi.ctx())) {
        return None;
    }
    let why = match (&g.note, &g.worst_pair) {
        (Some(n), _) => format!("input is not group-like: {n}"),
        (None, Some((u, v))) => format!(
            "input is not group-like: shuffle relation for ({}, {}) fails by {:e}",
            phi.format_word(u),
            phi.format_word(v),
            g.residual
        ),
        (None, None) => "input is not group-like".to_string(),
    };
    Some(ResidualReport::rejected(equation, phi.truncation(), why))
}

pub(crate) fn report_from_difference<C: Scalar>(equation: &str, diff: &BraidSeries<C>) -> ResidualReport {
    let (residual, word) = diff.max_coeff();
    let word = word.map(|w| {
        let s = diff.algebra().alphabet().format_word(&w);
        if s.is_empty() {
            "1".to_string()
        } else {
            s
        }
    });
    ResidualReport::new(equation, residual, C::is_exact(), word, diff.truncation())
}

/// `t_ij` sums in `U(a_n)`.
pub(crate) fn tsum<C: Scalar>(alg: &BraidAlgebra, pairs: &[(usize, usize)], n: usize, ctx: &C::Ctx) -> BraidSeries<C> {
    BraidSeries::sum_of(alg, pairs, n, ctx).expect("valid generators")
}

/// The five factors of the pentagon equation:
/// `phi(t12, t23+t24) phi(t13+t23, t34) = phi(t23, t34) phi(t12+t13, t24+t34) phi(t12, t23)`.
pub fn pentagon_factors<C: Scalar>(phi: &Series<C>) -> Result<[BraidSeries<C>; 5]> {
    require_x01(phi)?;
    let a4 = BraidAlgebra::a4();
    let n = phi.truncation();
    let ctx = phi.ctx().clone();
    let args: [(&[(usize, usize)], &[(usize, usize)]); 5] = [
        (&[(1, 2)], &[(2, 3), (2, 4)]),
        (&[(1, 3), (2, 3)], &[(3, 4)]),
        (&[(2, 3)], &[(3, 4)]),
        (&[(1, 2), (1, 3)], &[(2, 4), (3, 4)]),
        (&[(1, 2)], &[(2, 3)]),
    ];
    let mut out = Vec::with_capacity(5);
    for (a, b) in args {
        out.push(inject(phi, &tsum(&a4, a, n, &ctx), &tsum(&a4, b, n, &ctx))?);
    }
    Ok(out.try_into().expect("five factors"))
}

/// Left minus right side of the pentagon equation in `U(a_4)`.
pub fn pentagon_difference<C: Scalar>(phi: &Series<C>) -> Result<BraidSeries<C>> {
    let [l1, l2, r1, r2, r3] = pentagon_factors(phi)?;
    let (lhs, rhs) = rayon::join(|| l1.times(&l2), || r1.times(&r2).times(&r3));
    Ok(lhs.minus(&rhs))
}

/// Residual of the pentagon equation up to the truncation of `phi`.
pub fn pentagon_residual<C: Scalar>(phi: &Series<C>) -> Result<ResidualReport> {
    require_x01(phi)?;
    if let Some(r) = group_like_rejection(phi, "pentagon") {
        return Ok(r);
    }
    Ok(report_from_difference("pentagon", &pentagon_difference(phi)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncseries::{exp, X0, X1};
    use crate::scalar::{rat, Rational};

    fn x(n: usize, l: u8) -> Series<Rational> {
        Series::generator(&Alphabet::x01(), l, n, &())
    }

    #[test]
    fn unit_satisfies_pentagon() {
        let r = pentagon_residual(&Series::<Rational>::one(&Alphabet::x01(), 5, &())).unwrap();
        assert_eq!(r.residual, 0.0);
        assert!(r.passes(0.0));
    }

    #[test]
    fn linear_terms_break_the_pentagon() {
        let r = pentagon_residual(&exp(&x(3, X0)).unwrap()).unwrap();
        assert!(r.residual > 0.0);
        assert_eq!(r.offending_word.as_deref(), Some("t12"));
    }

    #[test]
    fn non_group_like_input_is_rejected() {
        let phi = &Series::one(&Alphabet::x01(), 2, &()) + &(&x(2, X0) * &x(2, X1));
        let r = pentagon_residual(&phi).unwrap();
        assert!(r.residual.is_infinite());
        assert!(r.note.unwrap().contains("not group-like"));
    }

    #[test]
    fn quadratic_bracket_satisfies_pentagon_to_degree_three() {
        // exp(c [X0, X1]) is the degree-2 truncation of an associator for
        // every c, and its pentagon defect first appears in degree 4
        let n = 4;
        let br = &(&x(n, X0) * &x(n, X1)) - &(&x(n, X1) * &x(n, X0));
        let phi = exp(&br.scale_rational(&rat(1, 24))).unwrap();
        let diff = pentagon_difference(&phi).unwrap();
        assert!(diff.as_series().truncated(3).is_zero());
        assert!(!diff.is_zero());
    }
}
