//! Regularised double shuffle relations and the group DMR0.

pub mod coproduct;

use std::collections::HashMap;

use serde::Serialize;

use crate::assoc::pentagon::{group_like_rejection, require_x01};
use crate::config::threshold_for;
use crate::error::Result;
use crate::ncseries::{exp, group_like_residual, Alphabet, Series, Word, X0, X1};
use crate::report::ResidualReport;
use crate::scalar::{rat, Scalar};

pub use coproduct::{delta_star, delta_star_coeff, stuffle, Coproduct};

/// Series in `Y_1, ..., Y_N` with `weight(Y_n) = n`.
pub type YSeries<C> = Series<C>;

fn y_alphabet(n: usize) -> Alphabet {
    Alphabet::y(n.max(1))
}

/// Image of `X0^{n_m-1} X1 ... X0^{n_1-1} X1` under `pi_Y`; `None` for
/// words ending in `X0`.
pub fn pi_y_word(w: &Word) -> Option<(Word, bool)> {
    if !w.is_empty() && w.last() != Some(X1) {
        return None;
    }
    let mut out = Word::empty();
    let mut run = 0u8;
    for &l in w.letters() {
        if l == X0 {
            run += 1;
        } else {
            out.push(run);
            run = 0;
        }
    }
    let negative = out.len() % 2 == 1;
    Some((out, negative))
}

/// `pi_Y`: kills words ending in `X0`, sends the others to signed Y-words.
pub fn pi_y<C: Scalar>(phi: &Series<C>) -> Result<YSeries<C>> {
    require_x01(phi)?;
    let n = phi.truncation();
    let mut out = Series::zero(&y_alphabet(n), n, phi.ctx());
    for (w, c) in phi.terms() {
        if let Some((y, negative)) = pi_y_word(w) {
            out.add_term(y, if negative { c.neg() } else { c.clone() });
        }
    }
    Ok(out)
}

/// `phi_* = exp(sum_n (-1)^n/n c_{X0^{n-1}X1}(phi) Y_1^n) pi_Y(phi)`.
pub fn star_regularize<C: Scalar>(phi: &Series<C>) -> Result<YSeries<C>> {
    let p = pi_y(phi)?;
    let n = phi.truncation();
    let a = p.alphabet().clone();
    let mut corr = Series::zero(&a, n, phi.ctx());
    let mut x0s = Word::empty();
    let mut y1n = Word::empty();
    for k in 1..=n {
        let mut w = x0s.clone();
        w.push(X1);
        y1n.push(0);
        let c = phi.coeff(&w);
        if !c.is_zero() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            corr.add_term(y1n.clone(), c.mul_rational(&rat(sign, k as i64)));
        }
        x0s.push(X0);
    }
    Ok(&exp(&corr)? * &p)
}

/// `e^{-b X1} phi e^{-a X0}` for `a = c_X0(phi)`, `b = c_X1(phi)`: a
/// group-like series without linear terms.
pub fn kill_linear<C: Scalar>(phi: &Series<C>) -> Result<Series<C>> {
    require_x01(phi)?;
    let n = phi.truncation();
    let a = phi.alphabet();
    let gen = |l: u8| Series::generator(a, l, n, phi.ctx()).scale(&phi.coeff(&Word::letter(l)).neg());
    Ok(&(&exp(&gen(X1))? * phi) * &exp(&gen(X0))?)
}

/// Options for the double shuffle checks.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct DmrOptions {
    /// Apply [`kill_linear`] before regularising.
    pub kill_linear: bool,
}

/// `max |<Delta_*(phi_*), u ⊗ v> - c_u(phi_*) c_v(phi_*)|` over Y-word pairs
/// of joint weight at most the truncation.
pub fn double_shuffle_residual<C: Scalar>(phi: &Series<C>, opts: DmrOptions) -> Result<ResidualReport> {
    require_x01(phi)?;
    if let Some(r) = group_like_rejection(phi, "double-shuffle") {
        return Ok(r);
    }
    let phi = if opts.kill_linear { kill_linear(phi)? } else { phi.clone() };
    let star = star_regularize(&phi)?;
    let n = phi.truncation();
    let a = star.alphabet().clone();

    let mut lhs: HashMap<(Word, Word), C> = HashMap::new();
    for (w, c) in star.terms() {
        for ((u, v), m) in delta_star(w).iter() {
            let t = c.mul_i64(*m as i64);
            lhs.entry((u.clone(), v.clone())).and_modify(|x| *x = x.add(&t)).or_insert(t);
        }
    }
    let words = a.words_up_to(n);
    let mut worst = (0.0_f64, None);
    for u in &words {
        let cu = star.coeff(u);
        for v in &words {
            if a.degree(u) + a.degree(v) > n {
                continue;
            }
            let rhs = cu.mul(&star.coeff(v));
            let d = match lhs.get(&(u.clone(), v.clone())) {
                Some(l) => l.sub(&rhs),
                None => rhs.neg(),
            };
            let m = d.magnitude();
            if m > worst.0 {
                worst = (m, Some((u.clone(), v.clone())));
            }
        }
    }
    let pair = worst.1.map(|(u, v)| {
        let f = |w: &Word| if w.is_empty() { "1".to_string() } else { a.format_word(w) };
        format!("{} ⊗ {}", f(&u), f(&v))
    });
    let mut r = ResidualReport::new("double-shuffle", worst.0, C::is_exact(), pair, n);
    if opts.kill_linear {
        r = r.with_note("linear terms killed before regularisation");
    }
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct DmrReport {
    pub group_like: ResidualReport,
    pub double_shuffle: ResidualReport,
    pub linear_terms_zero: bool,
    pub quadratic_terms_zero: bool,
    /// Group-like, double shuffle, no linear and no quadratic terms.
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// DMR0 membership.
pub fn is_dmr0<C: Scalar>(phi: &Series<C>, opts: DmrOptions) -> Result<DmrReport> {
    require_x01(phi)?;
    let tol = threshold_for::<C>(phi.ctx());
    let g = group_like_residual(phi);
    let group_like = ResidualReport::new(
        "group-like",
        g.residual,
        C::is_exact(),
        g.worst_pair.map(|(u, v)| format!("({}, {})", phi.format_word(&u), phi.format_word(&v))),
        phi.truncation(),
    );
    let double_shuffle = double_shuffle_residual(phi, opts)?;
    let vanish = |d: usize| phi.terms().filter(|(w, _)| w.len() == d).all(|(_, c)| c.magnitude() <= tol);
    let (linear, quadratic) = (vanish(1), vanish(2));
    let member = group_like.passes(tol) && double_shuffle.passes(tol) && linear && quadratic;
    let reason = if member {
        None
    } else if !group_like.passes(tol) {
        Some("not group-like".into())
    } else if !double_shuffle.passes(tol) {
        Some("double shuffle relations fail".into())
    } else if !linear {
        Some("linear terms are non-zero".into())
    } else {
        Some("quadratic terms are non-zero".into())
    };
    Ok(DmrReport {
        group_like,
        double_shuffle,
        linear_terms_zero: linear,
        quadratic_terms_zero: quadratic,
        member,
        reason,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn x(l: &[u8]) -> Word {
        Word::from_letters(l)
    }

    #[test]
    fn pi_y_examples() {
        assert_eq!(pi_y_word(&x(&[X1, X0])), None);
        // X0 X1 -> -Y2
        assert_eq!(pi_y_word(&x(&[X0, X1])), Some((Word::letter(1), true)));
        // X1 X1 -> +Y1 Y1
        assert_eq!(pi_y_word(&x(&[X1, X1])), Some((Word::from_letters(&[0, 0]), false)));
        assert_eq!(pi_y_word(&Word::empty()), Some((Word::empty(), false)));
    }

    #[test]
    fn unit_is_in_dmr0() {
        let one = Series::<Rational>::one(&Alphabet::x01(), 5, &());
        assert_eq!(star_regularize(&one).unwrap().len(), 1);
        let r = is_dmr0(&one, DmrOptions::default()).unwrap();
        assert!(r.member);
        assert_eq!(r.double_shuffle.residual, 0.0);
    }

    #[test]
    fn weight_two_regularisation_by_hand() {
        // phi = 1 + a X0X1 - a X1X0 (group-like at N=2):
        // exp((1/2) a Y1^2) (1 - a Y2) = 1 - a Y2 + (a/2) Y1 Y1
        let a = rat(3, 5);
        let mut phi = Series::<Rational>::one(&Alphabet::x01(), 2, &());
        phi.add_term(x(&[X0, X1]), a.clone());
        phi.add_term(x(&[X1, X0]), -a.clone());
        let s = star_regularize(&phi).unwrap();
        assert_eq!(s.coeff(&Word::letter(1)), -a.clone());
        assert_eq!(s.coeff(&Word::from_letters(&[0, 0])), &a / rat(2, 1));
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn kill_linear_removes_degree_one() {
        let a = Alphabet::x01();
        let g = |l| Series::<Rational>::generator(&a, l, 4, &());
        let lie = &g(X0).scale_rational(&rat(2, 1)) + &g(X1).scale_rational(&rat(-1, 3));
        let phi = exp(&(&lie + &(&(&g(X0) * &g(X1)) - &(&g(X1) * &g(X0))))).unwrap();
        let k = kill_linear(&phi).unwrap();
        assert!(k.terms().all(|(w, _)| w.len() != 1));
        assert_eq!(group_like_residual(&k).residual, 0.0);
    }
}
