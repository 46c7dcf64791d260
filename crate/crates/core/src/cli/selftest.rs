//! Exact-arithmetic property suite behind `grtkit selftest`.

use super::commands::group_like_check;
use crate::assoc::{
    evaluate_relation, extract_relations, grt_inverse, grt_mul, grt_mul_alt, hexagon_residuals,
    hexagons_at_recovered_mu, pentagon_residual, solve_pentagon, Normalization,
};
use crate::dmr::{double_shuffle_residual, DmrOptions};
use crate::error::Result;
use crate::kv::{krv_fixedpoint_residual, kv_pair_from_associator, taut_compose, TAutPair};
use crate::ncseries::{exp, log, Alphabet, Series, Word, X0, X1};
use crate::report::ResidualReport;
use crate::scalar::{rat, Rational, Scalar};

fn diff(name: &str, a: &Series<Rational>, b: &Series<Rational>) -> ResidualReport {
    let (r, w) = (a - b).max_coeff();
    ResidualReport::new(name, r, true, w.map(|w| a.format_word(&w)), a.truncation())
}

fn named(r: ResidualReport, name: &str) -> ResidualReport {
    ResidualReport { equation: format!("{name}: {}", r.equation), ..r }
}

pub fn selftest_checks() -> Result<Vec<ResidualReport>> {
    let n = 5;
    let a = Alphabet::x01();
    let one = Series::<Rational>::one(&a, n, &());
    let zero = rat(0, 1);
    let mut out = Vec::new();

    let (phi, _) = solve_pentagon(n, Normalization::Grt1, |e| vec![rat(1, 1); e.dimension().unwrap_or(0)])?;
    let (psi, _) = solve_pentagon(n, Normalization::Grt1, |e| vec![rat(-2, 3); e.dimension().unwrap_or(0)])?;
    for (name, s) in [("unit", &one), ("grt1 solution", &phi)] {
        out.push(named(group_like_check(s), name));
        out.push(named(pentagon_residual(s)?, name));
        let (h1, h2) = hexagon_residuals(&zero, s)?;
        out.push(named(h1, name));
        out.push(named(h2, name));
        out.push(named(double_shuffle_residual(s, DmrOptions::default())?, name));
    }

    // c_{X0X1} = 1/24 gives mu = 1 whatever the kernel scaling
    let x0x1 = Word::from_letters(&[X0, X1]);
    let mut failure = None;
    let (free, _) = solve_pentagon(4, Normalization::Free, |e| {
        let k = e.dimension().unwrap_or(0);
        if e.degree != 2 {
            return vec![rat(1, 1); k];
        }
        let at = |t: i64| e.point(&[rat(t, 1)]).and_then(|c| e.extend(&c)).map(|s| s.coeff(&x0x1));
        match (at(0), at(1)) {
            (Ok(c0), Ok(c1)) => vec![(rat(1, 24) - &c0) / (c1 - &c0)],
            (Err(err), _) | (_, Err(err)) => {
                failure = Some(err);
                vec![rat(0, 1); k]
            }
        }
    })?;
    if let Some(err) = failure {
        return Err(err);
    }
    for r in hexagons_at_recovered_mu(&free)? {
        out.push(named(r, "free solution"));
    }

    let p = grt_mul(&phi, &psi)?;
    out.push(diff("grt product forms agree", &p, &grt_mul_alt(&phi, &psi)?));
    out.push(named(pentagon_residual(&p)?, "grt product"));
    let l = grt_mul(&grt_mul(&psi, &phi)?, &p)?;
    let r = grt_mul(&psi, &grt_mul(&phi, &p)?)?;
    out.push(diff("grt associativity", &l, &r));
    out.push(diff("grt inverse", &grt_mul(&grt_inverse(&phi)?, &phi)?, &one));

    out.push(diff("exp log", &exp(&log(&phi)?)?, &phi));

    let rels = extract_relations(3)?;
    let worst = rels.iter().map(|r| evaluate_relation(r, &phi.truncated(3))).collect::<Result<Vec<_>>>()?;
    let bad = worst.iter().position(|v| !Scalar::is_zero(v));
    out.push(ResidualReport::new(
        "pentagon relations on a solution",
        bad.map_or(0.0, |i| worst[i].magnitude()),
        true,
        bad.map(|i| rels[i].word.clone()),
        3,
    ));

    let x = |l| Series::<Rational>::generator(&a, l, n, &());
    let pair = kv_pair_from_associator(&rat(1, 1), &free)?;
    let id = TAutPair::identity(4, &());
    let composed = taut_compose(&pair, &id)?;
    out.push(diff("taut identity p1", &composed.p1, &pair.p1));
    out.push(diff("taut identity p2", &composed.p2, &pair.p2));
    let sum = exp(&(&x(X0) + &x(X1)))?;
    let global = TAutPair::new(sum.clone(), sum)?;
    out.push(named(krv_fixedpoint_residual(&global)?, "global conjugation"));
    Ok(out)
}
