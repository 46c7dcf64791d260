use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use super::input::{load_pair, load_series, AnyPair, MuArg};
use super::{Command, Context, GrtCommand, KvCommand, MzvCommand, PentagonCommand, ReportBuilder, SolveArgs};
use crate::assoc::{
    evaluate_relation, extract_relations, grt_mul, grt_mul_alt, hexagon_residuals, hexagon_residuals_adjoined, is_grt1,
    pentagon_residual, recover_mu, solve_pentagon, Normalization, SquareRoot,
};
use crate::dmr::{double_shuffle_residual, DmrOptions};
use crate::error::{Error, Result};
use crate::kv::{krv_fixedpoint_residual, kv_main_residual, kv_pair_from_associator};
use crate::mzv::{build_phi_kz, required_digits, zagier_sides, MzvIndex, MzvTable};
use crate::ncseries::{group_like_residual, AnySeries, JsonCoeff, Series, Word, X0, X1};
use crate::report::{ResidualReport, RunReport};
use crate::scalar::bigfloat::{bits_for_digits, parse_decimal, pi};
use crate::scalar::{BigComplex, Rational, Scalar};

macro_rules! with_series {
    ($any:expr, $s:ident => $body:expr) => {
        match $any {
            AnySeries::Rational($s) => $body,
            AnySeries::Complex($s) => $body,
            AnySeries::Symbolic($s) => $body,
        }
    };
}

macro_rules! with_pair {
    ($any:expr, $p:ident => $body:expr) => {
        match $any {
            AnyPair::Rational($p) => $body,
            AnyPair::Complex($p) => $body,
        }
    };
}

pub(crate) fn execute(ctx: &Context, command: Command) -> Result<RunReport> {
    let mut b;
    match command {
        Command::CheckPentagon { input } => {
            b = ReportBuilder::new("check-pentagon");
            let phi = open_series(&mut b, &input)?;
            with_series!(&phi, s => b.checks.push(pentagon_residual(s)?));
        }
        Command::CheckHexagon { input, mu } => {
            b = ReportBuilder::new("check-hexagon");
            let mu: MuArg = mu.parse()?;
            let phi = open_series(&mut b, &input)?;
            hexagon_checks(ctx, &mut b, &phi, &mu)?;
        }
        Command::CheckAssoc { input, mu } => {
            b = ReportBuilder::new("check-assoc");
            let mu: MuArg = mu.parse()?;
            let phi = open_series(&mut b, &input)?;
            with_series!(&phi, s => {
                b.checks.push(group_like_check(s));
                b.checks.push(pentagon_residual(s)?);
            });
            hexagon_checks(ctx, &mut b, &phi, &mu)?;
        }
        Command::CheckDmr { input, as_dmr0, kill_linear } => {
            b = ReportBuilder::new("check-dmr");
            let phi = open_series(&mut b, &input)?;
            let opts = DmrOptions { kill_linear };
            with_series!(&phi, s => {
                b.checks.push(group_like_check(s));
                b.checks.push(double_shuffle_residual(s, opts)?);
                if as_dmr0 {
                    b.checks.push(degree_check(s, 1, "linear-terms"));
                    b.checks.push(degree_check(s, 2, "quadratic-terms"));
                }
            });
            b.detail("kill_linear", json!(kill_linear));
            b.detail("membership", json!(if as_dmr0 { "DMR0" } else { "double shuffle" }));
        }
        Command::CheckGrt1 { input } => {
            b = ReportBuilder::new("check-grt1");
            let phi = open_series(&mut b, &input)?;
            with_series!(&phi, s => {
                let r = is_grt1(s)?;
                b.checks.push(r.group_like.clone());
                b.checks.push(r.pentagon.clone());
                b.checks.push(degree_check(s, 1, "linear-terms"));
                b.checks.push(degree_check(s, 2, "quadratic-terms"));
                b.detail("hexagons_mu0", serde_json::to_value(&r.hexagons_mu0)?);
                b.detail("member_by_definition", json!(r.member_by_definition));
                b.detail("characterisations_agree", json!(r.characterisations_agree));
                b.detail("linear_terms_forced_by_pentagon", json!(r.linear_terms_forced_by_pentagon));
            });
        }
        Command::Grt(GrtCommand::Mul { phi2, phi1, output }) => {
            b = ReportBuilder::new("grt mul");
            let a = open_series(&mut b, &phi2)?;
            let c = open_series(&mut b, &phi1)?;
            let product = match (&a, &c) {
                (AnySeries::Rational(x), AnySeries::Rational(y)) => AnySeries::Rational(grt_product(&mut b, x, y)?),
                (AnySeries::Complex(x), AnySeries::Complex(y)) => AnySeries::Complex(grt_product(&mut b, x, y)?),
                (AnySeries::Symbolic(x), AnySeries::Symbolic(y)) => AnySeries::Symbolic(grt_product(&mut b, x, y)?),
                _ => {
                    return Err(Error::Precondition(format!(
                        "cannot multiply a {} series with a {} series",
                        a.ring(),
                        c.ring()
                    )))
                }
            };
            emit(&mut b, output.as_deref(), &product.to_json())?;
        }
        Command::Pentagon(PentagonCommand::Solve(args)) => {
            b = ReportBuilder::new("pentagon solve");
            solve(&mut b, &args)?;
        }
        Command::Relations { degree, verify_kz } => {
            b = ReportBuilder::new("relations");
            relations(ctx, &mut b, degree, verify_kz)?;
        }
        Command::Mzv(MzvCommand::Eval { index }) => {
            b = ReportBuilder::new("mzv eval");
            let idx: MzvIndex = index.parse()?;
            let mut table = open_table(ctx)?;
            let v = table.real(&idx)?;
            table.save()?;
            b.precision = Some(ctx.digits);
            b.detail("index", json!(idx.to_string()));
            b.detail("weight", json!(idx.weight()));
            b.detail("value", json!(v.to_decimal_string(ctx.digits)));
        }
        Command::BuildKz { output } => {
            b = ReportBuilder::new("build-kz");
            build_kz(ctx, &mut b, output.as_deref())?;
        }
        Command::Zagier { a, b: bb } => {
            b = ReportBuilder::new("zagier");
            let mut table = open_table(ctx)?;
            let (lhs, rhs) = zagier_sides(a, bb, &mut table)?;
            table.save()?;
            let weight = 2 * (a + bb) + 3;
            b.precision = Some(ctx.digits);
            b.truncation = Some(weight);
            b.checks.push(ResidualReport::new(
                &format!("zagier(a={a},b={bb})"),
                lhs.sub(&rhs).abs().to_f64(),
                false,
                None,
                weight,
            ));
            b.detail("lhs", json!(lhs.to_decimal_string(ctx.digits)));
            b.detail("rhs", json!(rhs.to_decimal_string(ctx.digits)));
        }
        Command::Kv(KvCommand::FromAssoc { input, mu, output }) => {
            b = ReportBuilder::new("kv from-assoc");
            let mu: MuArg = mu.parse()?;
            let phi = open_series(&mut b, &input)?;
            kv_from_assoc(ctx, &mut b, &phi, &mu, output.as_deref())?;
        }
        Command::Kv(KvCommand::CheckMain { input }) => {
            b = ReportBuilder::new("kv check-main");
            let pair = open_pair(&mut b, &input)?;
            with_pair!(&pair, p => {
                b.checks.push(p.group_like_residual());
                b.checks.push(kv_main_residual(p)?);
            });
        }
        Command::Kv(KvCommand::CheckKrv { input }) => {
            b = ReportBuilder::new("kv check-krv");
            let pair = open_pair(&mut b, &input)?;
            with_pair!(&pair, p => {
                b.checks.push(p.group_like_residual());
                b.checks.push(krv_fixedpoint_residual(p)?);
                let (l1, l2) = (degree_check(&p.p1, 1, "linear-terms"), degree_check(&p.p2, 1, "linear-terms"));
                b.checks.push(if l1.residual >= l2.residual { l1.with_note("p1") } else { l2.with_note("p2") });
            });
            b.detail("jacobian_condition", json!("not checked"));
            b.detail("scope", json!("necessary conditions for KRV0 only"));
        }
        Command::Selftest => {
            b = ReportBuilder::new("selftest");
            b.checks = super::selftest_checks()?;
        }
    }
    Ok(b.finish(ctx))
}

fn open_series(b: &mut ReportBuilder, path: &Path) -> Result<AnySeries> {
    let (s, digest) = load_series(path)?;
    b.inputs.push(digest);
    b.truncation = Some(b.truncation.map_or(s.truncation(), |t| t.min(s.truncation())));
    b.ring = Some(s.ring().to_string());
    if let AnySeries::Complex(c) = &s {
        b.precision = Some(b.precision.map_or(*c.ctx(), |p| p.min(*c.ctx())));
    }
    Ok(s)
}

fn open_pair(b: &mut ReportBuilder, path: &Path) -> Result<AnyPair> {
    let (p, digest) = load_pair(path)?;
    b.inputs.push(digest);
    match &p {
        AnyPair::Rational(q) => {
            b.ring = Some("rational".into());
            b.truncation = Some(q.truncation());
        }
        AnyPair::Complex(q) => {
            b.ring = Some("complex".into());
            b.truncation = Some(q.truncation());
            b.precision = Some(*q.p1.ctx().min(q.p2.ctx()));
        }
    }
    Ok(p)
}

fn open_table(ctx: &Context) -> Result<MzvTable> {
    match &ctx.cache {
        Some(path) => MzvTable::with_cache(ctx.digits, path),
        None => Ok(MzvTable::new(ctx.digits)),
    }
}

/// Writes `text` to `path`, or embeds it in the report when no path is given.
fn emit(b: &mut ReportBuilder, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            fs::write(p, text)?;
            b.detail("output", json!(p.display().to_string()));
        }
        None => b.detail("result", serde_json::from_str::<Value>(text)?),
    }
    Ok(())
}

pub(crate) fn group_like_check<C: Scalar>(phi: &Series<C>) -> ResidualReport {
    let g = group_like_residual(phi);
    let word = g.worst_pair.map(|(u, v)| format!("({}, {})", phi.format_word(&u), phi.format_word(&v)));
    let r = ResidualReport::new("group-like", g.residual, C::is_exact(), word, phi.truncation());
    match g.note {
        Some(n) => r.with_note(n),
        None => r,
    }
}

/// Largest coefficient of degree `d`, reported as a residual against zero.
pub(crate) fn degree_check<C: Scalar>(phi: &Series<C>, d: usize, name: &str) -> ResidualReport {
    let mut worst: (f64, Option<&Word>) = (0.0, None);
    for (w, c) in phi.terms().filter(|(w, _)| phi.degree(w) == d) {
        let m = c.magnitude();
        if m > worst.0 {
            worst = (m, Some(w));
        }
    }
    ResidualReport::new(name, worst.0, C::is_exact(), worst.1.map(|w| phi.format_word(w)), phi.truncation())
}

fn hexagon_pair<C: Scalar>(mu: &C, phi: &Series<C>, note: String) -> Result<(String, [ResidualReport; 2])> {
    let (a, b) = hexagon_residuals(mu, phi)?;
    Ok((note.clone(), [a.with_note(note.clone()), b.with_note(note)]))
}

/// Hexagon reports per sign of `mu`, labelled by that sign.
type SignedHexagons = Vec<(String, [ResidualReport; 2])>;
/// `Err` carries the reason `mu` could not be recovered.
type AutoHexagons = std::result::Result<Option<SignedHexagons>, String>;

/// Hexagons at `±root` of the recovered `mu`; `None` when the root is not
/// in the ring.
fn hexagons_auto<C: SquareRoot + std::fmt::Display>(phi: &Series<C>) -> Result<AutoHexagons> {
    let mu = match recover_mu(phi) {
        Ok(m) => m,
        Err(Error::Precondition(why)) => return Ok(Err(why)),
        Err(e) => return Err(e),
    };
    let Some(root) = mu.root else { return Ok(Ok(None)) };
    let mut out = vec![hexagon_pair(&root, phi, format!("mu = {root}"))?];
    if !root.is_zero() {
        let neg = root.neg();
        out.push(hexagon_pair(&neg, phi, format!("mu = {neg}"))?);
    }
    Ok(Ok(Some(out)))
}

/// Keeps the signs of `mu` at which both hexagons pass; all of them when
/// none does.
fn select_signs(ctx: &Context, b: &mut ReportBuilder, candidates: SignedHexagons) {
    let tol = ctx.threshold_for(b.precision);
    let (pass, fail): (Vec<_>, Vec<_>) = candidates.into_iter().partition(|(_, [x, y])| x.passes(tol) && y.passes(tol));
    b.detail("mu_passing", json!(pass.iter().map(|(m, _)| m.clone()).collect::<Vec<_>>()));
    if pass.is_empty() {
        b.checks.extend(fail.into_iter().flat_map(|(_, r)| r));
    } else {
        b.detail("mu_failing", json!(fail.iter().map(|(m, _)| m.clone()).collect::<Vec<_>>()));
        b.checks.extend(pass.into_iter().flat_map(|(_, r)| r));
    }
}

fn reject_hexagons(b: &mut ReportBuilder, truncation: usize, why: String) {
    b.checks.push(ResidualReport::rejected("hexagon-1", truncation, why.clone()));
    b.checks.push(ResidualReport::rejected("hexagon-2", truncation, why));
}

fn hexagon_checks(ctx: &Context, b: &mut ReportBuilder, phi: &AnySeries, mu: &MuArg) -> Result<()> {
    let n = phi.truncation();
    if mu == &MuArg::Auto {
        let found = match phi {
            AnySeries::Rational(s) => match hexagons_auto(s)? {
                Ok(None) => {
                    let sq = crate::assoc::mu_squared(s);
                    b.detail("mu", json!(format!("±sqrt({sq}) (adjoined)")));
                    let (x, y) = hexagon_residuals_adjoined(s, &sq)?;
                    b.checks.push(x);
                    b.checks.push(y);
                    return Ok(());
                }
                other => other,
            },
            AnySeries::Complex(s) => hexagons_auto(s)?,
            AnySeries::Symbolic(s) => match hexagons_auto(s)? {
                Ok(None) => {
                    return Err(Error::NotRepresentable(format!(
                        "mu = ±sqrt({}) over symbolic coefficients; pass --mu",
                        crate::assoc::mu_squared(s)
                    )))
                }
                other => other,
            },
        };
        match found {
            Ok(Some(c)) => select_signs(ctx, b, c),
            Ok(None) => unreachable!("handled per ring"),
            Err(why) => reject_hexagons(b, n, why),
        }
        return Ok(());
    }
    let pair = match (phi, mu.to_rational()) {
        (AnySeries::Rational(s), Some(q)) => hexagon_pair(&q, s, format!("mu = {q}"))?,
        (AnySeries::Symbolic(s), Some(q)) => hexagon_pair(&Scalar::from_rational(&q, &()), s, format!("mu = {q}"))?,
        (AnySeries::Symbolic(_), None) => {
            return Err(Error::NotRepresentable("a non-rational mu with symbolic coefficients".into()))
        }
        (s, _) => {
            let digits = b.precision.unwrap_or(ctx.digits);
            b.precision = Some(digits);
            let c = s.to_complex(digits)?;
            let m = mu.to_complex(digits).expect("explicit mu");
            hexagon_pair(&m, &c, format!("mu = {m}"))?
        }
    };
    b.checks.extend(pair.1);
    Ok(())
}

fn grt_product<C: Scalar>(b: &mut ReportBuilder, phi2: &Series<C>, phi1: &Series<C>) -> Result<Series<C>> {
    let p = grt_mul(phi2, phi1)?;
    let q = grt_mul_alt(phi2, phi1)?;
    let (residual, word) = (&p - &q).max_coeff();
    b.checks.push(ResidualReport::new(
        "grt-mul-forms-agree",
        residual,
        C::is_exact(),
        word.map(|w| p.format_word(&w)),
        p.truncation(),
    ));
    Ok(p)
}

fn rational_arg(s: &str, what: &str) -> Result<Rational> {
    parse_decimal(s).ok_or_else(|| Error::Parse(format!("bad {what} `{s}`")))
}

fn solve(b: &mut ReportBuilder, args: &SolveArgs) -> Result<()> {
    let param = rational_arg(&args.param, "--param")?;
    let quadratic = rational_arg(&args.quadratic, "--quadratic")?;
    let normalization: Normalization = args.normalization.into();
    let x0x1 = Word::from_letters(&[X0, X1]);
    let mut choose_err = None;
    let (phi, steps) = solve_pentagon(args.degree, normalization, |ext| {
        let k = ext.dimension().unwrap_or(0);
        if ext.degree == 2 && normalization == Normalization::Free && k == 1 {
            // solve for the parameter giving the requested [X0,X1] coefficient
            let at = |t: i64| {
                ext.point(&[Rational::from_integer(t.into())]).and_then(|c| ext.extend(&c)).map(|s| s.coeff(&x0x1))
            };
            match (at(0), at(1)) {
                (Ok(c0), Ok(c1)) if c1 != c0 => return vec![(&quadratic - &c0) / (&c1 - &c0)],
                (Err(e), _) | (_, Err(e)) => choose_err = Some(e),
                _ => {}
            }
        }
        vec![param.clone(); k]
    })?;
    if let Some(e) = choose_err {
        return Err(e);
    }
    b.ring = Some("rational".into());
    b.truncation = Some(args.degree);
    b.checks.push(group_like_check(&phi));
    b.checks.push(pentagon_residual(&phi)?);
    b.detail("normalization", serde_json::to_value(normalization)?);
    b.detail("dimensions", json!(steps.iter().map(|e| e.dimension()).collect::<Vec<_>>()));
    let mu = recover_mu(&phi)?;
    b.detail("mu", json!(mu.to_string()));
    emit(b, args.output.as_deref(), &phi.to_json())
}

fn relations(ctx: &Context, b: &mut ReportBuilder, degree: usize, verify_kz: bool) -> Result<()> {
    let rels = extract_relations(degree)?;
    b.ring = Some("symbolic".into());
    b.truncation = Some(degree);
    b.detail("count", json!(rels.len()));
    b.detail("relations", serde_json::to_value(&rels)?);
    if verify_kz {
        let mut table = open_table(ctx)?;
        let kz = build_phi_kz(degree.max(2), ctx.digits, &mut table)?;
        table.save()?;
        let mut worst = (0.0_f64, None);
        for r in &rels {
            let m = evaluate_relation(r, &kz.phi)?.magnitude();
            if m > worst.0 || worst.1.is_none() {
                worst = (m.max(worst.0), Some(r.word.clone()));
            }
        }
        b.ring = Some("complex".into());
        b.precision = Some(ctx.digits);
        b.checks.push(ResidualReport::new("relations-on-kz", worst.0, false, worst.1, degree));
    }
    Ok(())
}

fn build_kz(ctx: &Context, b: &mut ReportBuilder, output: Option<&Path>) -> Result<()> {
    let n = ctx.weight();
    let mut table = open_table(ctx)?;
    let kz = build_phi_kz(n, ctx.digits, &mut table)?;
    table.save()?;
    b.ring = Some("complex".into());
    b.precision = Some(ctx.digits);
    b.truncation = Some(n);
    b.checks.push(group_like_check(&kz.phi));
    if n >= 2 {
        // the quadratic part is zeta(2)[X0,X1], compared against pi^2/6
        let bits = bits_for_digits(ctx.digits);
        let p = pi(bits);
        let z2 = BigComplex::from_real(p.mul(&p).div_bigint(&6.into()), ctx.digits);
        let c01 = kz.phi.coeff(&Word::from_letters(&[X0, X1])).add(&z2).magnitude();
        let c10 = kz.phi.coeff(&Word::from_letters(&[X1, X0])).sub(&z2).magnitude();
        let (r, w) = if c01 >= c10 { (c01, "X0 X1") } else { (c10, "X1 X0") };
        b.checks.push(ResidualReport::new("quadratic-part", r, false, Some(w.into()), n));
    }
    b.detail("mu", json!("2pii"));
    b.detail("required_digits", json!(required_digits(n)));
    b.detail("terms", json!(kz.phi.len()));
    emit(b, output, &kz.phi.to_json())
}

fn pair_checks<C: Scalar + JsonCoeff>(
    b: &mut ReportBuilder,
    mu: &C,
    phi: &Series<C>,
    output: Option<&Path>,
) -> Result<()> {
    b.checks.push(group_like_check(phi));
    b.checks.push(pentagon_residual(phi)?);
    let (_, hex) = hexagon_pair(mu, phi, "associator at the given mu".into())?;
    b.checks.extend(hex);
    let pair = kv_pair_from_associator(mu, phi)?;
    b.checks.push(pair.group_like_residual());
    b.checks.push(kv_main_residual(&pair)?);
    emit(b, output, &pair.to_json())
}

fn kv_from_assoc(
    ctx: &Context,
    b: &mut ReportBuilder,
    phi: &AnySeries,
    mu: &MuArg,
    output: Option<&Path>,
) -> Result<()> {
    if let AnySeries::Symbolic(_) = phi {
        return Err(Error::NotRepresentable("KV pairs over symbolic coefficients".into()));
    }
    if let AnySeries::Rational(s) = phi {
        let exact = match mu {
            MuArg::Auto => recover_mu(s)?.root,
            m => m.to_rational(),
        };
        if let Some(q) = exact {
            b.detail("mu", json!(q.to_string()));
            return pair_checks(b, &q, s, output);
        }
    }
    let digits = b.precision.unwrap_or(ctx.digits);
    b.precision = Some(digits);
    b.ring = Some("complex".into());
    let c = phi.to_complex(digits)?;
    let m = match mu {
        MuArg::Auto => recover_mu(&c)?.root.expect("complex roots exist"),
        m => m.to_complex(digits).expect("explicit mu"),
    };
    b.detail("mu", json!(m.to_string()));
    pair_checks(b, &m, &c, output)
}
