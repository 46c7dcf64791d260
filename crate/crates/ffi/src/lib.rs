//! C ABI for grtkit.
//!
//! Series cross the boundary as opaque `GrtSeries` handles built from and
//! rendered to the JSON exchange format. Every function returns a
//! [`GrtStatus`]; on failure the message is available from
//! [`grt_last_error`] on the same thread. Strings returned through `char**`
//! are owned by the caller and released with [`grt_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use grtkit::assoc::{hexagon_residuals, hexagons_at_recovered_mu, is_grt1, pentagon_residual, recover_mu};
use grtkit::cli::MuArg;
use grtkit::dmr::{is_dmr0, DmrOptions};
use grtkit::mzv::{build_phi_kz, MzvIndex, MzvTable};
use grtkit::ncseries::AnySeries;
use grtkit::report::ResidualReport;
use grtkit::Error;

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrtStatus {
    /// The call succeeded and, for checks, every residual passed.
    GrtOk = 0,
    /// The call succeeded but a check failed.
    GrtCheckFailed = 1,
    GrtNullPointer = 2,
    GrtInvalidUtf8 = 3,
    GrtParseError = 4,
    GrtAlphabetMismatch = 5,
    GrtPrecondition = 6,
    GrtPrecisionTooLow = 7,
    GrtNotRepresentable = 8,
    GrtIoError = 9,
    GrtPanic = 10,
}

/// Opaque series handle.
pub struct GrtSeries {
    inner: AnySeries,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> GrtStatus {
    match e {
        Error::AlphabetMismatch { .. } | Error::UnknownGenerator(..) => GrtStatus::GrtAlphabetMismatch,
        Error::Precondition(..) => GrtStatus::GrtPrecondition,
        Error::NotRepresentable(..) => GrtStatus::GrtNotRepresentable,
        Error::PrecisionTooLow { .. } => GrtStatus::GrtPrecisionTooLow,
        Error::Parse(..) | Error::Json(..) => GrtStatus::GrtParseError,
        Error::Io(..) => GrtStatus::GrtIoError,
    }
}

enum Fail {
    Status(GrtStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<GrtStatus, Fail>) -> GrtStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            GrtStatus::GrtPanic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail::Status(GrtStatus::GrtNullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Status(GrtStatus::GrtInvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn series_arg<'a>(p: *const GrtSeries, what: &str) -> Result<&'a AnySeries, Fail> {
    p.as_ref().map(|s| &s.inner).ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail::Status(GrtStatus::GrtParseError, "string contains NUL".into()))?;
    put(out, c.into_raw(), "out")
}

fn verdict(checks: &[ResidualReport], threshold: f64) -> GrtStatus {
    if checks.iter().all(|c| c.passes(threshold)) {
        GrtStatus::GrtOk
    } else {
        GrtStatus::GrtCheckFailed
    }
}

fn worst(checks: &[ResidualReport]) -> f64 {
    checks.iter().map(|c| c.residual).fold(0.0, f64::max)
}

fn threshold(s: &AnySeries) -> f64 {
    match s {
        AnySeries::Complex(c) => grtkit::config::default_threshold(*c.ctx()),
        _ => 0.0,
    }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn grt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn grt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn grt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a series from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_series_from_json(json: *const c_char, out: *mut *mut GrtSeries) -> GrtStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let inner = AnySeries::from_json(text)?;
        put(out, Box::into_raw(Box::new(GrtSeries { inner })), "out")?;
        Ok(GrtStatus::GrtOk)
    })
}

/// Renders a series as JSON.
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_series_to_json(series: *const GrtSeries, out: *mut *mut c_char) -> GrtStatus {
    guard(|| {
        let s = series_arg(series, "series")?;
        put_string(out, s.to_json())?;
        Ok(GrtStatus::GrtOk)
    })
}

/// Truncation degree of a series.
///
/// # Safety
/// `series` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_series_truncation(series: *const GrtSeries, out: *mut usize) -> GrtStatus {
    guard(|| {
        put(out, series_arg(series, "series")?.truncation(), "out")?;
        Ok(GrtStatus::GrtOk)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `series` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn grt_series_free(series: *mut GrtSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Pentagon residual. Returns `GrtOk` when it passes, `GrtCheckFailed`
/// otherwise; the residual is written either way.
///
/// # Safety
/// `series` must be a live handle; `residual` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_check_pentagon(series: *const GrtSeries, residual: *mut f64) -> GrtStatus {
    guard(|| {
        let s = series_arg(series, "series")?;
        let r = match s {
            AnySeries::Rational(x) => pentagon_residual(x)?,
            AnySeries::Complex(x) => pentagon_residual(x)?,
            AnySeries::Symbolic(x) => pentagon_residual(x)?,
        };
        put(residual, r.residual, "residual")?;
        Ok(verdict(&[r], threshold(s)))
    })
}

/// Largest residual of the two hexagons. `mu` is `auto`, `2pii`, `-2pii`,
/// a rational or `re,im`; `auto` accepts either sign of the recovered root.
///
/// # Safety
/// `series` must be a live handle, `mu` a NUL-terminated string and
/// `residual` writable.
#[no_mangle]
pub unsafe extern "C" fn grt_check_hexagons(
    series: *const GrtSeries,
    mu: *const c_char,
    residual: *mut f64,
) -> GrtStatus {
    guard(|| {
        let s = series_arg(series, "series")?;
        let mu: MuArg = str_arg(mu, "mu")?.parse()?;
        let tol = threshold(s);
        let checks = match (s, &mu) {
            (AnySeries::Rational(x), MuArg::Auto) => {
                let all = hexagons_at_recovered_mu(x)?;
                all.chunks(2).find(|c| verdict(c, tol) == GrtStatus::GrtOk).unwrap_or(&all).to_vec()
            }
            (AnySeries::Rational(x), m) if m.to_rational().is_some() => {
                let (a, b) = hexagon_residuals(&m.to_rational().expect("rational"), x)?;
                vec![a, b]
            }
            (AnySeries::Symbolic(_), _) => {
                return Err(Error::NotRepresentable("hexagons of symbolic series through the C ABI".into()).into())
            }
            (other, m) => {
                let digits = match other {
                    AnySeries::Complex(c) => *c.ctx(),
                    _ => grtkit::config::DEFAULT_DIGITS,
                };
                let c = other.to_complex(digits)?;
                let roots = match m.to_complex(digits) {
                    Some(v) => vec![v],
                    None => {
                        let r = recover_mu(&c)?.root.expect("complex roots exist");
                        vec![r.clone(), grtkit::scalar::Scalar::neg(&r)]
                    }
                };
                let mut best: Option<Vec<ResidualReport>> = None;
                for r in roots {
                    let (a, b) = hexagon_residuals(&r, &c)?;
                    let pair = vec![a, b];
                    let better = match &best {
                        Some(p) => worst(&pair) < worst(p),
                        None => true,
                    };
                    if better {
                        best = Some(pair);
                    }
                }
                best.expect("at least one root")
            }
        };
        put(residual, worst(&checks), "residual")?;
        Ok(verdict(&checks, tol))
    })
}

/// GRT1 membership (group-like, pentagon, no linear or quadratic terms).
///
/// # Safety
/// `series` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn grt_check_grt1(series: *const GrtSeries) -> GrtStatus {
    guard(|| {
        let member = match series_arg(series, "series")? {
            AnySeries::Rational(x) => is_grt1(x)?.member,
            AnySeries::Complex(x) => is_grt1(x)?.member,
            AnySeries::Symbolic(x) => is_grt1(x)?.member,
        };
        Ok(if member { GrtStatus::GrtOk } else { GrtStatus::GrtCheckFailed })
    })
}

/// DMR0 membership; `kill_linear` is non-zero to drop linear terms first.
///
/// # Safety
/// `series` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn grt_check_dmr0(series: *const GrtSeries, kill_linear: i32) -> GrtStatus {
    guard(|| {
        let opts = DmrOptions { kill_linear: kill_linear != 0 };
        let member = match series_arg(series, "series")? {
            AnySeries::Rational(x) => is_dmr0(x, opts)?.member,
            AnySeries::Complex(x) => is_dmr0(x, opts)?.member,
            AnySeries::Symbolic(x) => is_dmr0(x, opts)?.member,
        };
        Ok(if member { GrtStatus::GrtOk } else { GrtStatus::GrtCheckFailed })
    })
}

/// The group law `phi2 ∘ phi1`. Both series must share a ring.
///
/// # Safety
/// `phi2` and `phi1` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_mul(
    phi2: *const GrtSeries,
    phi1: *const GrtSeries,
    out: *mut *mut GrtSeries,
) -> GrtStatus {
    guard(|| {
        let inner = match (series_arg(phi2, "phi2")?, series_arg(phi1, "phi1")?) {
            (AnySeries::Rational(a), AnySeries::Rational(b)) => AnySeries::Rational(grtkit::assoc::grt_mul(a, b)?),
            (AnySeries::Complex(a), AnySeries::Complex(b)) => AnySeries::Complex(grtkit::assoc::grt_mul(a, b)?),
            (AnySeries::Symbolic(a), AnySeries::Symbolic(b)) => AnySeries::Symbolic(grtkit::assoc::grt_mul(a, b)?),
            (a, b) => return Err(Error::Precondition(format!("rings differ: {} and {}", a.ring(), b.ring())).into()),
        };
        put(out, Box::into_raw(Box::new(GrtSeries { inner })), "out")?;
        Ok(GrtStatus::GrtOk)
    })
}

/// The Drinfeld associator to `weight` at `digits` decimal digits.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_build_kz(weight: u32, digits: u32, out: *mut *mut GrtSeries) -> GrtStatus {
    guard(|| {
        let mut table = MzvTable::new(digits);
        let kz = build_phi_kz(weight as usize, digits, &mut table)?;
        put(out, Box::into_raw(Box::new(GrtSeries { inner: AnySeries::Complex(kz.phi) })), "out")?;
        Ok(GrtStatus::GrtOk)
    })
}

/// Decimal value of `zeta(index)`, e.g. index `"2,3"`.
///
/// # Safety
/// `index` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn grt_mzv_eval(index: *const c_char, digits: u32, out: *mut *mut c_char) -> GrtStatus {
    guard(|| {
        let idx: MzvIndex = str_arg(index, "index")?.parse()?;
        let v = MzvTable::new(digits).real(&idx)?;
        put_string(out, v.to_decimal_string(digits))?;
        Ok(GrtStatus::GrtOk)
    })
}

/// Runs a command-line invocation (without the program name) and returns
/// its JSON report. The status follows the report's verdict.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn grt_run(argc: usize, argv: *const *const c_char, out: *mut *mut c_char) -> GrtStatus {
    guard(|| {
        if argc > 0 && argv.is_null() {
            return Err(null("argv"));
        }
        let mut args = vec!["grtkit".to_string()];
        for i in 0..argc {
            args.push(str_arg(*argv.add(i), "argv element")?.to_string());
        }
        let report = grtkit::cli::run_args(args)?;
        put_string(out, serde_json::to_string(&report).map_err(Error::from)?)?;
        Ok(if report.verdict { GrtStatus::GrtOk } else { GrtStatus::GrtCheckFailed })
    })
}
