//! C ABI over the `drinfeld` crate.
//!
//! Modules and points are opaque handles released with their `_free`
//! function. Every call returns a [`DlStatus`]; on failure the message is
//! available from [`dl_last_error`] on the same thread. Strings handed out
//! through `out` parameters are owned by the caller and released with
//! [`dl_string_free`]. Exact rationals travel as strings such as `"9/4"`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use drinfeld::heights::{self, TorsionStatus};
use drinfeld::irreducible::count_irreducibles;
use drinfeld::parse::parse_apoly;
use drinfeld::rational::{fmt_rational, parse_rational};
use drinfeld::supersingular::{density_report, is_supersingular};
use drinfeld::{AlgebraicPoint, DrinfeldModule, Error, Fq};

/// Result of every exported call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Parse = 3,
    Arithmetic = 4,
    Hypothesis = 5,
    Resource = 6,
    Contract = 7,
    Io = 8,
    Panic = 9,
}

/// Outcome of [`dl_torsion_status`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DlTorsion {
    Torsion = 0,
    NonTorsionCertified = 1,
    Unknown = 2,
}

/// Opaque Drinfeld module.
pub struct DlModule(DrinfeldModule);

/// Opaque algebraic point over F_q(T).
pub struct DlPoint(AlgebraicPoint);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DlStatus {
    match e {
        Error::Parse { .. } => DlStatus::Parse,
        Error::InvalidInput(_) | Error::InvalidField(_) | Error::FieldMismatch { .. } => DlStatus::InvalidInput,
        Error::DivisionByZero
        | Error::BadReduction { .. }
        | Error::NotInvertible { .. }
        | Error::AlgebraMismatch(_) => DlStatus::Arithmetic,
        Error::Hypothesis(_) => DlStatus::Hypothesis,
        Error::Resource { .. } => DlStatus::Resource,
        Error::Contract(_) => DlStatus::Contract,
        Error::Io(_) => DlStatus::Io,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> DlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DlStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            DlStatus::NullPointer
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
            DlStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Lib(Error::InvalidInput(format!("{what} is not UTF-8"))))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn write_out<T>(out: *mut T, v: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String, what: &'static str) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail::Lib(Error::Contract("string with interior nul".into())))?;
    write_out(out, c.into_raw(), what)
}

fn field(q: u32) -> Result<Fq, Fail> {
    Ok(Fq::with_order(q)?)
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn dl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The Carlitz module Φ(T) = T + τ over F_q.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_module_carlitz(q: u32, out: *mut *mut DlModule) -> DlStatus {
    guard(|| {
        let m = DrinfeldModule::carlitz(field(q)?);
        write_out(out, Box::into_raw(Box::new(DlModule(m))), "out")
    })
}

/// Parses a module description in TOML (`q = 2`, `coeffs = ["T", "1"]`).
///
/// # Safety
/// `toml` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_module_from_toml(toml: *const c_char, out: *mut *mut DlModule) -> DlStatus {
    guard(|| {
        let m = DrinfeldModule::from_toml(str_arg(toml, "toml")?)?;
        write_out(out, Box::into_raw(Box::new(DlModule(m))), "out")
    })
}

/// # Safety
/// `m` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dl_module_free(m: *mut DlModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Parses the minimal polynomial of a point, e.g. `"X^2 + X + T"`.
///
/// # Safety
/// `minpoly` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_point_parse(q: u32, minpoly: *const c_char, out: *mut *mut DlPoint) -> DlStatus {
    guard(|| {
        let x = AlgebraicPoint::parse(field(q)?, str_arg(minpoly, "minpoly")?)?;
        write_out(out, Box::into_raw(Box::new(DlPoint(x))), "out")
    })
}

/// # Safety
/// `x` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn dl_point_free(x: *mut DlPoint) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Weil height of a point as an exact rational string.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_point_height(x: *const DlPoint, out: *mut *mut c_char) -> DlStatus {
    guard(|| {
        let x = ref_arg(x, "point")?;
        write_string(out, fmt_rational(&heights::point_height(&x.0)), "out")
    })
}

/// Height of a module, the maximum height of its coefficients.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_module_height(m: *const DlModule, out: *mut *mut c_char) -> DlStatus {
    guard(|| {
        let m = ref_arg(m, "module")?;
        write_string(out, fmt_rational(&heights::module_height(&m.0)), "out")
    })
}

/// Certified enclosure [lower, upper] of the canonical height at the given depth.
///
/// # Safety
/// Handles must be live and both out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn dl_canonical_height(
    m: *const DlModule,
    x: *const DlPoint,
    depth: u32,
    lower: *mut *mut c_char,
    upper: *mut *mut c_char,
) -> DlStatus {
    guard(|| {
        let (m, x) = (ref_arg(m, "module")?, ref_arg(x, "point")?);
        if lower.is_null() || upper.is_null() {
            return Err(Fail::Null("out"));
        }
        let i = heights::canonical_height(&x.0, &m.0, depth)?;
        write_string(lower, fmt_rational(&i.lower()), "lower")?;
        write_string(upper, fmt_rational(&i.upper()), "upper")
    })
}

/// Whether the monic irreducible `l` is a supersingular prime of `m`.
///
/// # Safety
/// `m` must be live, `l` nul-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_is_supersingular(m: *const DlModule, l: *const c_char, out: *mut bool) -> DlStatus {
    guard(|| {
        let m = ref_arg(m, "module")?;
        let l = parse_apoly(m.0.fq(), str_arg(l, "l")?)?;
        write_out(out, is_supersingular(&m.0, &l)?, "out")
    })
}

/// Number of monic irreducibles of degree n over F_q, as a decimal string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_count_irreducibles(q: u32, n: usize, out: *mut *mut c_char) -> DlStatus {
    guard(|| {
        field(q)?;
        write_string(out, count_irreducibles(q, n)?.to_string(), "out")
    })
}

/// Torsion search up to degree `search`, then certification at `depth`.
/// `witness` receives the annihilator for torsion points and the lower end
/// of the height interval otherwise (null when nothing was certified).
///
/// # Safety
/// Handles must be live and both out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn dl_torsion_status(
    m: *const DlModule,
    x: *const DlPoint,
    search: usize,
    depth: u32,
    kind: *mut DlTorsion,
    witness: *mut *mut c_char,
) -> DlStatus {
    guard(|| {
        let (m, x) = (ref_arg(m, "module")?, ref_arg(x, "point")?);
        if kind.is_null() || witness.is_null() {
            return Err(Fail::Null("out"));
        }
        let (k, w) = match heights::torsion_status(&x.0, &m.0, search, depth)? {
            TorsionStatus::Torsion(a) => (DlTorsion::Torsion, Some(a.to_string())),
            TorsionStatus::NonTorsionCertified(i) => (DlTorsion::NonTorsionCertified, Some(fmt_rational(&i.lower()))),
            TorsionStatus::Unknown(i) => (DlTorsion::Unknown, i.map(|i| fmt_rational(&i.lower()))),
        };
        kind.write(k);
        match w {
            Some(s) => write_string(witness, s, "witness"),
            None => write_out(witness, ptr::null_mut(), "witness"),
        }
    })
}

/// Supersingular census for N = 1..=n_max, one JSON object per line.
/// `r` and `c1` are rationals such as `"1/2"`.
///
/// # Safety
/// `m` must be live, `r` and `c1` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_density_report_jsonl(
    m: *const DlModule,
    n_max: usize,
    r: *const c_char,
    c1: *const c_char,
    eta: usize,
    workers: usize,
    out: *mut *mut c_char,
) -> DlStatus {
    guard(|| {
        let m = ref_arg(m, "module")?;
        let r = parse_rational(str_arg(r, "r")?)?;
        let c1 = parse_rational(str_arg(c1, "c1")?)?;
        let rep = density_report(&m.0, n_max, &r, &c1, eta, workers.max(1))?;
        let mut s = String::new();
        for row in &rep.rows {
            s += &serde_json::to_string(row).map_err(|e| Error::Contract(e.to_string()))?;
            s.push('\n');
        }
        write_string(out, s, "out")
    })
}
