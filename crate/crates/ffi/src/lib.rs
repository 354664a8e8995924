//! C ABI over `polysft`.
//!
//! SFTs and configurations cross the boundary as opaque handles created from JSON
//! text and released with the matching `*_free` function. Every call returns a
//! [`PsStatus`]; on failure, [`ps_last_error`] describes the problem. Strings
//! returned through out-parameters are owned by the caller and must be released
//! with [`ps_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polysft::automorphism::{div_witness_check, AutMatrix, DivVerdict};
use polysft::config::Configuration;
use polysft::constructions;
use polysft::error::Error;
use polysft::intmat::parse_matrix;
use polysft::io;
use polysft::lattice::Lattice;
use polysft::sft::Sft;
use polysft::solver::{self, EmptinessVerdict};

/// Result of every exported call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsStatus {
    /// Success, a witness was found, or the check was consistent.
    Ok = 0,
    /// Certified empty, no periodic point, or refuted.
    Negative = 1,
    /// The node budget ran out.
    Inconclusive = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    /// Input text did not parse or described an invalid object.
    Malformed = 5,
    /// The arguments were well formed but the operation rejected them.
    InvalidArgument = 6,
    /// A Rust panic was caught at the boundary.
    Panic = 7,
}

/// Opaque SFT handle.
pub struct PsSft(Sft);

/// Opaque configuration handle.
pub struct PsConfig(Configuration);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(PsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Malformed(_)
            | Error::InvalidGroup(_)
            | Error::InvalidElement(_)
            | Error::InvalidAlphabet(_)
            | Error::InvalidPattern(_)
            | Error::InvalidConfiguration(_) => PsStatus::Malformed,
            _ => PsStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<PsStatus, Fail>) -> PsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside polysft".into());
            PsStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(PsStatus::NullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(PsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(PsStatus::NullPointer, format!("{what} is NULL")))
}

unsafe fn put<T>(out: *mut *mut T, value: Option<T>) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(PsStatus::NullPointer, "output pointer is NULL".into()));
    }
    *out = value.map_or(ptr::null_mut(), |v| Box::into_raw(Box::new(v)));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(PsStatus::NullPointer, "output pointer is NULL".into()));
    }
    *out = CString::new(s)
        .map_err(|_| Fail(PsStatus::Malformed, "string contains NUL".into()))?
        .into_raw();
    Ok(())
}

unsafe fn check_out<T>(out: *mut *mut T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(PsStatus::NullPointer, "output pointer is NULL".into()));
    }
    *out = ptr::null_mut();
    Ok(())
}

fn lattice(s: &str) -> Result<Lattice, Fail> {
    Lattice::parse(s).map_err(|e| Fail(PsStatus::InvalidArgument, e.to_string()))
}

/// Message for the last failed call on this thread, or NULL. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn ps_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ps_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_sft_from_json(json: *const c_char, out: *mut *mut PsSft) -> PsStatus {
    guard(|| {
        check_out(out)?;
        let x = io::parse_sft(text(json, "json")?)?;
        put(out, Some(PsSft(x)))?;
        Ok(PsStatus::Ok)
    })
}

/// Canonical JSON of an SFT.
///
/// # Safety
/// `sft` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_sft_to_json(sft: *const PsSft, out: *mut *mut c_char) -> PsStatus {
    guard(|| {
        let x = handle(sft, "sft")?;
        put_string(out, io::sft_to_string(&x.0))?;
        Ok(PsStatus::Ok)
    })
}

/// # Safety
/// `sft` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ps_sft_free(sft: *mut PsSft) {
    if !sft.is_null() {
        drop(Box::from_raw(sft));
    }
}

/// Alphabet size and number of forbidden patterns.
///
/// # Safety
/// `sft` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_sft_shape(sft: *const PsSft, symbols: *mut usize, patterns: *mut usize) -> PsStatus {
    guard(|| {
        let x = handle(sft, "sft")?;
        if symbols.is_null() || patterns.is_null() {
            return Err(Fail(PsStatus::NullPointer, "output pointer is NULL".into()));
        }
        *symbols = x.0.alphabet().len();
        *patterns = x.0.forbidden().len();
        Ok(PsStatus::Ok)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_mod3_marker(dim: usize, out: *mut *mut PsSft) -> PsStatus {
    guard(|| {
        check_out(out)?;
        put(out, Some(PsSft(constructions::mod3_marker(dim)?)))?;
        Ok(PsStatus::Ok)
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_sft_product(a: *const PsSft, b: *const PsSft, out: *mut *mut PsSft) -> PsStatus {
    guard(|| {
        check_out(out)?;
        let p = constructions::product(&handle(a, "a")?.0, &handle(b, "b")?.0)?;
        put(out, Some(PsSft(p)))?;
        Ok(PsStatus::Ok)
    })
}

/// Quotient lift along a homomorphism given as JSON.
///
/// # Safety
/// `sft` must be a live handle, `hom_json` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_sft_lift(sft: *const PsSft, hom_json: *const c_char, out: *mut *mut PsSft) -> PsStatus {
    guard(|| {
        check_out(out)?;
        let h = io::parse_hom(text(hom_json, "hom_json")?)?;
        let y = constructions::quotient_lift(&handle(sft, "sft")?.0, &h)?;
        put(out, Some(PsSft(y)))?;
        Ok(PsStatus::Ok)
    })
}

/// Subgroup induction along an embedding given as JSON.
///
/// # Safety
/// `sft` must be a live handle, `hom_json` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_sft_induce(sft: *const PsSft, hom_json: *const c_char, out: *mut *mut PsSft) -> PsStatus {
    guard(|| {
        check_out(out)?;
        let h = io::parse_hom(text(hom_json, "hom_json")?)?;
        let y = constructions::subgroup_induce(&handle(sft, "sft")?.0, &h)?;
        put(out, Some(PsSft(y)))?;
        Ok(PsStatus::Ok)
    })
}

/// Bounded emptiness check on `ball(G, radius)`. Returns `Ok` with a witness in
/// `witness`, `Negative` when the ball has no admissible coloring, or
/// `Inconclusive`; `witness` is NULL unless the status is `Ok`.
///
/// # Safety
/// `sft` must be a live handle; `witness` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_check_ball(
    sft: *const PsSft,
    radius: u32,
    budget: u64,
    witness: *mut *mut PsConfig,
) -> PsStatus {
    guard(|| {
        check_out(witness)?;
        Ok(match solver::check_ball_emptiness(&handle(sft, "sft")?.0, radius, budget)? {
            EmptinessVerdict::Witness(c) => {
                put(witness, Some(PsConfig(c)))?;
                PsStatus::Ok
            }
            EmptinessVerdict::EmptyAtRadius(_) => PsStatus::Negative,
            EmptinessVerdict::Inconclusive { .. } => PsStatus::Inconclusive,
        })
    })
}

/// Looks for a point with periods `lattice` (rows `"a,b;c,d"`). `Negative` when none exists.
///
/// # Safety
/// `sft` must be a live handle, `lattice` NUL-terminated, `witness` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_find_periodic(
    sft: *const PsSft,
    lattice: *const c_char,
    witness: *mut *mut PsConfig,
) -> PsStatus {
    guard(|| {
        check_out(witness)?;
        let l = self::lattice(text(lattice, "lattice")?)?;
        Ok(match solver::find_periodic(&handle(sft, "sft")?.0, &l)? {
            Some(c) => {
                put(witness, Some(PsConfig(c)))?;
                PsStatus::Ok
            }
            None => PsStatus::Negative,
        })
    })
}

/// Number of admissible colorings of the torus `Z^n / lattice`.
///
/// # Safety
/// `sft` must be a live handle, `lattice` NUL-terminated, `count` writable.
#[no_mangle]
pub unsafe extern "C" fn ps_count_torus(sft: *const PsSft, lattice: *const c_char, count: *mut u64) -> PsStatus {
    guard(|| {
        let l = self::lattice(text(lattice, "lattice")?)?;
        let n = solver::count_torus(&handle(sft, "sft")?.0, &l)?;
        if count.is_null() {
            return Err(Fail(PsStatus::NullPointer, "count is NULL".into()));
        }
        *count = n;
        Ok(PsStatus::Ok)
    })
}

/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_config_from_json(json: *const c_char, out: *mut *mut PsConfig) -> PsStatus {
    guard(|| {
        check_out(out)?;
        let (c, _) = io::parse_config(text(json, "json")?)?;
        put(out, Some(PsConfig(c)))?;
        Ok(PsStatus::Ok)
    })
}

/// # Safety
/// `config` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_config_to_json(config: *const PsConfig, out: *mut *mut c_char) -> PsStatus {
    guard(|| {
        let c = handle(config, "config")?;
        put_string(out, io::config_to_string(&c.0, None))?;
        Ok(PsStatus::Ok)
    })
}

/// # Safety
/// `config` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ps_config_free(config: *mut PsConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Stabilizer of a torus configuration as rows `"a,b;c,d"`.
///
/// # Safety
/// `config` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ps_stabilizer(config: *const PsConfig, out: *mut *mut c_char) -> PsStatus {
    guard(|| {
        let s = solver::stabilizer(&handle(config, "config")?.0)?;
        put_string(out, s.to_string())?;
        Ok(PsStatus::Ok)
    })
}

/// `Ok` when the automorphism (rows `"a,b;c,d"`) gives no obstruction on the
/// configuration's window, `Negative` when it is refuted.
///
/// # Safety
/// `sft` and `config` must be live handles; `matrix` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn ps_div_witness_check(
    sft: *const PsSft,
    config: *const PsConfig,
    matrix: *const c_char,
) -> PsStatus {
    guard(|| {
        let m = text(matrix, "matrix")?;
        let m = parse_matrix(m).ok_or_else(|| Fail(PsStatus::InvalidArgument, format!("bad matrix {m:?}")))?;
        let m = AutMatrix::new(m)?;
        Ok(match div_witness_check(&handle(sft, "sft")?.0, &handle(config, "config")?.0, &m)? {
            DivVerdict::Consistent => PsStatus::Ok,
            DivVerdict::Refuted => PsStatus::Negative,
        })
    })
}
