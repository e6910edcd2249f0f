//! C ABI over `hoca-core`. Objects cross the boundary as opaque handles that
//! the caller releases with the matching `*_free` function; strings returned
//! to C are released with [`hoca_string_free`]. Every fallible call returns a
//! [`HocaStatus`] and leaves a message for [`hoca_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hoca_core::coeff::FGModule;
use hoca_core::complex::{cone, ChainMap, Complex};
use hoca_core::io;
use hoca_core::model::{derived_hom, DescentData};
use hoca_core::monoidal::tensor;
use hoca_core::Error;

/// Status codes; the nonzero values match the `hoca` exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HocaStatus {
    Ok = 0,
    /// Null pointer, bad UTF-8 or an argument out of range.
    InvalidArgument = 1,
    BudgetExceeded = 2,
    InvariantViolation = 3,
    Malformed = 4,
    /// A Rust panic was caught at the boundary.
    Internal = 5,
}

/// A bounded cochain complex.
pub struct HocaComplex(Complex);

/// A chain map between complexes.
pub struct HocaChainMap(ChainMap);

/// A finitely generated module.
pub struct HocaModule(FGModule);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: HocaStatus, msg: impl Into<String>) -> HocaStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> HocaStatus {
    let status = match e.exit_code() {
        2 => HocaStatus::BudgetExceeded,
        4 => HocaStatus::Malformed,
        _ => HocaStatus::InvariantViolation,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), HocaStatus>) -> HocaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HocaStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(HocaStatus::Internal, "internal panic"),
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, HocaStatus> {
    if s.is_null() {
        return Err(fail(HocaStatus::InvalidArgument, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(HocaStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, HocaStatus> {
    p.as_ref()
        .ok_or_else(|| fail(HocaStatus::InvalidArgument, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), HocaStatus> {
    if out.is_null() {
        return Err(fail(HocaStatus::InvalidArgument, "output pointer is null"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), HocaStatus> {
    if out.is_null() {
        return Err(fail(HocaStatus::InvalidArgument, "output pointer is null"));
    }
    *out = CString::new(s).expect("no interior NULs").into_raw();
    Ok(())
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hoca_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Version of the library as a static string.
#[no_mangle]
pub extern "C" fn hoca_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn hoca_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a complex document (`"format": 1`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hoca_complex_from_json(json: *const c_char, out: *mut *mut HocaComplex) -> HocaStatus {
    guard(|| {
        let c: Complex = io::from_str(text(json, "json")?).map_err(from_error)?;
        put(out, HocaComplex(c))
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hoca_complex_to_json(c: *const HocaComplex, out: *mut *mut c_char) -> HocaStatus {
    guard(|| put_string(out, io::to_string(&handle(c, "complex")?.0)))
}

/// # Safety
/// `c` must come from this library or be null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn hoca_complex_free(c: *mut HocaComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// `H^n(C)`.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hoca_complex_homology(c: *const HocaComplex, n: i64, out: *mut *mut HocaModule) -> HocaStatus {
    guard(|| put(out, HocaModule(handle(c, "complex")?.0.homology(n))))
}

/// `X ⊗ Y`.
///
/// # Safety
/// `x` and `y` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hoca_tensor(
    x: *const HocaComplex,
    y: *const HocaComplex,
    out: *mut *mut HocaComplex,
) -> HocaStatus {
    guard(|| {
        let t = tensor(&handle(x, "x")?.0, &handle(y, "y")?.0).map_err(from_error)?;
        put(out, HocaComplex(t))
    })
}

/// `Hom_D(X, Y[n])`, resolving by free modules of rank one.
///
/// # Safety
/// `x` and `y` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hoca_derived_hom(
    x: *const HocaComplex,
    y: *const HocaComplex,
    n: i64,
    out: *mut *mut HocaModule,
) -> HocaStatus {
    guard(|| {
        let x = &handle(x, "x")?.0;
        let h = derived_hom(x, &handle(y, "y")?.0, n, &DescentData::frees(x.ring())).map_err(from_error)?;
        put(out, HocaModule(h))
    })
}

/// Parses a chain map document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hoca_chain_map_from_json(json: *const c_char, out: *mut *mut HocaChainMap) -> HocaStatus {
    guard(|| {
        let f: ChainMap = io::from_str(text(json, "json")?).map_err(from_error)?;
        put(out, HocaChainMap(f))
    })
}

/// # Safety
/// `f` must come from this library or be null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn hoca_chain_map_free(f: *mut HocaChainMap) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Whether `f` induces isomorphisms on cohomology, written to `out` as 0 or 1.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hoca_chain_map_is_quasi_isomorphism(f: *const HocaChainMap, out: *mut i32) -> HocaStatus {
    guard(|| {
        let q = handle(f, "map")?.0.is_quasi_isomorphism();
        if out.is_null() {
            return Err(fail(HocaStatus::InvalidArgument, "output pointer is null"));
        }
        *out = i32::from(q);
        Ok(())
    })
}

/// The mapping cone of `f`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hoca_cone(f: *const HocaChainMap, out: *mut *mut HocaComplex) -> HocaStatus {
    guard(|| put(out, HocaComplex(cone(&handle(f, "map")?.0).complex)))
}

/// Invariant-factor notation such as `Z ⊕ Z/2`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hoca_module_to_string(m: *const HocaModule, out: *mut *mut c_char) -> HocaStatus {
    guard(|| put_string(out, handle(m, "module")?.0.to_string()))
}

/// Number of generators, or -1 for a null handle.
///
/// # Safety
/// `m` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn hoca_module_rank(m: *const HocaModule) -> i64 {
    m.as_ref().map_or(-1, |m| m.0.rank() as i64)
}

/// # Safety
/// `m` must come from this library or be null; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn hoca_module_free(m: *mut HocaModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Runs one acceptance criterion (1 to 10) with `seed`.
#[no_mangle]
pub extern "C" fn hoca_selftest(criterion: u32, seed: u64) -> HocaStatus {
    guard(|| {
        if !(1..=10).contains(&criterion) {
            return Err(fail(HocaStatus::InvalidArgument, format!("criterion {criterion} is not in 1..=10")));
        }
        let o = hoca_core::selftest::run(criterion as usize, seed);
        if o.passed {
            Ok(())
        } else {
            Err(fail(HocaStatus::InvariantViolation, o.to_string()))
        }
    })
}
