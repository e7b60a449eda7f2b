//! C ABI for the `osserman` library.
//!
//! Tensors are opaque handles created by `oss_tensor_*` constructors and
//! released with [`oss_tensor_free`]. Every fallible call returns an
//! [`OssStatus`]; on failure a message is kept per thread and can be read
//! with [`oss_last_error_message`]. Strings handed out by the library are
//! released with [`oss_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use osserman::checks::{self, CheckParams, Verdict};
use osserman::curvature::CurvatureTensor;
use osserman::io::{ReportFile, TensorFile};
use osserman::linalg::{parse_rational, ratio};
use osserman::space::{PseudoEuclideanSpace, Vector};
use osserman::spectral::char_poly;
use osserman::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OssStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    InvalidTensor = 4,
    Internal = 5,
    Panic = 6,
}

/// Verdict of a sampled property check.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OssVerdict {
    HoldsOnSamples = 0,
    Violated = 1,
    NotApplicable = 2,
    NoEvidence = 3,
}

impl From<Verdict> for OssVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::HoldsOnSamples => OssVerdict::HoldsOnSamples,
            Verdict::Violated => OssVerdict::Violated,
            Verdict::NotApplicable => OssVerdict::NotApplicable,
            Verdict::NoEvidence => OssVerdict::NoEvidence,
        }
    }
}

/// Opaque curvature tensor.
pub struct OssTensor {
    inner: CurvatureTensor,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> OssStatus {
    match e {
        Error::Parse { .. } | Error::Json(_) => OssStatus::ParseError,
        Error::InvalidTensor(_) => OssStatus::InvalidTensor,
        Error::Internal(_) | Error::Numerical(_) | Error::Io(_) => OssStatus::Internal,
        _ => OssStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (OssStatus, String)>) -> OssStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OssStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside osserman");
            OssStatus::Panic
        }
    }
}

fn lib(e: Error) -> (OssStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (OssStatus, String) {
    (OssStatus::NullPointer, format!("{name} is null"))
}

unsafe fn tensor_ref<'a>(t: *const OssTensor) -> Result<&'a CurvatureTensor, (OssStatus, String)> {
    t.as_ref().map(|t| &t.inner).ok_or_else(|| null("tensor"))
}

unsafe fn c_str<'a>(s: *const c_char, name: &str) -> Result<&'a str, (OssStatus, String)> {
    if s.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (OssStatus::InvalidArgument, format!("{name} is not UTF-8")))
}

fn into_c_string(s: String) -> Result<*mut c_char, (OssStatus, String)> {
    CString::new(s).map(CString::into_raw).map_err(|_| (OssStatus::Internal, "string contains NUL".to_string()))
}

fn boxed(t: CurvatureTensor) -> *mut OssTensor {
    Box::into_raw(Box::new(OssTensor { inner: t }))
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn oss_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn oss_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn oss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a tensor from a JSON tensor file held in memory. Explicit
/// components are not validated here; see [`oss_tensor_validate`].
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn oss_tensor_from_json(json: *const c_char, out: *mut *mut OssTensor) -> OssStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = c_str(json, "json")?;
        let t = TensorFile::from_json(text).and_then(|f| f.tensor()).map_err(lib)?;
        *out = boxed(t);
        Ok(())
    })
}

/// Constant curvature `k = k_num/k_den` on the space of signature `(p, q)`.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn oss_tensor_constant_curvature(
    p: usize,
    q: usize,
    k_num: i64,
    k_den: i64,
    out: *mut *mut OssTensor,
) -> OssStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if k_den == 0 {
            return Err((OssStatus::InvalidArgument, "k_den is zero".into()));
        }
        let s = PseudoEuclideanSpace::new(p, q).map_err(lib)?;
        *out = boxed(osserman::catalog::constant_curvature(&s, &ratio(k_num, k_den)));
        Ok(())
    })
}

/// Releases a tensor. NULL is ignored.
///
/// # Safety
/// `t` must come from an `oss_tensor_*` constructor and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn oss_tensor_free(t: *mut OssTensor) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Dimension `n` of the underlying space.
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn oss_tensor_dimension(t: *const OssTensor, out: *mut usize) -> OssStatus {
    guard(|| {
        let t = tensor_ref(t)?;
        *out.as_mut().ok_or_else(|| null("out"))? = t.dim();
        Ok(())
    })
}

/// Counts violated curvature symmetries; zero means the tensor is valid.
///
/// # Safety
/// `t` must be a live handle and `violations` writable.
#[no_mangle]
pub unsafe extern "C" fn oss_tensor_validate(t: *const OssTensor, violations: *mut usize) -> OssStatus {
    guard(|| {
        let t = tensor_ref(t)?;
        *violations.as_mut().ok_or_else(|| null("violations"))? = t.validate_symmetries().violations.len();
        Ok(())
    })
}

/// Writes the Jacobi operator at `x` (length `n`) to `out` as an `n×n`
/// row-major array.
///
/// # Safety
/// `x` must hold `n` doubles and `out` room for `n*n`.
#[no_mangle]
pub unsafe extern "C" fn oss_tensor_jacobi_f64(t: *const OssTensor, x: *const f64, n: usize, out: *mut f64) -> OssStatus {
    guard(|| {
        let t = tensor_ref(t)?;
        if x.is_null() || out.is_null() {
            return Err(null(if x.is_null() { "x" } else { "out" }));
        }
        if n != t.dim() {
            return Err((OssStatus::InvalidArgument, format!("expected n = {}, got {n}", t.dim())));
        }
        let xs = std::slice::from_raw_parts(x, n);
        let a = t.to_float().jacobi::<f64>(xs);
        let dst = std::slice::from_raw_parts_mut(out, n * n);
        for i in 0..n {
            for j in 0..n {
                dst[i * n + j] = a[(i, j)];
            }
        }
        Ok(())
    })
}

/// Exact characteristic polynomial of the Jacobi operator at `x`, given as
/// a JSON array of rational strings. The result is a JSON array of
/// coefficients, constant term first; free it with [`oss_string_free`].
///
/// # Safety
/// `x_json` must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn oss_tensor_char_poly_json(t: *const OssTensor, x_json: *const c_char, out: *mut *mut c_char) -> OssStatus {
    guard(|| {
        let t = tensor_ref(t)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let text = c_str(x_json, "x_json")?;
        let raw: Vec<String> = serde_json::from_str(text).map_err(|e| (OssStatus::ParseError, e.to_string()))?;
        let coords = raw
            .iter()
            .map(|s| parse_rational(s).map_err(|m| (OssStatus::ParseError, m)))
            .collect::<Result<Vec<_>, _>>()?;
        let op = t.jacobi_operator(&Vector(coords)).map_err(lib)?;
        let coeffs: Vec<String> = char_poly(&op).coefficients().iter().map(osserman::linalg::format_rational).collect();
        *out = into_c_string(serde_json::to_string(&coeffs).map_err(|e| (OssStatus::Internal, e.to_string()))?)?;
        Ok(())
    })
}

/// Sampled Osserman test with `samples` points per admissible cone.
///
/// # Safety
/// `t` must be a live handle and `verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn oss_is_osserman(t: *const OssTensor, samples: usize, seed: u64, verdict: *mut OssVerdict) -> OssStatus {
    guard(|| {
        let t = tensor_ref(t)?;
        let dst = verdict.as_mut().ok_or_else(|| null("verdict"))?;
        *dst = checks::is_osserman(t, samples, seed).map_err(lib)?.verdict.into();
        Ok(())
    })
}

/// Full property report as JSON; free it with [`oss_string_free`].
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn oss_report_json(t: *const OssTensor, samples: usize, seed: u64, out: *mut *mut c_char) -> OssStatus {
    guard(|| {
        let t = tensor_ref(t)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let params = CheckParams { samples, seed, ..CheckParams::default() };
        let report = checks::full_report(t, &params).map_err(lib)?;
        let file = TensorFile::from_tensor(t);
        *out = into_c_string(ReportFile::new(&file, &report).to_json())?;
        Ok(())
    })
}
