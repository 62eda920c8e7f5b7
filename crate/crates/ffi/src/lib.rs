//! C interface to the `qosp` kernel.
//!
//! Matrices cross the boundary as opaque `QospMatrix` handles. Every fallible
//! call returns a `QospStatus`; on anything other than `QOSP_STATUS_OK` a message is
//! available from `qosp_last_error` on the same thread. Strings returned by
//! the library are owned by the caller and released with `qosp_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qosp::graded::{check_gybe, GradedMatrix, ParityVector};
use qosp::io::{matrix_from_json, matrix_to_json_string};
use qosp::matrices::NamedMatrix;
use qosp::reps::Spin;
use qosp::scalar::{parse_rational, Bindings, Var};
use qosp::suites::{run_all, run_suite, Suite, SuiteOptions};
use qosp::twist::phi::solve_phi;
use qosp::{Error, Scalar};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QospStatus {
    Ok = 0,
    /// The call completed but a verification did not pass.
    CheckFailed = 1,
    NullPointer = 2,
    InvalidArgument = 3,
    Parse = 4,
    /// Division by zero, non-invertible values, missing limits.
    Arithmetic = 5,
    DimensionMismatch = 6,
    Io = 7,
    /// A Rust panic was caught at the boundary.
    Internal = 8,
}

/// An exact graded matrix.
pub struct QospMatrix {
    inner: GradedMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

fn status_of(e: &Error) -> QospStatus {
    match e {
        Error::Parse(_) => QospStatus::Parse,
        Error::InvalidArgument(_)
        | Error::UnsupportedSpin(_)
        | Error::UnsupportedGenerator { .. } => QospStatus::InvalidArgument,
        Error::DimensionMismatch(_) => QospStatus::DimensionMismatch,
        Error::Io(_) => QospStatus::Io,
        Error::UnsupportedRepresentation(_) | Error::InconsistentRepresentation(_) => {
            QospStatus::InvalidArgument
        }
        _ => QospStatus::Arithmetic,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<QospStatus, (QospStatus, String)>) -> QospStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            if s == QospStatus::Ok {
                set_error("");
            }
            s
        }
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal error");
            QospStatus::Internal
        }
    }
}

type Failure = (QospStatus, String);

fn fail(e: Error) -> Failure {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> Failure {
    (QospStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (QospStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn matrix<'a>(p: *const QospMatrix, what: &str) -> Result<&'a GradedMatrix, Failure> {
    p.as_ref().map(|m| &m.inner).ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<QospStatus, Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(QospStatus::Ok)
}

unsafe fn put_matrix(out: *mut *mut QospMatrix, m: GradedMatrix) -> Result<QospStatus, Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(QospMatrix { inner: m })));
    Ok(QospStatus::Ok)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<QospStatus, Failure> {
    let c =
        CString::new(s).map_err(|_| (QospStatus::Internal, "string contains NUL".to_string()))?;
    put(out, c.into_raw(), "out")
}

/// Builds one of the named matrices: `kr`, `m`, `transformed`, `sjr`, `fj`,
/// `fs`, `lplus`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qosp_matrix_named(
    name: *const c_char,
    out: *mut *mut QospMatrix,
) -> QospStatus {
    guard(|| {
        let name: NamedMatrix = read_str(name, "name")?.parse().map_err(fail)?;
        put_matrix(out, name.build().map_err(fail)?)
    })
}

/// Parses the JSON layout produced by `qosp_matrix_to_json`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qosp_matrix_from_json(
    json: *const c_char,
    out: *mut *mut QospMatrix,
) -> QospStatus {
    guard(|| {
        put_matrix(
            out,
            matrix_from_json(read_str(json, "json")?).map_err(fail)?,
        )
    })
}

/// Releases a matrix. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qosp_matrix_free(m: *mut QospMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qosp_matrix_dim(m: *const QospMatrix, out: *mut usize) -> QospStatus {
    guard(|| put(out, matrix(m, "matrix")?.dim(), "out"))
}

/// Canonical text of entry `(row, col)`, both 0-based.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qosp_matrix_entry(
    m: *const QospMatrix,
    row: usize,
    col: usize,
    out: *mut *mut c_char,
) -> QospStatus {
    guard(|| {
        let a = matrix(m, "matrix")?;
        if row >= a.dim() || col >= a.dim() {
            return Err((
                QospStatus::InvalidArgument,
                format!("entry ({row}, {col}) outside a {0}x{0} matrix", a.dim()),
            ));
        }
        put_string(out, a.get(row, col).to_string())
    })
}

/// Substitutes an exact rational (`"1/2"`, `"-3"`) for `s`, `theta` or `xi`.
///
/// # Safety
/// `m` must be a live handle, the strings NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qosp_matrix_substitute(
    m: *const QospMatrix,
    var: *const c_char,
    value: *const c_char,
    out: *mut *mut QospMatrix,
) -> QospStatus {
    guard(|| {
        let a = matrix(m, "matrix")?;
        let v: Var = read_str(var, "var")?.parse().map_err(fail)?;
        let r = parse_rational(read_str(value, "value")?).map_err(fail)?;
        let b = Bindings::from([(v, Scalar::from_rational(r))]);
        put_matrix(out, a.substitute(&b).map_err(fail)?)
    })
}

/// Entrywise limit `s -> 1`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qosp_matrix_limit_at_one(
    m: *const QospMatrix,
    out: *mut *mut QospMatrix,
) -> QospStatus {
    guard(|| put_matrix(out, matrix(m, "matrix")?.limit_at_one().map_err(fail)?))
}

/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qosp_matrix_mul(
    a: *const QospMatrix,
    b: *const QospMatrix,
    out: *mut *mut QospMatrix,
) -> QospStatus {
    guard(|| {
        let p = matrix(a, "a")?.checked_mul(matrix(b, "b")?).map_err(fail)?;
        put_matrix(out, p)
    })
}

/// Exact equality, including the parity assignment.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qosp_matrix_equal(
    a: *const QospMatrix,
    b: *const QospMatrix,
    out: *mut bool,
) -> QospStatus {
    guard(|| {
        let eq = matrix(a, "a")? == matrix(b, "b")?;
        put(out, eq, "out")
    })
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qosp_matrix_to_json(
    m: *const QospMatrix,
    out: *mut *mut c_char,
) -> QospStatus {
    guard(|| put_string(out, matrix_to_json_string(matrix(m, "matrix")?)))
}

/// Graded Yang-Baxter equation for `r` acting on `V ⊗ V`, where `V` has the
/// `leg_dim` parities in `leg_parity` (each 0 or 1). Returns `QOSP_STATUS_OK` when
/// it holds and `QOSP_STATUS_CHECK_FAILED` otherwise.
///
/// # Safety
/// `r` must be a live handle; `leg_parity` must point to `leg_dim` bytes.
#[no_mangle]
pub unsafe extern "C" fn qosp_check_gybe(
    r: *const QospMatrix,
    leg_parity: *const u8,
    leg_dim: usize,
) -> QospStatus {
    guard(|| {
        let r = matrix(r, "r")?;
        if leg_parity.is_null() {
            return Err(null("leg_parity"));
        }
        let bits = std::slice::from_raw_parts(leg_parity, leg_dim).to_vec();
        if bits.iter().any(|&b| b > 1) {
            return Err((
                QospStatus::InvalidArgument,
                "parities must be 0 or 1".into(),
            ));
        }
        let p = ParityVector::new(bits);
        if r.row_parity() != &p.tensor(&p) {
            return Err((
                QospStatus::DimensionMismatch,
                format!(
                    "matrix of dimension {} does not act on V ⊗ V with dim V = {leg_dim}",
                    r.dim()
                ),
            ));
        }
        let res = check_gybe(r, &p);
        if res.is_zero() {
            Ok(QospStatus::Ok)
        } else {
            Err((QospStatus::CheckFailed, res.summary()))
        }
    })
}

/// Runs a verification suite (`all`, `golden`, `ybe`, ...) with default
/// options and returns its JSON report. `QOSP_STATUS_CHECK_FAILED` signals a
/// failing check; the report is written in that case too.
///
/// # Safety
/// `suite` must be NUL-terminated; `report_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qosp_verify(
    suite: *const c_char,
    report_json: *mut *mut c_char,
) -> QospStatus {
    guard(|| {
        let name = read_str(suite, "suite")?;
        let opts = SuiteOptions::default();
        let report = if name == "all" {
            run_all(&opts)
        } else {
            run_suite(name.parse::<Suite>().map_err(fail)?, &opts)
        };
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        put_string(report_json, json)?;
        Ok(if report.passed() {
            QospStatus::Ok
        } else {
            QospStatus::CheckFailed
        })
    })
}

fn parse_pairs(src: &str) -> Result<Vec<(Spin, Spin)>, Failure> {
    src.split(',')
        .map(|p| {
            let (a, b) = p
                .split_once(':')
                .ok_or_else(|| (QospStatus::Parse, format!("expected j1:j2, got '{p}'")))?;
            Ok((
                a.trim().parse().map_err(fail)?,
                b.trim().parse().map_err(fail)?,
            ))
        })
        .collect()
}

/// Solves for the super-twist series to `order` on pairs like `"1:1/2,1:1"`
/// and returns the solution as JSON.
///
/// # Safety
/// `pairs` must be NUL-terminated; `solution_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qosp_solve_phi(
    order: u32,
    pairs: *const c_char,
    solution_json: *mut *mut c_char,
) -> QospStatus {
    guard(|| {
        let pairs = parse_pairs(read_str(pairs, "pairs")?)?;
        let sol = solve_phi(order, &pairs).map_err(fail)?;
        let json = serde_json::to_string_pretty(&sol.to_json()).expect("solution serializes");
        put_string(solution_json, json)?;
        Ok(if sol.passed() {
            QospStatus::Ok
        } else {
            QospStatus::CheckFailed
        })
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qosp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failure on this thread, or an empty string.
/// Valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn qosp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn qosp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::Parse("x".into())), QospStatus::Parse);
        assert_eq!(status_of(&Error::DivisionByZero), QospStatus::Arithmetic);
        assert_eq!(status_of(&Error::Singular), QospStatus::Arithmetic);
        assert_eq!(
            status_of(&Error::DimensionMismatch("x".into())),
            QospStatus::DimensionMismatch
        );
    }

    #[test]
    fn pairs() {
        assert_eq!(parse_pairs("1:1/2, 1:1").unwrap().len(), 2);
        assert_eq!(parse_pairs("1").unwrap_err().0, QospStatus::Parse);
        assert_eq!(
            parse_pairs("1:7").unwrap_err().0,
            QospStatus::InvalidArgument
        );
    }

    #[test]
    fn panics_are_contained() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, QospStatus::Internal);
    }
}
