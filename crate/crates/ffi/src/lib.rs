//! C ABI for `tensorcomm`.
//!
//! Objects are returned as opaque handles that the caller releases with the
//! matching `*_free` function. Every fallible call returns a [`TcmStatus`];
//! the message of the last failure on the calling thread is available from
//! [`tcm_last_error_message`]. Complex buffers are interleaved `re, im`
//! pairs of `double`, row-major.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tensorcomm::{
    apply_swap, commutation_matrix, full_report, rect_gellmann, structure_constants, tcm_by_rule,
    Complex, ComplexMatrix, Error, GellMannSystem, Method, StructureConstants,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcmStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Dimension = 3,
    Index = 4,
    Size = 5,
    Decomposition = 6,
    BufferTooSmall = 7,
    Internal = 8,
}

/// Construction used by [`tcm_commutation_matrix`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcmMethod {
    Rule = 0,
    Elementary = 1,
    GellMann = 2,
}

impl From<TcmMethod> for Method {
    fn from(m: TcmMethod) -> Self {
        match m {
            TcmMethod::Rule => Method::Rule,
            TcmMethod::Elementary => Method::Elementary,
            TcmMethod::GellMann => Method::GellMann,
        }
    }
}

/// Opaque dense complex matrix.
pub struct TcmMatrix(ComplexMatrix);

/// Opaque rectangular Gell-Mann system.
pub struct TcmGellMannSystem(GellMannSystem);

/// Opaque structure-constant tensor.
pub struct TcmStructureConstants(StructureConstants);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> TcmStatus {
    match e {
        Error::Domain(_) | Error::Parse { .. } | Error::Json(_) | Error::Io(_) => TcmStatus::Domain,
        Error::Dimension { .. } => TcmStatus::Dimension,
        Error::Index { .. } => TcmStatus::Index,
        Error::Size { .. } => TcmStatus::Size,
        Error::Decomposition { .. } => TcmStatus::Decomposition,
    }
}

fn fail(status: TcmStatus, msg: impl Into<String>) -> TcmStatus {
    set_last_error(msg);
    status
}

/// Runs `f`, converting errors and panics into status codes.
fn guard<F>(f: F) -> TcmStatus
where
    F: FnOnce() -> Result<(), TcmStatus>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TcmStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(TcmStatus::Internal, "panic inside tensorcomm"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, TcmStatus>;
}

impl<T> OrStatus<T> for tensorcomm::Result<T> {
    fn or_status(self) -> Result<T, TcmStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), TcmStatus> {
    if p.is_null() {
        Err(fail(TcmStatus::NullPointer, format!("{what} is NULL")))
    } else {
        Ok(())
    }
}

fn check_capacity(have: usize, need: usize) -> Result<(), TcmStatus> {
    if have < need {
        Err(fail(
            TcmStatus::BufferTooSmall,
            format!("buffer holds {have} values, {need} required"),
        ))
    } else {
        Ok(())
    }
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tcm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds `U_{n⊗p}` and stores a new handle in `*out`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn tcm_commutation_matrix(
    n: usize,
    p: usize,
    method: TcmMethod,
    out: *mut *mut TcmMatrix,
) -> TcmStatus {
    guard(|| {
        non_null(out, "out")?;
        let m = commutation_matrix(n, p, method.into()).or_status()?;
        *out = Box::into_raw(Box::new(TcmMatrix(m)));
        Ok(())
    })
}

/// Writes the 0-based row index of the 1 in every column of `U_{n⊗p}`
/// (`np` values) into `targets`.
///
/// # Safety
/// `targets` must point to `len` writable `size_t` values.
#[no_mangle]
pub unsafe extern "C" fn tcm_permutation_targets(
    n: usize,
    p: usize,
    targets: *mut usize,
    len: usize,
) -> TcmStatus {
    guard(|| {
        non_null(targets, "targets")?;
        let spec = tcm_by_rule(n, p).or_status()?;
        check_capacity(len, spec.size())?;
        let dst = std::slice::from_raw_parts_mut(targets, spec.size());
        dst.copy_from_slice(spec.targets());
        Ok(())
    })
}

/// Matrix-free `output = U_{n⊗p} · input`. `len` is the number of complex
/// entries (`np`); both buffers hold `2 * len` doubles.
///
/// # Safety
/// `input` must point to `2 * len` readable doubles and `output` to
/// `2 * len` writable doubles; the two must not overlap.
#[no_mangle]
pub unsafe extern "C" fn tcm_apply_swap(
    n: usize,
    p: usize,
    input: *const f64,
    output: *mut f64,
    len: usize,
) -> TcmStatus {
    guard(|| {
        non_null(input, "input")?;
        non_null(output, "output")?;
        let raw = std::slice::from_raw_parts(input, 2 * len);
        let v: Vec<Complex> = raw.chunks_exact(2).map(|c| Complex::new(c[0], c[1])).collect();
        let w = apply_swap(n, p, &v).or_status()?;
        let dst = std::slice::from_raw_parts_mut(output, 2 * len);
        for (pair, z) in dst.chunks_exact_mut(2).zip(&w) {
            pair[0] = z.re;
            pair[1] = z.im;
        }
        Ok(())
    })
}

/// Number of rows, or 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tcm_matrix_rows(m: *const TcmMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.rows())
}

/// Number of columns, or 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tcm_matrix_cols(m: *const TcmMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.cols())
}

/// Entry at 1-based `(i, j)`.
///
/// # Safety
/// `m` must be a live handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tcm_matrix_get(
    m: *const TcmMatrix,
    i: usize,
    j: usize,
    re: *mut f64,
    im: *mut f64,
) -> TcmStatus {
    guard(|| {
        non_null(m, "matrix")?;
        non_null(re, "re")?;
        non_null(im, "im")?;
        let z = (*m).0.get(i, j).or_status()?;
        *re = z.re;
        *im = z.im;
        Ok(())
    })
}

/// Copies all entries, row-major and interleaved, into `buf` (`len`
/// doubles, at least `2 * rows * cols`).
///
/// # Safety
/// `m` must be a live handle and `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn tcm_matrix_copy(m: *const TcmMatrix, buf: *mut f64, len: usize) -> TcmStatus {
    guard(|| {
        non_null(m, "matrix")?;
        non_null(buf, "buf")?;
        let src = (*m).0.as_slice();
        check_capacity(len, 2 * src.len())?;
        let dst = std::slice::from_raw_parts_mut(buf, 2 * src.len());
        for (pair, z) in dst.chunks_exact_mut(2).zip(src) {
            pair[0] = z.re;
            pair[1] = z.im;
        }
        Ok(())
    })
}

/// # Safety
/// `m` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tcm_matrix_free(m: *mut TcmMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Builds the `n×p` Gell-Mann system.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn tcm_gellmann_new(
    n: usize,
    p: usize,
    out: *mut *mut TcmGellMannSystem,
) -> TcmStatus {
    guard(|| {
        non_null(out, "out")?;
        let sys = rect_gellmann(n, p).or_status()?;
        *out = Box::into_raw(Box::new(TcmGellMannSystem(sys)));
        Ok(())
    })
}

/// Number of matrices (`np - 1`), or 0 for NULL.
///
/// # Safety
/// `sys` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tcm_gellmann_len(sys: *const TcmGellMannSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.0.len())
}

/// Copies `Λ_a` (1-based `a`) into a new matrix handle.
///
/// # Safety
/// `sys` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tcm_gellmann_lambda(
    sys: *const TcmGellMannSystem,
    a: usize,
    out: *mut *mut TcmMatrix,
) -> TcmStatus {
    guard(|| {
        non_null(sys, "system")?;
        non_null(out, "out")?;
        let m = (*sys).0.lambda(a).or_status()?.clone();
        *out = Box::into_raw(Box::new(TcmMatrix(m)));
        Ok(())
    })
}

/// Copies the padded identity into a new matrix handle.
///
/// # Safety
/// `sys` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tcm_gellmann_padded_identity(
    sys: *const TcmGellMannSystem,
    out: *mut *mut TcmMatrix,
) -> TcmStatus {
    guard(|| {
        non_null(sys, "system")?;
        non_null(out, "out")?;
        let m = (*sys).0.padded_identity().clone();
        *out = Box::into_raw(Box::new(TcmMatrix(m)));
        Ok(())
    })
}

/// # Safety
/// `sys` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tcm_gellmann_free(sys: *mut TcmGellMannSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Extracts the structure constants of the `n×p` system (`p >= n`).
/// Fails with `DECOMPOSITION` if some pair does not expand within `tol`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tcm_structure_constants_new(
    n: usize,
    p: usize,
    tol: f64,
    out: *mut *mut TcmStructureConstants,
) -> TcmStatus {
    guard(|| {
        non_null(out, "out")?;
        let f = structure_constants(n, p, tol).or_status()?;
        *out = Box::into_raw(Box::new(TcmStructureConstants(f)));
        Ok(())
    })
}

/// `f[a, b, c]` with 1-based indices.
///
/// # Safety
/// `f` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn tcm_structure_constant(
    f: *const TcmStructureConstants,
    a: usize,
    b: usize,
    c: usize,
    value: *mut f64,
) -> TcmStatus {
    guard(|| {
        non_null(f, "structure constants")?;
        non_null(value, "value")?;
        let f = &(*f).0;
        let (k, m) = (f.system_len(), f.square_len());
        if a == 0 || b == 0 || c == 0 || a > k || b > k || c > m {
            return Err(fail(
                TcmStatus::Index,
                format!("({a}, {b}, {c}) outside 1..={k} x 1..={k} x 1..={m}"),
            ));
        }
        *value = f.get(a, b, c);
        Ok(())
    })
}

/// Largest expansion residual over all pairs, or NaN for NULL.
///
/// # Safety
/// `f` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tcm_structure_constants_max_residual(f: *const TcmStructureConstants) -> f64 {
    f.as_ref().map_or(f64::NAN, |f| f.0.max_residual)
}

/// # Safety
/// `f` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tcm_structure_constants_free(f: *mut TcmStructureConstants) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Runs the full verification over `2..=n_max × 2..=p_max`. Stores the CLI
/// exit code (0 pass, 1 violation) in `*exit_code` and, when `json` is not
/// NULL, a JSON report that must be released with [`tcm_string_free`].
///
/// # Safety
/// `exit_code` must be writable; `json` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn tcm_verify(
    n_max: usize,
    p_max: usize,
    tol: f64,
    exit_code: *mut i32,
    json: *mut *mut c_char,
) -> TcmStatus {
    guard(|| {
        non_null(exit_code, "exit_code")?;
        let report = full_report(n_max, p_max, tol).or_status()?;
        *exit_code = report.exit_code();
        if !json.is_null() {
            let text = report.to_json().or_status()?;
            let c = CString::new(text).map_err(|e| fail(TcmStatus::Internal, e.to_string()))?;
            *json = c.into_raw();
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tcm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
