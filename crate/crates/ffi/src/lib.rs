//! C ABI over `widom-core`.
//!
//! Every fallible function returns a [`WidomStatus`]; on failure a message is
//! available from [`widom_last_error`] on the calling thread. Solutions are
//! opaque handles released with [`widom_solution_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use widom_core::bounds;
use widom_core::minimax::{solve, ChebyshevSolution, SolveOptions};
use widom_core::special::{JacobiParams, WeightParams};
use widom_core::widom::{classify, Classification};
use widom_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WidomStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    NonConvergence = 3,
    Degenerate = 4,
    ExchangeFailure = 5,
    RootFailure = 6,
    BufferTooSmall = 7,
    PropertyViolation = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WidomClassification {
    Increasing = 0,
    Decreasing = 1,
    Constant = 2,
    NonMonotone = 3,
}

impl From<Classification> for WidomClassification {
    fn from(c: Classification) -> Self {
        match c {
            Classification::Increasing => Self::Increasing,
            Classification::Decreasing => Self::Decreasing,
            Classification::Constant => Self::Constant,
            Classification::NonMonotone => Self::NonMonotone,
        }
    }
}

/// Opaque handle to a solved weighted Chebyshev problem.
pub struct WidomSolution {
    inner: ChebyshevSolution,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> WidomStatus {
    match e {
        Error::Domain(_) => WidomStatus::Domain,
        Error::NonConvergence { .. } => WidomStatus::NonConvergence,
        Error::Degenerate(_) => WidomStatus::Degenerate,
        Error::ExchangeFailure { .. } => WidomStatus::ExchangeFailure,
        Error::RootNotConverged { .. } => WidomStatus::RootFailure,
        Error::PropertyViolation(_) => WidomStatus::PropertyViolation,
    }
}

/// Runs `f`, recording errors and converting panics into `Panic`.
fn guard<F: FnOnce() -> Result<(), (WidomStatus, String)>>(f: F) -> WidomStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WidomStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            WidomStatus::Panic
        }
    }
}

fn core_err(e: Error) -> (WidomStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (WidomStatus, String) {
    (WidomStatus::NullPointer, format!("{name} is null"))
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn widom_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Solves with default options (tolerance 1e-12, 60 iterations, grid factor 30).
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn widom_solve(rho_a: f64, rho_b: f64, degree: usize, out: *mut *mut WidomSolution) -> WidomStatus {
    let d = SolveOptions::default();
    widom_solve_with(rho_a, rho_b, degree, d.tolerance, d.max_iter, d.grid_factor, out)
}

/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn widom_solve_with(
    rho_a: f64,
    rho_b: f64,
    degree: usize,
    tolerance: f64,
    max_iter: usize,
    grid_factor: usize,
    out: *mut *mut WidomSolution,
) -> WidomStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let w = WeightParams::new(rho_a, rho_b).map_err(core_err)?;
        let opts = SolveOptions { tolerance, max_iter, grid_factor };
        let inner = solve(w, degree, &opts).map_err(core_err)?;
        *out = Box::into_raw(Box::new(WidomSolution { inner }));
        Ok(())
    })
}

/// # Safety
/// `sol` must be null or a handle from `widom_solve*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn widom_solution_free(sol: *mut WidomSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

unsafe fn with_solution<'a>(sol: *const WidomSolution) -> Option<&'a ChebyshevSolution> {
    sol.as_ref().map(|s| &s.inner)
}

/// Degree of the solution; 0 for a null handle.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn widom_solution_degree(sol: *const WidomSolution) -> usize {
    with_solution(sol).map_or(0, |s| s.degree())
}

/// `max |w p|`; NaN for a null handle.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn widom_solution_norm(sol: *const WidomSolution) -> f64 {
    with_solution(sol).map_or(f64::NAN, |s| s.norm)
}

/// `2ⁿ · norm`; NaN for a null handle.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn widom_solution_widom(sol: *const WidomSolution) -> f64 {
    with_solution(sol).map_or(f64::NAN, |s| s.widom)
}

/// Relative levelling defect; NaN for a null handle.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn widom_solution_defect(sol: *const WidomSolution) -> f64 {
    with_solution(sol).map_or(f64::NAN, |s| s.levelling_defect)
}

unsafe fn copy_out(
    sol: *const WidomSolution,
    buf: *mut f64,
    len: usize,
    pick: impl FnOnce(&ChebyshevSolution) -> Vec<f64>,
) -> WidomStatus {
    guard(|| {
        let s = with_solution(sol).ok_or_else(|| null("solution"))?;
        if buf.is_null() {
            return Err(null("buffer"));
        }
        let v = pick(s);
        if len < v.len() {
            return Err((WidomStatus::BufferTooSmall, format!("buffer holds {len} values, need {}", v.len())));
        }
        ptr::copy_nonoverlapping(v.as_ptr(), buf, v.len());
        Ok(())
    })
}

/// Writes the `degree` roots, increasing.
///
/// # Safety
/// `buf` must be valid for `len` writes; `sol` a live handle.
#[no_mangle]
pub unsafe extern "C" fn widom_solution_roots(sol: *const WidomSolution, buf: *mut f64, len: usize) -> WidomStatus {
    copy_out(sol, buf, len, |s| s.poly.roots.clone().unwrap_or_default())
}

/// Writes the `degree + 1` alternation points, increasing.
///
/// # Safety
/// `buf` must be valid for `len` writes; `sol` a live handle.
#[no_mangle]
pub unsafe extern "C" fn widom_solution_reference(sol: *const WidomSolution, buf: *mut f64, len: usize) -> WidomStatus {
    copy_out(sol, buf, len, |s| s.reference.clone())
}

/// Writes the `degree + 1` power-basis coefficients, ascending.
///
/// # Safety
/// `buf` must be valid for `len` writes; `sol` a live handle.
#[no_mangle]
pub unsafe extern "C" fn widom_solution_coefficients(sol: *const WidomSolution, buf: *mut f64, len: usize) -> WidomStatus {
    copy_out(sol, buf, len, |s| s.poly.power_coeffs())
}

/// `W_n(ρα, ρβ)`.
///
/// # Safety
/// `out` must be null or valid for one write.
#[no_mangle]
pub unsafe extern "C" fn widom_widom_factor(rho_a: f64, rho_b: f64, n: usize, out: *mut f64) -> WidomStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let w = WeightParams::new(rho_a, rho_b).map_err(core_err)?;
        *out = widom_core::widom::widom_factor(w, n).map_err(core_err)?;
        Ok(())
    })
}

/// The upper bound `M_n(α, β)` for `α, β ∈ [-1/2, 1/2]`.
///
/// # Safety
/// `out` must be null or valid for one write.
#[no_mangle]
pub unsafe extern "C" fn widom_m_bound(alpha: f64, beta: f64, n: usize, out: *mut f64) -> WidomStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = JacobiParams::new(alpha, beta).map_err(core_err)?;
        *out = bounds::m_bound(p, n).map_err(core_err)?;
        Ok(())
    })
}

/// `2^{1-ρα-ρβ}`; NaN for invalid exponents.
#[no_mangle]
pub extern "C" fn widom_asymptote(rho_a: f64, rho_b: f64) -> f64 {
    WeightParams::new(rho_a, rho_b).map_or(f64::NAN, bounds::asymptote)
}

/// Maximum of the weight on `[-1, 1]`; NaN for invalid exponents.
#[no_mangle]
pub extern "C" fn widom_weight_sup_bound(rho_a: f64, rho_b: f64) -> f64 {
    WeightParams::new(rho_a, rho_b).map_or(f64::NAN, bounds::weight_sup_bound)
}

/// Classifies `len` values with relative tolerance `tol`.
///
/// # Safety
/// `values` must be valid for `len` reads and `out` for one write.
#[no_mangle]
pub unsafe extern "C" fn widom_classify(
    values: *const f64,
    len: usize,
    tol: f64,
    out: *mut WidomClassification,
) -> WidomStatus {
    guard(|| {
        if values.is_null() {
            return Err(null("values"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        if len < 2 {
            return Err((WidomStatus::Domain, "classification needs at least 2 values".into()));
        }
        let v = std::slice::from_raw_parts(values, len);
        *out = classify(v, tol).into();
        Ok(())
    })
}
