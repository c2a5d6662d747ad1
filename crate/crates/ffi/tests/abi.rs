use std::ffi::CStr;
use std::ptr;

use widom_ffi::*;

fn last_error() -> Option<String> {
    let p = widom_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[test]
fn solve_and_read_back() {
    let mut sol = ptr::null_mut();
    let st = unsafe { widom_solve(1.0, 1.0, 3, &mut sol) };
    assert_eq!(st, WidomStatus::Ok);
    assert!(!sol.is_null());
    assert!(last_error().is_none());
    unsafe {
        assert_eq!(widom_solution_degree(sol), 3);
        let norm = widom_solution_norm(sol);
        assert!((widom_solution_widom(sol) - 8.0 * norm).abs() < 1e-15);
        assert!(widom_solution_defect(sol) <= 1e-12);

        let mut roots = [0.0; 3];
        assert_eq!(widom_solution_roots(sol, roots.as_mut_ptr(), 3), WidomStatus::Ok);
        assert!(roots.windows(2).all(|w| w[0] < w[1]));
        assert!(roots[1].abs() < 1e-14);

        let mut refs = [0.0; 4];
        assert_eq!(widom_solution_reference(sol, refs.as_mut_ptr(), 4), WidomStatus::Ok);
        assert!(refs.iter().all(|x| x.abs() < 1.0));

        let mut coeffs = [0.0; 4];
        assert_eq!(widom_solution_coefficients(sol, coeffs.as_mut_ptr(), 4), WidomStatus::Ok);
        assert!((coeffs[3] - 1.0).abs() < 1e-14);

        widom_solution_free(sol);
    }
}

#[test]
fn buffer_too_small() {
    let mut sol = ptr::null_mut();
    unsafe {
        assert_eq!(widom_solve(0.5, 0.5, 4, &mut sol), WidomStatus::Ok);
        let mut buf = [0.0; 4];
        assert_eq!(widom_solution_reference(sol, buf.as_mut_ptr(), 4), WidomStatus::BufferTooSmall);
        assert!(last_error().unwrap().contains("need 5"));
        widom_solution_free(sol);
    }
}

#[test]
fn null_pointers() {
    unsafe {
        assert_eq!(widom_solve(1.0, 1.0, 2, ptr::null_mut()), WidomStatus::NullPointer);
        assert!(last_error().is_some());
        assert_eq!(widom_solution_degree(ptr::null()), 0);
        assert!(widom_solution_norm(ptr::null()).is_nan());
        let mut buf = [0.0; 2];
        assert_eq!(widom_solution_roots(ptr::null(), buf.as_mut_ptr(), 2), WidomStatus::NullPointer);
        widom_solution_free(ptr::null_mut());

        let mut out = 0.0;
        assert_eq!(widom_widom_factor(1.0, 1.0, 2, ptr::null_mut()), WidomStatus::NullPointer);
        assert_eq!(widom_m_bound(0.0, 0.0, 1, ptr::null_mut()), WidomStatus::NullPointer);
        assert_eq!(widom_classify(ptr::null(), 3, 1e-9, ptr::null_mut()), WidomStatus::NullPointer);
        assert_eq!(widom_widom_factor(1.0, 1.0, 2, &mut out), WidomStatus::Ok);
    }
}

#[test]
fn domain_errors() {
    let mut sol = ptr::null_mut();
    unsafe {
        assert_eq!(widom_solve(-0.1, 1.0, 2, &mut sol), WidomStatus::Domain);
        assert!(sol.is_null());
        assert_eq!(widom_solve(1.0, 1.0, 0, &mut sol), WidomStatus::Domain);
        let mut out = 0.0;
        assert_eq!(widom_m_bound(0.9, 0.0, 1, &mut out), WidomStatus::Domain);
    }
    assert!(widom_asymptote(f64::NAN, 0.0).is_nan());
    assert!(widom_weight_sup_bound(-1.0, 0.0).is_nan());
}

#[test]
fn scalar_functions() {
    assert!((widom_asymptote(0.5, 0.5) - 1.0).abs() < 1e-15);
    assert!((widom_weight_sup_bound(1.0, 1.0) - 1.0).abs() < 1e-15);
    let mut m1 = 0.0;
    unsafe {
        assert_eq!(widom_m_bound(0.0, 0.0, 1, &mut m1), WidomStatus::Ok);
    }
    assert!((m1 - 1.302_940_03).abs() < 1e-8);

    // Chebyshev weight of the second kind gives W_n = 1 exactly.
    let mut w = 0.0;
    unsafe {
        assert_eq!(widom_widom_factor(0.5, 0.5, 6, &mut w), WidomStatus::Ok);
    }
    assert!((w - 1.0).abs() < 1e-10);
}

#[test]
fn classify_values() {
    let mut c = WidomClassification::Constant;
    let inc = [1.0, 1.1, 1.2];
    let non = [1.0, 1.2, 1.1];
    unsafe {
        assert_eq!(widom_classify(inc.as_ptr(), 3, 1e-9, &mut c), WidomStatus::Ok);
        assert_eq!(c, WidomClassification::Increasing);
        assert_eq!(widom_classify(non.as_ptr(), 3, 1e-9, &mut c), WidomStatus::Ok);
        assert_eq!(c, WidomClassification::NonMonotone);
        assert_eq!(widom_classify(inc.as_ptr(), 1, 1e-9, &mut c), WidomStatus::Domain);
    }
}

#[test]
fn header_declares_api() {
    let h = include_str!("../include/widom.h");
    for name in [
        "widom_solve(",
        "widom_solve_with(",
        "widom_solution_free(",
        "widom_solution_roots(",
        "widom_classify(",
        "widom_last_error(",
        "typedef struct WidomSolution WidomSolution;",
        "WIDOM_STATUS_BUFFER_TOO_SMALL",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}
