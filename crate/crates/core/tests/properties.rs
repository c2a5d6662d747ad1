use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use widom_core::bounds::{m_ratio, weight_sup_bound};
use widom_core::circle::polya_szego_combine;
use widom_core::widom::{classify, Classification, CLASSIFY_TOL};
use widom_core::{solve, JacobiParams, SolveOptions, WeightParams};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn weighted_error_alternates(a in 0.0..1.5f64, b in 0.0..1.5f64, n in 1usize..12) {
        let w = WeightParams::new(a, b).unwrap();
        let sol = solve(w, n, &SolveOptions::default()).unwrap();
        prop_assert_eq!(sol.reference.len(), n + 1);
        let errs: Vec<f64> = sol.reference.iter().map(|&x| sol.error_at(x)).collect();
        for pair in errs.windows(2) {
            prop_assert!(pair[0] * pair[1] < 0.0);
        }
        for e in &errs {
            prop_assert!((e.abs() - sol.norm).abs() <= 1e-9 * sol.norm);
        }
        prop_assert!(sol.lower_bound <= sol.norm * (1.0 + 1e-12));
        prop_assert!(sol.norm <= sol.lower_bound * (1.0 + 1e-9));
    }

    #[test]
    fn swapping_exponents_reflects_solution(a in 0.0..1.5f64, b in 0.0..1.5f64, n in 1usize..10) {
        let opts = SolveOptions::default();
        let s1 = solve(WeightParams::new(a, b).unwrap(), n, &opts).unwrap();
        let s2 = solve(WeightParams::new(b, a).unwrap(), n, &opts).unwrap();
        prop_assert!((s1.widom - s2.widom).abs() <= 1e-10 * s1.widom);
        let r1 = s1.poly.roots.clone().unwrap();
        let r2 = s2.poly.roots.clone().unwrap();
        for (x, y) in r1.iter().zip(r2.iter().rev()) {
            prop_assert!((x + y).abs() < 1e-8);
        }
    }

    #[test]
    fn first_widom_factor_below_weight_max(a in 0.5..1.5f64, b in 0.5..1.5f64) {
        let w = WeightParams::new(a, b).unwrap();
        let sol = solve(w, 1, &SolveOptions::default()).unwrap();
        prop_assert!(sol.widom <= weight_sup_bound(w) + 1e-9);
    }

    #[test]
    fn classification_is_scale_invariant(v in prop::collection::vec(0.1..10.0f64, 2..12), k in 0.01..100.0f64) {
        let scaled: Vec<f64> = v.iter().map(|x| x * k).collect();
        prop_assert_eq!(classify(&v, CLASSIFY_TOL), classify(&scaled, CLASSIFY_TOL));
    }

    #[test]
    fn reversal_swaps_direction(v in prop::collection::vec(0.1..10.0f64, 2..12)) {
        let rev: Vec<f64> = v.iter().rev().copied().collect();
        let expect = match classify(&v, CLASSIFY_TOL) {
            Classification::Increasing => Classification::Decreasing,
            Classification::Decreasing => Classification::Increasing,
            c => c,
        };
        prop_assert_eq!(classify(&rev, CLASSIFY_TOL), expect);
    }

    #[test]
    fn sorted_values_are_monotone(mut v in prop::collection::vec(0.1..10.0f64, 2..12)) {
        v.sort_by(f64::total_cmp);
        prop_assert_ne!(classify(&v, CLASSIFY_TOL), Classification::NonMonotone);
    }

    #[test]
    fn polya_szego_zeros_on_circle(pts in prop::collection::vec((0.0..0.99f64, 0.0..2.0 * PI), 1..8)) {
        let pts: Vec<Complex64> = pts.into_iter().map(|(r, t)| Complex64::from_polar(r, t)).collect();
        let p = polya_szego_combine(&pts).unwrap();
        prop_assert_eq!(p.degree(), Some(pts.len() + 1));
        for z in p.roots().unwrap() {
            prop_assert!((z.norm() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn bound_ratio_exceeds_one(alpha in -0.5..0.5f64, beta in -0.5..0.5f64, x in 1.0..1e4f64) {
        let p = JacobiParams::new(alpha, beta).unwrap();
        prop_assert!(m_ratio(p, x) >= 1.0 - 1e-15);
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn polya_szego_vanishes_at_plus_minus_one(
        real in -0.99..0.99f64,
        pairs in prop::collection::vec((0.0..0.99f64, 0.0..PI), 0..4),
    ) {
        // A conjugate-closed set of odd size.
        let mut pts = vec![Complex64::new(real, 0.0)];
        for (r, t) in pairs {
            let a = Complex64::from_polar(r, t);
            pts.push(a);
            pts.push(a.conj());
        }
        let p = polya_szego_combine(&pts).unwrap();
        prop_assert!(p.eval(Complex64::new(1.0, 0.0)).norm() < 1e-12);
        prop_assert!(p.eval(Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }
}
