//! The unit-circle counterpart of the interval problem.
//!
//! Substituting `x = (z + 1/z)/2` turns the interval problem with weight
//! `(1-x)^ρα (1+x)^ρβ` into a minimax problem over `|z| = 1` for
//! `(z-1)^{2ρα-1} (z+1)^{2ρβ-1} Q(z)` with `Q` monic of degree `2n+1`. The
//! minimizer comes from differentiating `(z-1)^{2ρα} (z+1)^{2ρβ} R(z)`, where
//! `R` collects the interval roots mapped onto the circle, and the two norms
//! satisfy `C_n = 2^{n+ρα+ρβ-1} I_n`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::bounds::weight_sup_bound;
use crate::error::{Error, Result};
use crate::maxsearch;
use crate::minimax::{solve, ChebyshevSolution, SolveOptions};
use crate::poly::{ComplexPolynomial, RealPolynomial};
use crate::special::WeightParams;

/// `R(z) = Π (z² - 2 cos θ_k z + 1)`.
pub fn angles_to_real_poly(angles: &[f64]) -> RealPolynomial {
    angles.iter().fold(RealPolynomial::one(), |acc, &t| {
        acc.mul(&RealPolynomial::new(vec![1.0, -2.0 * t.cos(), 1.0]))
    })
}

/// `(z-1)^exp_plus (z+1)^exp_minus poly(z)`, evaluated in modulus on `|z| = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircleFunction {
    pub exp_plus: f64,
    pub exp_minus: f64,
    pub poly: RealPolynomial,
}

impl CircleFunction {
    /// Modulus at `z = e^{iφ}`.
    pub fn modulus(&self, phi: f64) -> f64 {
        let half = 0.5 * phi;
        let to_plus = (2.0 * half.sin()).abs();
        let to_minus = (2.0 * half.cos()).abs();
        pow0(to_plus, self.exp_plus) * pow0(to_minus, self.exp_minus) * self.poly.eval_complex(Complex64::from_polar(1.0, phi)).norm()
    }

    fn complexity(&self) -> f64 {
        self.poly.degree().unwrap_or(0) as f64 + self.exp_plus + self.exp_minus + 4.0
    }
}

fn pow0(base: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else {
        base.powf(e)
    }
}

/// Circle minimizer built from interval roots `x_k` of the degree-`n`
/// weighted Chebyshev polynomial. Requires `ρα, ρβ ≥ 1/2`.
pub fn circle_minimizer(w: WeightParams, roots: &[f64]) -> Result<CircleFunction> {
    if w.rho_a < 0.5 || w.rho_b < 0.5 {
        return Err(Error::Domain(format!(
            "circle correspondence needs both exponents >= 1/2, got ({}, {})",
            w.rho_a, w.rho_b
        )));
    }
    if roots.iter().any(|x| !(-1.0..=1.0).contains(x)) {
        return Err(Error::Domain("interval roots must lie in [-1, 1]".into()));
    }
    let n = roots.len();
    let angles: Vec<f64> = roots.iter().map(|x| x.acos()).collect();
    let r = angles_to_real_poly(&angles);
    let (a2, b2) = (2.0 * w.rho_a, 2.0 * w.rho_b);
    let plus = RealPolynomial::new(vec![1.0, 1.0]).scale(a2);
    let minus = RealPolynomial::new(vec![-1.0, 1.0]).scale(b2);
    let z2m1 = RealPolynomial::new(vec![-1.0, 0.0, 1.0]);
    let q = plus
        .add(&minus)
        .mul(&r)
        .add(&z2m1.mul(&r.derivative()))
        .scale(1.0 / (a2 + b2 + 2.0 * n as f64));
    Ok(CircleFunction {
        exp_plus: a2 - 1.0,
        exp_minus: b2 - 1.0,
        poly: q,
    })
}

pub fn circle_minimizer_from_interval(w: WeightParams, sol: &ChebyshevSolution) -> Result<CircleFunction> {
    if sol.weight != w {
        return Err(Error::Domain("solution was computed for a different weight".into()));
    }
    let roots = sol
        .poly
        .roots
        .as_ref()
        .ok_or_else(|| Error::Domain("solution carries no roots".into()))?;
    circle_minimizer(w, roots)
}

/// Maximum modulus over `|z| = 1`. The φ-grid starts at
/// `max(grid, 4096)` points and doubles until successive maxima agree to `1e-10`.
pub fn circle_sup(f: &CircleFunction, grid: usize) -> Result<f64> {
    let minimum = (10.0 * f.complexity()).ceil() as usize;
    if grid < minimum {
        return Err(Error::Domain(format!("grid must be at least {minimum}")));
    }
    // Real coefficients make the modulus symmetric under φ ↦ -φ.
    let mut samples = grid.max(4096);
    let mut prev = maxsearch::maximize(|p| f.modulus(p), 0.0, PI, samples).1;
    for _ in 0..8 {
        samples *= 2;
        let next = maxsearch::maximize(|p| f.modulus(p), 0.0, PI, samples).1;
        let agreed = (next - prev).abs() <= 1e-10 * next.max(1.0);
        prev = prev.max(next);
        if agreed {
            break;
        }
    }
    Ok(prev)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CnRelation {
    pub c_n: f64,
    pub i_n: f64,
    pub ratio_defect: f64,
}

/// Computes both sides of `C_n = 2^{n+ρα+ρβ-1} I_n`.
pub fn verify_cn_relation(w: WeightParams, n: usize) -> Result<CnRelation> {
    let (f, i_n) = if n == 0 {
        (circle_minimizer(w, &[])?, weight_sup_bound(w))
    } else {
        let sol = solve(w, n, &SolveOptions::default())?;
        (circle_minimizer_from_interval(w, &sol)?, sol.norm)
    };
    let grid = (10.0 * f.complexity()).ceil() as usize;
    let c_n = circle_sup(&f, grid)?;
    let predicted = 2f64.powf(n as f64 + w.rho_a + w.rho_b - 1.0) * i_n;
    Ok(CnRelation {
        c_n,
        i_n,
        ratio_defect: (c_n - predicted).abs() / c_n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErdosLax {
    pub lhs: f64,
    pub rhs: f64,
}

impl ErdosLax {
    pub fn relative_defect(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.rhs
    }
}

/// For `F(z) = Π (z - e^{iφ_j})^{s_j}` with every `s_j ≥ 1`, returns
/// `max |F'|` and `(Σ s_j)/2 · max |F|` over the unit circle.
pub fn erdos_lax_check(angles: &[f64], exponents: &[f64]) -> Result<ErdosLax> {
    if angles.len() != exponents.len() || angles.is_empty() {
        return Err(Error::Domain("need one exponent per angle and at least one zero".into()));
    }
    if exponents.iter().any(|&s| !(s.is_finite() && s >= 1.0)) {
        return Err(Error::Domain("all exponents must be >= 1".into()));
    }
    let zeros: Vec<Complex64> = angles.iter().map(|&a| Complex64::from_polar(1.0, a)).collect();
    let total: f64 = exponents.iter().sum();

    let modulus = |psi: f64| -> f64 {
        zeros
            .iter()
            .zip(exponents)
            .map(|(&zeta, &s)| (Complex64::from_polar(1.0, psi) - zeta).norm().powf(s))
            .product()
    };
    // |F'| = |Σ_j s_j |z-ζ_j|^{s_j-1} e^{-i arg(z-ζ_j)} Π_{i≠j} |z-ζ_i|^{s_i}|,
    // which stays finite and exact at the zeros themselves.
    let derivative = |psi: f64| -> f64 {
        let z = Complex64::from_polar(1.0, psi);
        let diffs: Vec<Complex64> = zeros.iter().map(|&zeta| z - zeta).collect();
        let mut sum = Complex64::new(0.0, 0.0);
        for (j, (&d, &s)) in diffs.iter().zip(exponents).enumerate() {
            let r = d.norm();
            let own = if s == 1.0 { 1.0 } else { r.powf(s - 1.0) };
            let others: f64 = diffs
                .iter()
                .zip(exponents)
                .enumerate()
                .filter(|(i, _)| *i != j)
                .map(|(_, (&di, &si))| di.norm().powf(si))
                .product();
            let phase = if r > 0.0 { d.conj() / r } else { Complex64::new(1.0, 0.0) };
            sum += s * own * others * phase;
        }
        sum.norm()
    };

    let samples = 200 * (angles.len() + total.ceil() as usize) + 20_000;
    let lhs = maxsearch::maximize(derivative, 0.0, 2.0 * PI, samples).1;
    let max_f = maxsearch::maximize(modulus, 0.0, 2.0 * PI, samples).1;
    Ok(ErdosLax {
        lhs,
        rhs: 0.5 * total * max_f,
    })
}

/// `z Π (z - a_k) - Π (1 - conj(a_k) z)`; all its zeros lie on `|z| = 1`.
pub fn polya_szego_combine(points: &[Complex64]) -> Result<ComplexPolynomial> {
    if points.iter().any(|a| a.norm().is_nan() || a.norm() > 1.0) {
        return Err(Error::Domain("all points must satisfy |a| <= 1".into()));
    }
    let mut shifted = vec![Complex64::new(0.0, 0.0)];
    shifted.extend(ComplexPolynomial::from_roots(points).coeffs);
    let first = ComplexPolynomial::new(shifted);
    // Π (1 - conj(a) z) has coefficients of Π (z - a) reversed and conjugated.
    let second = ComplexPolynomial::new(ComplexPolynomial::from_roots(points).coeffs.iter().rev().map(|c| c.conj()).collect());
    Ok(first.sub(&second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn wp(a: f64, b: f64) -> WeightParams {
        WeightParams::new(a, b).unwrap()
    }

    #[test]
    fn real_poly_from_angles() {
        assert_eq!(angles_to_real_poly(&[]).coeffs, vec![1.0]);
        let p = angles_to_real_poly(&[PI / 2.0]);
        assert_eq!(p.coeffs.len(), 3);
        assert!(p.coeffs[1].abs() < 1e-15);
        let p = angles_to_real_poly(&[PI / 3.0, 2.0 * PI / 3.0]);
        let expect = [1.0, 0.0, 1.0, 0.0, 1.0];
        for (a, b) in p.coeffs.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn degree_zero_minimizers() {
        let f = circle_minimizer(wp(0.5, 0.5), &[]).unwrap();
        assert_eq!((f.exp_plus, f.exp_minus), (0.0, 0.0));
        assert_eq!(f.poly.coeffs, vec![0.0, 1.0]);
        let f = circle_minimizer(wp(1.0, 1.0), &[]).unwrap();
        assert_eq!((f.exp_plus, f.exp_minus), (1.0, 1.0));
        assert_eq!(f.poly.coeffs, vec![0.0, 1.0]);
        assert_relative_eq!(circle_sup(&f, 100).unwrap(), 2.0, max_relative = 1e-12);
        assert!(circle_minimizer(wp(0.4, 1.0), &[]).is_err());
    }

    #[test]
    fn circle_sup_examples() {
        let f = CircleFunction { exp_plus: 0.0, exp_minus: 0.0, poly: RealPolynomial::new(vec![-1.0, 0.0, 1.0]) };
        assert_relative_eq!(circle_sup(&f, 100).unwrap(), 2.0, max_relative = 1e-12);
        let f = CircleFunction { exp_plus: 0.0, exp_minus: 0.0, poly: RealPolynomial::new(vec![-0.3, 1.0]) };
        assert_relative_eq!(circle_sup(&f, 100).unwrap(), 1.3, max_relative = 1e-12);
        assert!(circle_sup(&f, 10).is_err());
    }

    #[test]
    fn minimizer_from_quadratic_weight_solution() {
        let w = wp(1.0, 1.0);
        let sol = solve(w, 1, &SolveOptions::default()).unwrap();
        let f = circle_minimizer_from_interval(w, &sol).unwrap();
        assert_eq!(f.poly.degree(), Some(3));
        assert_relative_eq!(f.poly.leading(), 1.0, max_relative = 1e-15);
        let c = circle_sup(&f, 1000).unwrap();
        assert_relative_eq!(c, 8.0 / (3.0 * 3f64.sqrt()), max_relative = 1e-9);
    }

    #[test]
    fn cn_relation_small_cases() {
        let r = verify_cn_relation(wp(0.5, 0.5), 0).unwrap();
        assert_relative_eq!(r.c_n, 1.0, max_relative = 1e-12);
        assert_relative_eq!(r.i_n, 1.0);
        assert!(r.ratio_defect < 1e-12);
        let r = verify_cn_relation(wp(1.0, 1.0), 0).unwrap();
        assert_relative_eq!(r.c_n, 2.0, max_relative = 1e-12);
        assert!(r.ratio_defect <= 1e-9);
        let r = verify_cn_relation(wp(0.75, 1.0), 2).unwrap();
        assert!(r.ratio_defect <= 1e-6, "{r:?}");
    }

    #[test]
    fn erdos_lax_examples() {
        let r = erdos_lax_check(&[0.0, PI], &[1.0, 1.0]).unwrap();
        assert_relative_eq!(r.lhs, 2.0, max_relative = 1e-10);
        assert_relative_eq!(r.rhs, 2.0, max_relative = 1e-10);
        let r = erdos_lax_check(&[0.0], &[2.0]).unwrap();
        assert_relative_eq!(r.lhs, 4.0, max_relative = 1e-10);
        assert_relative_eq!(r.rhs, 4.0, max_relative = 1e-10);
        assert!(erdos_lax_check(&[0.0], &[0.5]).is_err());
    }

    #[test]
    fn polya_szego_examples() {
        let p = polya_szego_combine(&[Complex64::new(0.0, 0.0)]).unwrap();
        assert_eq!(p.coeffs, vec![Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        let p = polya_szego_combine(&[Complex64::new(0.5, 0.0)]).unwrap();
        assert_eq!(p.coeffs, vec![Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        let p = polya_szego_combine(&[Complex64::new(0.0, 0.5)]).unwrap();
        let expect = [Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0), Complex64::new(1.0, 0.0)];
        for (a, b) in p.coeffs.iter().zip(expect) {
            assert!((a - b).norm() < 1e-15);
        }
        for r in p.roots().unwrap() {
            assert!((r.norm() - 1.0).abs() < 1e-12);
        }
        assert!(polya_szego_combine(&[Complex64::new(1.1, 0.0)]).is_err());
    }
}
