//! Bernstein-type bounds for weighted monic Jacobi polynomials.
//!
//! For `α, β ∈ [-1/2, 1/2]` the Chow–Gatteschi–Wong inequality bounds the
//! trigonometrically weighted Jacobi polynomial; rewritten for the monic
//! normalization it yields the quantity [`m_bound`], an upper bound for the
//! Widom factor that increases monotonically to `2^{1-ρα-ρβ}`. The
//! monotonicity reduces to the sign of the coefficients returned by
//! [`c_coeffs`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{self, lgamma, JacobiParams, WeightParams};

const LN_2: f64 = std::f64::consts::LN_2;

fn check_square(p: JacobiParams, what: &str) -> Result<()> {
    let inside = |v: f64| (-0.5..=0.5).contains(&v);
    if inside(p.alpha) && inside(p.beta) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{what} is only asserted for α, β ∈ [-1/2, 1/2] (got α={}, β={})",
            p.alpha, p.beta
        )))
    }
}

/// `M_n(α, β)` in its simplified Gamma form
/// `2^{(1-α-β)/2} Γ(n+q+1) Γ(n+α+β+1) / [(n+(α+β+1)/2)^{q+1/2} Γ(n+(α+β+1)/2) Γ(n+(α+β)/2+1)]`.
pub fn m_bound(p: JacobiParams, n: usize) -> Result<f64> {
    check_square(p, "M_n")?;
    if n == 0 {
        return Err(Error::Domain("M_n requires n >= 1".into()));
    }
    Ok(log_m_bound(p, n as f64).exp())
}

fn log_m_bound(p: JacobiParams, n: f64) -> f64 {
    let q = p.q();
    let s = p.sum();
    let mid = n + 0.5 * (s + 1.0);
    0.5 * (1.0 - s) * LN_2 + lgamma(n + q + 1.0) + lgamma(n + s + 1.0)
        - (q + 0.5) * mid.ln()
        - lgamma(mid)
        - lgamma(n + 0.5 * s + 1.0)
}

/// The function `f` with `f(n) = M_{n+1} / M_n`, extended to real `x > 0`.
pub fn m_ratio(p: JacobiParams, x: f64) -> f64 {
    let q = p.q();
    let s = p.sum();
    let mid = x + 0.5 * (s + 1.0);
    (x + q + 1.0) * (x + s + 1.0) * mid.powf(q - 0.5)
        / ((x + 0.5 * s + 1.0) * (mid + 1.0).powf(q + 0.5))
}

/// Coefficients `(c0, c1, c2)` of the numerator of `f'/f` on the half
/// `α ≥ β`, as closed-form polynomials in `(α, β)`.
pub fn c_coeffs(p: JacobiParams) -> (f64, f64, f64) {
    let (a, b) = (p.alpha, p.beta);
    let c2 = a * a / 2.0 + b * b / 2.0 - 0.25;
    let c1 = 3.0 * a.powi(3) / 4.0 + (4.0 * b + 8.0) * a * a / 8.0 + (b * b - 1.0) * a / 4.0
        + b.powi(3) / 2.0
        + b * b
        - b / 4.0
        - 0.5;
    let c0 = a.powi(4) / 4.0
        + (3.0 * b + 6.0) * a.powi(3) / 8.0
        + (b + 2.0).powi(2) * a * a / 8.0
        + (b * b - 1.0) * (b + 2.0) * a / 8.0
        + b.powi(4) / 8.0
        + b.powi(3) / 2.0
        + 3.0 * b * b / 8.0
        - b / 4.0
        - 0.25;
    (c0, c1, c2)
}

/// Right-hand side of the Chow–Gatteschi–Wong inequality,
/// `Γ(q+1)/Γ(1/2) · C(n+q, n) · (n+(α+β+1)/2)^{-q-1/2}`.
pub fn cgw_rhs(p: JacobiParams, n: usize) -> Result<f64> {
    check_square(p, "the Chow–Gatteschi–Wong bound")?;
    if n == 0 {
        return Err(Error::Domain("cgw_rhs requires n >= 1".into()));
    }
    let q = p.q();
    let nf = n as f64;
    let ln_binom = lgamma(nf + q + 1.0) - lgamma(nf + 1.0) - lgamma(q + 1.0);
    let ln_sqrt_pi = 0.5 * std::f64::consts::PI.ln();
    let log = lgamma(q + 1.0) - ln_sqrt_pi + ln_binom - (q + 0.5) * (nf + 0.5 * (p.sum() + 1.0)).ln();
    Ok(log.exp())
}

/// Left-hand side of the Chow–Gatteschi–Wong inequality,
/// `sup_θ (sin θ/2)^{α+1/2} (cos θ/2)^{β+1/2} |P_n^{(α,β)}(cos θ)|`, obtained
/// from [`special::weighted_monic_jacobi_sup`] through
/// `(sin θ/2)^{α+1/2} = 2^{-ρα}(1-x)^{ρα}` and the monic normalization.
pub fn cgw_lhs(p: JacobiParams, n: usize) -> Result<f64> {
    let w = special::param_to_weight(p);
    let sup = special::weighted_monic_jacobi_sup(w, n)?;
    Ok(sup * 2f64.powf(-w.rho_a - w.rho_b) / special::monic_scale(p, n))
}

/// `2^{1-ρα-ρβ}`, the limit of every Widom factor sequence.
pub fn asymptote(w: WeightParams) -> f64 {
    2f64.powf(1.0 - w.rho_a - w.rho_b)
}

/// `max_{x∈[-1,1]} (1-x)^ρα (1+x)^ρβ = (2ρα/(ρα+ρβ))^ρα (2ρβ/(ρα+ρβ))^ρβ`,
/// attained at `x* = (ρβ-ρα)/(ρα+ρβ)`. This is also the degree-zero Widom factor.
pub fn weight_sup_bound(w: WeightParams) -> f64 {
    let total = w.rho_a + w.rho_b;
    if total == 0.0 {
        return 1.0;
    }
    (2.0 * w.rho_a / total).powf(w.rho_a) * (2.0 * w.rho_b / total).powf(w.rho_b)
}

/// Monotonicity report for `M_n` at one parameter pair.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub alpha: f64,
    pub beta: f64,
    /// First and last degree of `values`.
    pub n_range: (usize, usize),
    pub values: Vec<f64>,
    /// `M_{n+1} ≥ M_n` for every step in range (within rounding).
    pub monotone: bool,
    /// `f(n) > 1` at every step: the increase is strict.
    pub strict: bool,
    pub limit: f64,
    /// Largest decrease `M_n - M_{n+1}` or overshoot `M_n - limit`, floored at 0.
    pub max_violation: f64,
}

/// `|α| = |β| = 1/2`: the four corners where `M_n` is constant.
pub fn is_corner(p: JacobiParams) -> bool {
    (p.alpha.abs() - 0.5).abs() < 1e-14 && (p.beta.abs() - 0.5).abs() < 1e-14
}

/// Evaluates `M_1 ..= M_{n_max}` and checks the monotone approach to the limit.
pub fn m_bound_report(p: JacobiParams, n_max: usize) -> Result<BoundReport> {
    if n_max < 2 {
        return Err(Error::Domain("m_bound_report needs n_max >= 2".into()));
    }
    let values = (1..=n_max).map(|n| m_bound(p, n)).collect::<Result<Vec<_>>>()?;
    let limit = asymptote(special::param_to_weight(p));
    // Log-space evaluation loses about ulp(ln Γ(n)) ≈ n ln n · 2^-52 absolute.
    let slack = 1e-11 * limit;
    let mut max_violation = 0.0f64;
    let mut monotone = true;
    for pair in values.windows(2) {
        let drop = pair[0] - pair[1];
        if drop > slack {
            monotone = false;
        }
        max_violation = max_violation.max(drop);
    }
    for &v in &values {
        max_violation = max_violation.max(v - limit);
    }
    let strict = (1..n_max).all(|n| m_ratio(p, n as f64) - 1.0 > 8.0 * f64::EPSILON);
    Ok(BoundReport {
        alpha: p.alpha,
        beta: p.beta,
        n_range: (1, n_max),
        values,
        monotone,
        strict,
        limit,
        max_violation: max_violation.max(0.0),
    })
}

/// Result of sampling the coefficient lemma on `-1/2 ≤ β ≤ α ≤ 1/2`.
#[derive(Debug, Clone, Serialize)]
pub struct CoeffLemmaReport {
    pub samples: usize,
    pub points: usize,
    pub max_c0: f64,
    pub max_c1: f64,
    pub max_c2: f64,
    /// Largest positive part of any sampled coefficient, 0 when the lemma holds.
    pub max_violation: f64,
    /// Sampled points where some coefficient vanishes to within 1e-12.
    pub equality_points: Vec<(f64, f64)>,
    /// Points violating the lemma: a positive coefficient, or equality away from a vertex.
    pub offenders: Vec<(f64, f64)>,
    /// Largest gap between the edge factorizations and direct evaluation.
    pub boundary_mismatch: f64,
}

impl CoeffLemmaReport {
    pub fn passed(&self) -> bool {
        self.offenders.is_empty() && self.max_violation == 0.0 && self.boundary_mismatch <= 1e-12
    }

    pub fn into_result(self) -> Result<Self> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::PropertyViolation(format!(
                "coefficient lemma fails at {:?} (max violation {:e}, boundary mismatch {:e})",
                self.offenders, self.max_violation, self.boundary_mismatch
            )))
        }
    }
}

/// Closed-form restrictions of `c0` and `c1` to the three triangle edges,
/// each parametrized by `t ∈ [0, 1]`. Returns `((α, β), c0, c1)` per edge.
pub fn boundary_factorizations(t: f64) -> [((f64, f64), f64, f64); 3] {
    [
        (
            (0.5, t - 0.5),
            (t + 2.5) * (t + 1.0) * t * (t - 1.0) / 8.0,
            t * (t - 1.0) * (t / 2.0 + 7.0 / 8.0),
        ),
        (
            (t - 0.5, -0.5),
            t * (t - 1.0) * (t * t / 4.0 + 5.0 * t / 16.0 + 1.0 / 8.0),
            0.75 * t * (t - 1.0) * (t + 0.5),
        ),
        (
            (t - 0.5, t - 0.5),
            (t + 0.5).powi(2) * t * (t - 1.0),
            2.0 * (t + 0.5) * t * (t - 1.0),
        ),
    ]
}

/// Samples `c0, c1, c2` on a `samples × samples` lattice restricted to the
/// triangle `-1/2 ≤ β ≤ α ≤ 1/2`, and checks the edge factorizations at
/// `t ∈ {0, 1/4, 1/2, 3/4, 1}` plus `samples` equispaced values.
pub fn verify_coeff_lemma(samples: usize) -> Result<CoeffLemmaReport> {
    if samples < 2 {
        return Err(Error::Domain("verify_coeff_lemma needs at least 2 samples".into()));
    }
    const EQ_TOL: f64 = 1e-12;
    let step = 1.0 / (samples - 1) as f64;
    let mut report = CoeffLemmaReport {
        samples,
        points: 0,
        max_c0: f64::NEG_INFINITY,
        max_c1: f64::NEG_INFINITY,
        max_c2: f64::NEG_INFINITY,
        max_violation: 0.0,
        equality_points: Vec::new(),
        offenders: Vec::new(),
        boundary_mismatch: 0.0,
    };
    for i in 0..samples {
        let alpha = -0.5 + i as f64 * step;
        for j in 0..=i {
            let beta = -0.5 + j as f64 * step;
            let p = JacobiParams { alpha, beta };
            let (c0, c1, c2) = c_coeffs(p);
            report.points += 1;
            report.max_c0 = report.max_c0.max(c0);
            report.max_c1 = report.max_c1.max(c1);
            report.max_c2 = report.max_c2.max(c2);
            let worst = c0.max(c1).max(c2);
            let vertex = is_corner(p);
            if worst > EQ_TOL {
                report.max_violation = report.max_violation.max(worst);
                report.offenders.push((alpha, beta));
            } else if worst >= -EQ_TOL {
                report.equality_points.push((alpha, beta));
                if !vertex {
                    report.offenders.push((alpha, beta));
                }
            }
        }
    }

    let mut ts: Vec<f64> = vec![0.0, 0.25, 0.5, 0.75, 1.0];
    ts.extend((0..samples).map(|k| k as f64 * step));
    for t in ts {
        for ((alpha, beta), c0_edge, c1_edge) in boundary_factorizations(t) {
            let (c0, c1, _) = c_coeffs(JacobiParams { alpha, beta });
            report.boundary_mismatch = report
                .boundary_mismatch
                .max((c0 - c0_edge).abs())
                .max((c1 - c1_edge).abs());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn jp(a: f64, b: f64) -> JacobiParams {
        JacobiParams::new(a, b).unwrap()
    }

    /// `M_n` from its raw definition with binomials as finite products:
    /// `Γ(q+1) 2^{2n+(α+β+1)/2} C(n+q,n) / [√π (n+(α+β+1)/2)^{q+1/2} C(2n+α+β,n)]`.
    fn m_bound_raw(p: JacobiParams, n: usize) -> f64 {
        let (q, s) = (p.q(), p.sum());
        let nf = n as f64;
        let binom_q: f64 = (1..=n).map(|k| (q + k as f64) / k as f64).product();
        let binom_2n: f64 = (1..=n).map(|k| (nf + s + k as f64) / k as f64).product();
        let gamma_q1 = libm::tgamma(q + 1.0);
        gamma_q1 * 2f64.powf(2.0 * nf + 0.5 * (s + 1.0)) * binom_q
            / (std::f64::consts::PI.sqrt() * (nf + 0.5 * (s + 1.0)).powf(q + 0.5) * binom_2n)
    }

    #[test]
    fn m_bound_equals_raw_binomial_form() {
        for &a in &[-0.5, -0.3, 0.0, 0.2, 0.5] {
            for &b in &[-0.5, -0.1, 0.0, 0.4, 0.5] {
                for n in 1..=20 {
                    assert_relative_eq!(m_bound(jp(a, b), n).unwrap(), m_bound_raw(jp(a, b), n), max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn m_bound_examples() {
        for n in [1, 2, 7, 100, 10_000] {
            assert_relative_eq!(m_bound(jp(0.5, 0.5), n).unwrap(), 1.0, max_relative = 1e-10);
        }
        // √2 Γ(2) / (√(3/2) Γ(3/2))
        let direct = 2f64.sqrt() / (1.5f64.sqrt() * (0.5 * std::f64::consts::PI.sqrt()));
        assert_relative_eq!(m_bound(jp(0.0, 0.0), 1).unwrap(), direct, max_relative = 1e-14);
        assert_relative_eq!(direct, 1.302_940_03, max_relative = 1e-8);
        assert!((m_bound(jp(0.0, 0.0), 1_000_000).unwrap() - 2f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn m_bound_domain() {
        assert!(matches!(m_bound(jp(0.6, 0.0), 3), Err(Error::Domain(_))));
        assert!(matches!(m_bound(jp(0.0, 0.0), 0), Err(Error::Domain(_))));
        assert!(matches!(cgw_rhs(jp(0.0, -0.7), 3), Err(Error::Domain(_))));
    }

    #[test]
    fn m_ratio_examples() {
        for x in [0.1, 1.0, 17.5, 1e4] {
            assert_relative_eq!(m_ratio(jp(0.5, 0.5), x), 1.0, max_relative = 1e-14);
        }
        let p = jp(0.0, 0.0);
        let quotient = m_bound(p, 2).unwrap() / m_bound(p, 1).unwrap();
        assert_relative_eq!(m_ratio(p, 1.0), quotient, max_relative = 1e-13);
        assert_relative_eq!(m_ratio(p, 1.0), 2.0 / 3.75f64.sqrt(), max_relative = 1e-14);
        assert!((m_ratio(jp(0.2, -0.3), 1e6) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn m_ratio_matches_consecutive_quotients() {
        for &a in &[-0.5, -0.25, 0.0, 0.3, 0.5] {
            for &b in &[-0.5, -0.2, 0.0, 0.25, 0.5] {
                let p = jp(a, b);
                for n in 1..=50 {
                    let q = m_bound(p, n + 1).unwrap() / m_bound(p, n).unwrap();
                    assert!((m_ratio(p, n as f64) - q).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn c_coefficient_examples() {
        let (c0, c1, c2) = c_coeffs(jp(0.5, 0.5));
        assert_eq!(c2, 0.0);
        assert!(c1.abs() < 1e-15);
        assert!(c0.abs() < 1e-15);
        let (c0, _, c2) = c_coeffs(jp(0.0, 0.0));
        assert_eq!(c2, -0.25);
        assert_eq!(c0, -0.25);
    }

    #[test]
    fn c_coefficients_match_log_derivative() {
        // f'/f as a sum of partial fractions (α = q) against the printed
        // numerator over the denominator with (x + (α+β+1)/2).
        for &(a, b) in &[(0.3, -0.2), (0.5, 0.1), (0.0, -0.5), (0.45, 0.45)] {
            let p = jp(a, b);
            let s = a + b;
            let (c0, c1, c2) = c_coeffs(p);
            for x in [0.5, 1.0, 3.0, 10.0] {
                let lhs = 1.0 / (x + a + 1.0) + 1.0 / (x + s + 1.0) + (a - 0.5) / (x + (s + 1.0) / 2.0)
                    - 1.0 / (x + s / 2.0 + 1.0)
                    - (a + 0.5) / (x + (s + 1.0) / 2.0 + 1.0);
                let denom = (x + a + 1.0)
                    * (x + s + 1.0)
                    * (x + (s + 1.0) / 2.0)
                    * (x + s / 2.0 + 1.0)
                    * (x + s / 2.0 + 1.5);
                let rhs = (c2 * x * x + c1 * x + c0) / denom;
                assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
                // and via finite differences of ln f
                let h = 1e-5;
                let fd = ((m_ratio(p, x + h)).ln() - (m_ratio(p, x - h)).ln()) / (2.0 * h);
                assert!((fd - lhs).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn boundary_factorization_examples() {
        let edges = boundary_factorizations(1.0);
        assert_eq!(edges[0].1, 0.0);
        let edges = boundary_factorizations(0.5);
        assert_relative_eq!(edges[2].2, -0.5, epsilon = 1e-15);
        let (c0, _, _) = c_coeffs(jp(0.0, 0.0));
        assert_eq!(c0, -0.25);
    }

    #[test]
    fn coeff_lemma_holds_on_sampled_triangle() {
        let report = verify_coeff_lemma(60).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.max_violation, 0.0);
        assert!(report.equality_points.iter().all(|&(a, b)| is_corner(JacobiParams { alpha: a, beta: b })));
        assert_eq!(report.equality_points.len(), 3);
        assert!(verify_coeff_lemma(1).is_err());
    }

    #[test]
    fn cgw_rhs_examples() {
        assert_relative_eq!(cgw_rhs(jp(0.5, 0.5), 1).unwrap(), 0.375, max_relative = 1e-14);
        // direct maximization of (sin θ/2 cos θ/2)·(3/2)|cos θ| = (3/4) sin θ |cos θ|
        let direct = (0..=200_000)
            .map(|i| {
                let t = std::f64::consts::PI * i as f64 / 200_000.0;
                0.75 * t.sin() * t.cos().abs()
            })
            .fold(0.0f64, f64::max);
        assert_relative_eq!(direct, 0.375, max_relative = 1e-9);
    }

    #[test]
    fn cgw_saturates_on_first_kind() {
        let p = jp(-0.5, -0.5);
        for n in 1..=15 {
            let binom: f64 = (1..=n).map(|k| (k as f64 - 0.5) / k as f64).product();
            assert_relative_eq!(cgw_rhs(p, n).unwrap(), binom, max_relative = 1e-13);
            assert_relative_eq!(cgw_lhs(p, n).unwrap(), binom, max_relative = 1e-9);
        }
    }

    #[test]
    fn cgw_dominates_legendre() {
        let p = jp(0.0, 0.0);
        let n = 4;
        let m = 200_000;
        let dense = (0..=m)
            .map(|i| {
                let t = std::f64::consts::PI * i as f64 / m as f64;
                ((0.5 * t).sin() * (0.5 * t).cos()).sqrt() * special::jacobi_eval(p, n, t.cos()).0.abs()
            })
            .fold(0.0f64, f64::max);
        assert!(dense <= cgw_rhs(p, n).unwrap());
        assert_relative_eq!(cgw_lhs(p, n).unwrap(), dense, max_relative = 1e-8);
    }

    #[test]
    fn asymptote_and_weight_sup() {
        let w = |a, b| WeightParams::new(a, b).unwrap();
        assert_eq!(asymptote(w(0.0, 0.0)), 2.0);
        assert_eq!(asymptote(w(0.5, 0.5)), 1.0);
        assert_eq!(asymptote(w(1.0, 1.0)), 0.5);
        assert_eq!(weight_sup_bound(w(1.0, 1.0)), 1.0);
        assert_eq!(weight_sup_bound(w(1.0, 0.0)), 2.0);
        assert_eq!(weight_sup_bound(w(0.5, 0.5)), 1.0);
        assert_eq!(weight_sup_bound(w(0.0, 0.0)), 1.0);
    }

    #[test]
    fn weight_sup_bound_matches_grid() {
        for &(a, b) in &[(0.3, 1.7), (2.0, 0.5), (0.75, 0.75), (1.5, 0.01)] {
            let w = WeightParams::new(a, b).unwrap();
            let xs = (b - a) / (a + b);
            assert_relative_eq!(weight_sup_bound(w), w.eval(xs), max_relative = 1e-14);
            let grid = (0..=100_000)
                .map(|i| w.eval(-1.0 + 2.0 * i as f64 / 100_000.0))
                .fold(0.0f64, f64::max);
            assert!(grid <= weight_sup_bound(w) * (1.0 + 1e-15));
        }
    }

    #[test]
    fn m_bound_report_corner_and_interior() {
        let r = m_bound_report(jp(0.5, -0.5), 50).unwrap();
        assert!(r.monotone);
        assert!(!r.strict);
        let r = m_bound_report(jp(0.1, -0.3), 50).unwrap();
        assert!(r.monotone && r.strict);
        assert_eq!(r.values.len(), 50);
        assert_eq!(r.max_violation, 0.0);
    }
}
