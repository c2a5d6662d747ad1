//! Gamma-function arithmetic and classical Jacobi polynomials.
//!
//! Two parametrizations of the same weight family appear throughout the
//! crate. [`JacobiParams`] `(α, β)` are the orthogonality exponents of the
//! measure `(1-x)^α (1+x)^β dx`; [`WeightParams`] `(ρα, ρβ)` are the
//! exponents of the sup-norm weight `(1-x)^ρα (1+x)^ρβ`. They are linked by
//! `ρ = α/2 + 1/4`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maxsearch;

/// Orthogonality parameters `(α, β)` of a Jacobi polynomial family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0 && beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::Domain(format!(
                "Jacobi parameters must satisfy α, β > -1 (got α={alpha}, β={beta})"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// `q = max(α, β)`.
    pub fn q(&self) -> f64 {
        self.alpha.max(self.beta)
    }

    pub(crate) fn sum(&self) -> f64 {
        self.alpha + self.beta
    }
}

/// Exponents `(ρα, ρβ)` of the weight `(1-x)^ρα (1+x)^ρβ` on `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightParams {
    /// Exponent at `x = +1`.
    pub rho_a: f64,
    /// Exponent at `x = -1`.
    pub rho_b: f64,
}

impl WeightParams {
    pub fn new(rho_a: f64, rho_b: f64) -> Result<Self> {
        if !(rho_a >= 0.0 && rho_b >= 0.0) || !rho_a.is_finite() || !rho_b.is_finite() {
            return Err(Error::Domain(format!(
                "weight exponents must be finite and non-negative (got ρα={rho_a}, ρβ={rho_b})"
            )));
        }
        Ok(Self { rho_a, rho_b })
    }

    /// `(1-x)^ρα (1+x)^ρβ`, with `0^0 = 1`.
    pub fn eval(&self, x: f64) -> f64 {
        (1.0 - x).max(0.0).powf(self.rho_a) * (1.0 + x).max(0.0).powf(self.rho_b)
    }

    /// The weight at `x = cos θ`, written as `(2 sin²(θ/2))^ρα (2 cos²(θ/2))^ρβ`
    /// so that it stays accurate near both endpoints.
    pub fn eval_theta(&self, theta: f64) -> f64 {
        let (s, c) = half_angle(theta);
        (2.0 * s * s).powf(self.rho_a) * (2.0 * c * c).powf(self.rho_b)
    }

    /// `d/dθ log w(cos θ) = ρα cot(θ/2) - ρβ tan(θ/2)`.
    pub(crate) fn log_derivative_theta(&self, theta: f64) -> f64 {
        let (s, c) = half_angle(theta);
        let mut d = 0.0;
        if self.rho_a != 0.0 {
            d += self.rho_a * c / s;
        }
        if self.rho_b != 0.0 {
            d -= self.rho_b * s / c;
        }
        d
    }

    pub fn is_symmetric(&self) -> bool {
        self.rho_a == self.rho_b
    }
}

/// `(sin(θ/2), cos(θ/2))` for `θ ∈ [0, π]`, the cosine taken as
/// `sin((π-θ)/2)` so it vanishes exactly at `θ = π`.
fn half_angle(theta: f64) -> (f64, f64) {
    ((0.5 * theta).sin(), (0.5 * (std::f64::consts::PI - theta)).sin())
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(libm::lgamma(x))
}

/// Infallible `ln Γ` for arguments the caller has already shown positive.
pub(crate) fn lgamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "lgamma argument {x}");
    libm::lgamma(x)
}

pub fn param_to_weight(p: JacobiParams) -> WeightParams {
    WeightParams {
        rho_a: p.alpha / 2.0 + 0.25,
        rho_b: p.beta / 2.0 + 0.25,
    }
}

pub fn weight_to_param(w: WeightParams) -> JacobiParams {
    JacobiParams {
        alpha: 2.0 * w.rho_a - 0.5,
        beta: 2.0 * w.rho_b - 0.5,
    }
}

fn jacobi_value(alpha: f64, beta: f64, n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let ab = alpha + beta;
    let mut p_prev = 1.0;
    let mut p = 0.5 * ((ab + 2.0) * x + (alpha - beta));
    for k in 2..=n {
        let k = k as f64;
        let two_k_ab = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (two_k_ab - 2.0);
        let a2 = (two_k_ab - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (two_k_ab - 2.0) * (two_k_ab - 1.0) * two_k_ab;
        let a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * two_k_ab;
        let next = ((a2 + a3 * x) * p - a4 * p_prev) / a1;
        p_prev = p;
        p = next;
    }
    p
}

/// `P_n^{(α,β)}(x)` and its derivative in `x`, by the forward three-term
/// recurrence. The derivative uses `d/dx P_n^{(α,β)} = (n+α+β+1)/2 · P_{n-1}^{(α+1,β+1)}`.
pub fn jacobi_eval(p: JacobiParams, n: usize, x: f64) -> (f64, f64) {
    let value = jacobi_value(p.alpha, p.beta, n, x);
    let derivative = if n == 0 {
        0.0
    } else {
        0.5 * (n as f64 + p.sum() + 1.0) * jacobi_value(p.alpha + 1.0, p.beta + 1.0, n - 1, x)
    };
    (value, derivative)
}

/// Factor turning `P_n^{(α,β)}` into a monic polynomial:
/// `2ⁿ Γ(n+1) Γ(n+α+β+1) / Γ(2n+α+β+1)`.
pub fn monic_scale(p: JacobiParams, n: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let nf = n as f64;
    let ab = p.sum();
    let log = nf * std::f64::consts::LN_2 + lgamma(nf + 1.0) + lgamma(nf + ab + 1.0)
        - lgamma(2.0 * nf + ab + 1.0);
    log.exp()
}

/// Value of the monic Jacobi polynomial `∏ (x - cos ψ_k)` at `x`.
pub fn monic_jacobi(p: JacobiParams, n: usize, x: f64) -> f64 {
    monic_scale(p, n) * jacobi_value(p.alpha, p.beta, n, x)
}

/// Zeros of `P_n^{(α,β)}`, increasing.
///
/// Brackets come from a sign scan in `θ = arccos x`; each root is polished by
/// Newton's method seeded with the asymptotic angle
/// `(k + α/2 - 1/4) π / (n + (α+β+1)/2)`, falling back to bisection whenever a
/// Newton step leaves the bracket.
pub fn jacobi_zeros(p: JacobiParams, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Domain("jacobi_zeros requires n >= 1".into()));
    }
    let brackets = sign_brackets(p, n)?;
    let nf = n as f64;
    let denom = nf + 0.5 * (p.sum() + 1.0);

    let mut zeros = Vec::with_capacity(n);
    for (i, &(lo, hi)) in brackets.iter().enumerate() {
        // Asymptotic angles enumerate zeros from x = 1 downward.
        let k = (n - i) as f64;
        let guess = (std::f64::consts::PI * (k + 0.5 * p.alpha - 0.25) / denom).cos();
        let root = polish_root(p, n, lo, hi, guess).ok_or_else(|| Error::RootNotConverged {
            index: i,
            reason: format!("no convergence in [{lo}, {hi}] within 100 steps"),
        })?;
        zeros.push(root);
    }
    Ok(zeros)
}

fn sign_brackets(p: JacobiParams, n: usize) -> Result<Vec<(f64, f64)>> {
    let mut samples = 64 * n + 64;
    for _ in 0..6 {
        let xs: Vec<f64> = (0..=samples)
            .rev()
            .map(|i| (std::f64::consts::PI * i as f64 / samples as f64).cos())
            .collect();
        let vs: Vec<f64> = xs.iter().map(|&x| jacobi_value(p.alpha, p.beta, n, x)).collect();
        let mut brackets = Vec::with_capacity(n);
        for i in 0..samples {
            if vs[i] == 0.0 {
                brackets.push((xs[i], xs[i]));
            } else if vs[i] * vs[i + 1] < 0.0 {
                brackets.push((xs[i], xs[i + 1]));
            }
        }
        if brackets.len() == n {
            return Ok(brackets);
        }
        samples *= 4;
    }
    Err(Error::RootNotConverged {
        index: 0,
        reason: format!("could not isolate {n} sign changes"),
    })
}

fn polish_root(p: JacobiParams, n: usize, mut lo: f64, mut hi: f64, guess: f64) -> Option<f64> {
    if lo == hi {
        return Some(lo);
    }
    let f_lo = jacobi_value(p.alpha, p.beta, n, lo);
    let mut x = if guess > lo && guess < hi { guess } else { 0.5 * (lo + hi) };
    for _ in 0..100 {
        let (f, df) = jacobi_eval(p, n, x);
        if f == 0.0 {
            return Some(x);
        }
        if (f > 0.0) == (f_lo > 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - f / df;
        let step_ok = df != 0.0 && newton > lo && newton < hi;
        let next = if step_ok { newton } else { 0.5 * (lo + hi) };
        let converged_step = (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1e-3);
        let collapsed = hi - lo <= 4.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(1e-3);
        x = next;
        if converged_step || collapsed {
            let (f, df) = jacobi_eval(p, n, x);
            if f.abs() <= 1e-13 * df.abs() || collapsed {
                return Some(x);
            }
        }
    }
    None
}

/// `sup_{x∈[-1,1]} (1-x)^ρα (1+x)^ρβ |∏(x - cos ψ_k)|` where the product is
/// the monic Jacobi polynomial with `(α, β) = (2ρα - 1/2, 2ρβ - 1/2)`.
///
/// Sampled uniformly in `θ = arccos x` with at least `50n + 500` points, then
/// every sampled peak is refined locally.
pub fn weighted_monic_jacobi_sup(w: WeightParams, n: usize) -> Result<f64> {
    let p = weight_to_param(w);
    let p = JacobiParams::new(p.alpha, p.beta)?;
    let scale = monic_scale(p, n);
    let f = |theta: f64| {
        w.eval_theta(theta) * (scale * jacobi_value(p.alpha, p.beta, n, theta.cos())).abs()
    };
    let (_, v) = maxsearch::maximize(f, 0.0, std::f64::consts::PI, 50 * n + 500);
    Ok(v)
}
