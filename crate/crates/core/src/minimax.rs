//! Weighted Remez exchange for the Jacobi-weighted Chebyshev problem
//!
//! ```text
//! min over monic p of degree n   max_{x∈[-1,1]} (1-x)^ρα (1+x)^ρβ |p(x)|
//! ```
//!
//! The minimizer is characterized by `n+1` points where the weighted error
//! attains its maximum modulus with alternating signs. Each iteration solves
//! the leveled linear system on the current reference, locates the extrema of
//! the resulting error curve and exchanges the reference for them.
//!
//! Everything internal works in `θ = arccos x`: polynomials are expanded in
//! the first-kind Chebyshev basis (`T_k(cos θ) = cos kθ`) and the error curve
//! is sampled on a uniform θ-grid, which clusters samples near `±1` where the
//! error oscillates fastest.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::bounds::weight_sup_bound;
use crate::error::{Error, Result};
use crate::maxsearch;
use crate::special::WeightParams;

/// `(1-x)^ρα (1+x)^ρβ` with `0^0 = 1`.
pub fn weight_eval(w: WeightParams, x: f64) -> f64 {
    w.eval(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Target for the relative levelling defect `(max|e| - |h|) / max|e|`.
    pub tolerance: f64,
    pub max_iter: usize,
    /// The θ-grid for the extremum search has `grid_factor * n + 200` points.
    pub grid_factor: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            max_iter: 60,
            grid_factor: 30,
        }
    }
}

impl SolveOptions {
    pub fn grid_size(&self, n: usize) -> usize {
        self.grid_factor * n + 200
    }
}

/// A monic polynomial stored in the first-kind Chebyshev basis.
///
/// `cheb_coeffs[k]` multiplies `T_k` for `k < degree`; the coefficient of
/// `T_degree` is implied by monicity (`2^{1-n}`, or 1 for degree 0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonicPolynomial {
    pub degree: usize,
    pub cheb_coeffs: Vec<f64>,
    pub roots: Option<Vec<f64>>,
}

impl MonicPolynomial {
    pub fn new(cheb_coeffs: Vec<f64>) -> Self {
        Self {
            degree: cheb_coeffs.len(),
            cheb_coeffs,
            roots: None,
        }
    }

    /// Coefficient of `T_n` that makes the power-basis leading coefficient 1.
    pub fn leading_cheb(&self) -> f64 {
        if self.degree == 0 {
            1.0
        } else {
            2f64.powi(1 - self.degree as i32)
        }
    }

    /// All `n+1` Chebyshev coefficients including the implied leading one.
    pub fn full_cheb(&self) -> Vec<f64> {
        let mut c = self.cheb_coeffs.clone();
        c.push(self.leading_cheb());
        c
    }

    /// Clenshaw evaluation at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        clenshaw(&self.full_cheb(), x)
    }

    /// Value and θ-derivative at `x = cos θ`.
    pub fn eval_theta(&self, theta: f64) -> (f64, f64) {
        cos_series(&self.full_cheb(), theta)
    }

    /// Coefficients in the monomial basis, ascending.
    pub fn power_coeffs(&self) -> Vec<f64> {
        let full = self.full_cheb();
        let n = self.degree;
        let mut out = vec![0.0; n + 1];
        // T_k in the power basis via T_{k+1} = 2x T_k - T_{k-1}.
        let mut prev = vec![0.0; n + 1];
        let mut cur = vec![0.0; n + 1];
        cur[0] = 1.0;
        for (k, &ck) in full.iter().enumerate() {
            for i in 0..=n {
                out[i] += ck * cur[i];
            }
            if k == n {
                break;
            }
            let mut next = vec![0.0; n + 1];
            for i in 0..=n {
                let shifted = if i > 0 { cur[i - 1] } else { 0.0 };
                let factor = if k == 0 { 1.0 } else { 2.0 };
                next[i] = factor * shifted - if k == 0 { 0.0 } else { prev[i] };
            }
            prev = cur;
            cur = next;
        }
        out
    }
}

pub(crate) fn clenshaw(coeffs: &[f64], x: f64) -> f64 {
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = c + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    coeffs.first().copied().unwrap_or(0.0) + x * b1 - b2
}

/// `Σ c_k cos kθ` and its θ-derivative `-Σ k c_k sin kθ`.
fn cos_series(coeffs: &[f64], theta: f64) -> (f64, f64) {
    let (s1, c1) = theta.sin_cos();
    let (mut ck, mut sk) = (1.0f64, 0.0f64);
    let mut value = 0.0;
    let mut deriv = 0.0;
    for (k, &a) in coeffs.iter().enumerate() {
        value += a * ck;
        deriv -= k as f64 * a * sk;
        let next_c = ck * c1 - sk * s1;
        let next_s = sk * c1 + ck * s1;
        ck = next_c;
        sk = next_s;
    }
    (value, deriv)
}

/// A local extremum of the weighted error `w(x) p(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub theta: f64,
    pub x: f64,
    pub error: f64,
}

/// Solved Chebyshev problem with its equioscillation certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChebyshevSolution {
    pub weight: WeightParams,
    pub poly: MonicPolynomial,
    /// `n+1` alternation points, increasing in `x`.
    pub reference: Vec<f64>,
    /// `max |w p|`, an upper bound for the minimax value.
    pub norm: f64,
    /// `min_j |w(x_j) p(x_j)|` on the reference, a lower bound for the minimax value.
    pub lower_bound: f64,
    /// `2ⁿ · norm`.
    pub widom: f64,
    pub iterations: usize,
    /// `(norm - lower_bound) / norm`.
    pub levelling_defect: f64,
    /// Condition number of evaluating the weighted error in the Chebyshev
    /// basis, `max w · Σ|c_k| / norm`. Defects below `8 κ ε` are not resolvable.
    pub condition: f64,
}

impl ChebyshevSolution {
    pub fn degree(&self) -> usize {
        self.poly.degree
    }

    /// Weighted error `w(x) p(x)`.
    pub fn error_at(&self, x: f64) -> f64 {
        self.weight.eval(x) * self.poly.eval(x)
    }
}

/// Weighted error of a full Chebyshev series at `θ`, with its θ-derivative
/// divided by the weight (same sign as the derivative in the interior).
struct ErrorCurve<'a> {
    w: WeightParams,
    coeffs: &'a [f64],
}

impl ErrorCurve<'_> {
    fn value(&self, theta: f64) -> f64 {
        self.w.eval_theta(theta) * clenshaw(self.coeffs, theta.cos())
    }

    fn slope_sign_fn(&self, theta: f64) -> f64 {
        let (p, dp) = cos_series(self.coeffs, theta);
        self.w.log_derivative_theta(theta) * p + dp
    }

    /// Refines a sampled peak of `|e|` inside `[lo, hi]` by bisection on the
    /// sign of `e'`, falling back to golden-section search.
    fn refine(&self, lo: f64, hi: f64, sign: f64, seed: (f64, f64)) -> (f64, f64) {
        let (mut a, mut b) = (lo, hi);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if sign * self.slope_sign_fn(m) > 0.0 {
                a = m;
            } else {
                b = m;
            }
        }
        let t = 0.5 * (a + b);
        let v = self.value(t);
        if v.abs() >= seed.1.abs() && v * sign > 0.0 {
            return (t, v);
        }
        let (t, _) = maxsearch::golden_max(&|t: f64| self.value(t).abs(), lo, hi);
        let v = self.value(t);
        if v.abs() >= seed.1.abs() {
            (t, v)
        } else {
            seed
        }
    }

    /// Alternating extrema, increasing in θ.
    fn extrema(&self, grid: usize) -> Vec<Extremum> {
        let grid = grid.max(3);
        let step = PI / (grid - 1) as f64;
        let mut thetas: Vec<f64> = (0..grid).map(|j| j as f64 * step).collect();
        thetas[grid - 1] = PI;
        let mut vals: Vec<f64> = thetas.iter().map(|&t| self.value(t)).collect();
        // The weight vanishes at an endpoint with positive exponent, however
        // slowly it decays towards it.
        if self.w.rho_a > 0.0 {
            vals[0] = 0.0;
        }
        if self.w.rho_b > 0.0 {
            vals[grid - 1] = 0.0;
        }

        let mut found: Vec<Extremum> = Vec::new();
        let push = |found: &mut Vec<Extremum>, theta: f64, error: f64| {
            found.push(Extremum {
                theta,
                x: theta.cos(),
                error,
            })
        };
        if self.w.rho_a == 0.0 && vals[0] != 0.0 {
            push(&mut found, 0.0, vals[0]);
        }
        for j in 1..grid - 1 {
            let (l, c, r) = (vals[j - 1].abs(), vals[j].abs(), vals[j + 1].abs());
            if c == 0.0 || c < l || c <= r {
                continue;
            }
            let sign = vals[j].signum();
            let (t, v) = self.refine(thetas[j - 1], thetas[j + 1], sign, (thetas[j], vals[j]));
            push(&mut found, t, v);
        }
        if self.w.rho_b == 0.0 && vals[grid - 1] != 0.0 {
            push(&mut found, PI, vals[grid - 1]);
        }

        // Collapse same-sign runs to their largest member.
        let mut out: Vec<Extremum> = Vec::with_capacity(found.len());
        for e in found {
            match out.last_mut() {
                Some(last) if last.error.signum() == e.error.signum() => {
                    if e.error.abs() > last.error.abs() {
                        *last = e;
                    }
                }
                _ => out.push(e),
            }
        }
        out
    }
}

/// Local extrema of `w(x) p(x)`, sorted by `x`, with strictly alternating
/// signs. Endpoints are candidates only where the weight exponent is zero.
pub fn error_extrema(w: WeightParams, poly: &MonicPolynomial, grid: usize) -> Result<Vec<(f64, f64)>> {
    if grid < 10 * poly.degree.max(1) {
        return Err(Error::Domain(format!(
            "grid of {grid} points is too coarse for degree {}",
            poly.degree
        )));
    }
    let coeffs = poly.full_cheb();
    let curve = ErrorCurve { w, coeffs: &coeffs };
    let ext = curve.extrema(grid);
    if ext.len() < poly.degree + 1 {
        return Err(Error::ExchangeFailure {
            found: ext.len(),
            needed: poly.degree + 1,
        });
    }
    Ok(ext.iter().rev().map(|e| (e.x, e.error)).collect())
}

/// Picks `n+1` alternating points from the candidates by repeatedly dropping
/// whichever end has the smaller error modulus. The global maximum of `|e|`
/// always survives.
pub fn exchange(n: usize, candidates: &[Extremum]) -> Result<Vec<Extremum>> {
    let needed = n + 1;
    if candidates.len() < needed {
        return Err(Error::ExchangeFailure {
            found: candidates.len(),
            needed,
        });
    }
    if candidates.windows(2).any(|p| p[0].error.signum() == p[1].error.signum()) {
        return Err(Error::ExchangeFailure {
            found: 0,
            needed,
        });
    }
    let (mut lo, mut hi) = (0usize, candidates.len());
    while hi - lo > needed {
        if candidates[lo].error.abs() < candidates[hi - 1].error.abs() {
            lo += 1;
        } else {
            hi -= 1;
        }
    }
    Ok(candidates[lo..hi].to_vec())
}

/// Solves `Σ_k d_k cos kθ_i + cos nθ_i = (-1)^i h / w(θ_i)` for `(d, h)`.
/// The result is `2^{n-1}` times the monic solution.
fn leveled_scaled(w: WeightParams, n: usize, thetas: &[f64]) -> Result<(Vec<f64>, f64)> {
    let m = n + 1;
    debug_assert_eq!(thetas.len(), m);
    let mut a = DMatrix::<f64>::zeros(m, m);
    let mut rhs = DVector::<f64>::zeros(m);
    for (i, &t) in thetas.iter().enumerate() {
        let wt = w.eval_theta(t);
        if wt.is_nan() || wt <= 0.0 {
            return Err(Error::Degenerate(format!(
                "weight vanishes at reference point x = {}",
                t.cos()
            )));
        }
        for k in 0..n {
            a[(i, k)] = (k as f64 * t).cos();
        }
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        a[(i, n)] = -sign / wt;
        rhs[i] = -(n as f64 * t).cos();
    }
    let sol = a
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Degenerate("singular leveled system".into()))?;
    if sol.iter().any(|v| !v.is_finite()) {
        return Err(Error::Degenerate("leveled system produced non-finite values".into()));
    }
    let h = sol[n];
    Ok((sol.as_slice()[..n].to_vec(), h))
}

/// Solves the leveled system `w(x_j) p(x_j) = (-1)^{n-j} h` on a reference
/// sorted increasingly in `x`, returning the monic `p` and `h`.
pub fn leveled_system(w: WeightParams, n: usize, reference: &[f64]) -> Result<(MonicPolynomial, f64)> {
    if n == 0 {
        return Err(Error::Domain("leveled_system requires n >= 1".into()));
    }
    if reference.len() != n + 1 {
        return Err(Error::Domain(format!(
            "reference must have n+1 = {} points, got {}",
            n + 1,
            reference.len()
        )));
    }
    if reference.iter().any(|x| !(-1.0..=1.0).contains(x)) || reference.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::Domain("reference must be strictly increasing inside [-1, 1]".into()));
    }
    let thetas: Vec<f64> = reference.iter().rev().map(|x| x.acos()).collect();
    let (d, h) = leveled_scaled(w, n, &thetas)?;
    let scale = 2f64.powi(1 - n as i32);
    let poly = MonicPolynomial::new(d.iter().map(|v| v * scale).collect());
    Ok((poly, h * scale))
}

fn initial_reference(w: WeightParams, n: usize) -> Vec<f64> {
    let nf = n as f64;
    let mut thetas: Vec<f64> = (0..=n).map(|i| PI * i as f64 / nf).collect();
    let inset = PI / (2.0 * nf + 2.0);
    if w.rho_a > 0.0 {
        thetas[0] = inset;
    }
    if w.rho_b > 0.0 {
        thetas[n] = PI - inset;
    }
    thetas
}

struct Iterate {
    d: Vec<f64>,
    h: f64,
    thetas: Vec<f64>,
    max_err: f64,
    defect: f64,
    condition: f64,
    iteration: usize,
}

/// Computes the weighted Chebyshev polynomial of degree `n`.
///
/// Succeeds once the levelling defect is at most `opts.tolerance`, or at most
/// the rounding floor `8 κ ε` when that is larger (see
/// [`ChebyshevSolution::condition`]).
pub fn solve(w: WeightParams, n: usize, opts: &SolveOptions) -> Result<ChebyshevSolution> {
    if n == 0 {
        return Err(Error::Domain("solve requires n >= 1; degree 0 is the weight sup".into()));
    }
    let grid = opts.grid_size(n);
    let weight_max = weight_sup_bound(w);
    let mut thetas = initial_reference(w, n);
    let mut best: Option<Iterate> = None;

    for iteration in 1..=opts.max_iter.max(1) {
        let (d, h) = leveled_scaled(w, n, &thetas)?;
        let mut coeffs = d.clone();
        coeffs.push(1.0);
        let curve = ErrorCurve { w, coeffs: &coeffs };
        let ext = curve.extrema(grid);
        if ext.len() < n + 1 {
            return Err(Error::ExchangeFailure {
                found: ext.len(),
                needed: n + 1,
            });
        }
        let max_err = ext.iter().map(|e| e.error.abs()).fold(0.0, f64::max).max(h.abs());
        let defect = (max_err - h.abs()) / max_err;
        let condition = weight_max * coeffs.iter().map(|c| c.abs()).sum::<f64>() / max_err;
        let current = Iterate {
            d,
            h,
            thetas: thetas.clone(),
            max_err,
            defect,
            condition,
            iteration,
        };
        let converged = defect <= opts.tolerance.max(8.0 * condition * f64::EPSILON);
        if best.as_ref().is_none_or(|b| defect < b.defect) {
            best = Some(current);
        }
        if converged {
            return finish(w, n, best.unwrap());
        }

        let next: Vec<f64> = exchange(n, &ext)?.iter().map(|e| e.theta).collect();
        if next.windows(2).any(|p| (p[1].cos() - p[0].cos()).abs() < 1e-14) {
            return Err(Error::Degenerate("reference points collapsed".into()));
        }
        let movement = next
            .iter()
            .zip(&thetas)
            .map(|(a, b)| (a.cos() - b.cos()).abs())
            .fold(0.0, f64::max);
        thetas = next;
        if movement <= 1e-14 {
            break;
        }
    }

    let best = best.expect("at least one iteration ran");
    let iterations = best.iteration;
    let defect = best.defect;
    let sol = finish(w, n, best)?;
    Err(Error::NonConvergence {
        iterations,
        defect,
        best: Box::new(sol),
    })
}

fn finish(w: WeightParams, n: usize, it: Iterate) -> Result<ChebyshevSolution> {
    let scale = 2f64.powi(1 - n as i32);
    let mut coeffs = it.d.clone();
    coeffs.push(1.0);
    let roots = roots_between(&coeffs, &it.thetas)?;
    let mut poly = MonicPolynomial::new(it.d.iter().map(|v| v * scale).collect());
    poly.roots = Some(roots);
    let mut reference: Vec<f64> = it.thetas.iter().map(|t| t.cos()).collect();
    reference.reverse();
    let norm = it.max_err * scale;
    Ok(ChebyshevSolution {
        weight: w,
        poly,
        reference,
        norm,
        lower_bound: it.h.abs() * scale,
        widom: 2.0 * it.max_err,
        iterations: it.iteration,
        levelling_defect: it.defect,
        condition: it.condition,
    })
}

/// The `n` zeros of the Chebyshev series, one between each pair of adjacent
/// reference angles, found by safeguarded Newton in θ. Returned increasing in `x`.
fn roots_between(coeffs: &[f64], thetas: &[f64]) -> Result<Vec<f64>> {
    let mut roots = Vec::with_capacity(thetas.len() - 1);
    for (index, pair) in thetas.windows(2).enumerate() {
        let (mut lo, mut hi) = (pair[0], pair[1]);
        let f_lo = cos_series(coeffs, lo).0;
        let f_hi = cos_series(coeffs, hi).0;
        if f_lo == 0.0 {
            roots.push(lo.cos());
            continue;
        }
        if f_lo * f_hi > 0.0 {
            return Err(Error::RootNotConverged {
                index,
                reason: "no sign change between reference points".into(),
            });
        }
        let mut t = 0.5 * (lo + hi);
        let mut done = false;
        for _ in 0..200 {
            let (f, df) = cos_series(coeffs, t);
            if f == 0.0 {
                done = true;
                break;
            }
            if (f > 0.0) == (f_lo > 0.0) {
                lo = t;
            } else {
                hi = t;
            }
            let newton = t - f / df;
            let next = if df != 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if (next - t).abs() <= 2.0 * f64::EPSILON * t.abs().max(1e-8) || hi - lo <= 2.0 * f64::EPSILON * hi {
                t = next;
                done = true;
                break;
            }
            t = next;
        }
        if !done {
            return Err(Error::RootNotConverged {
                index,
                reason: "Newton/bisection did not settle".into(),
            });
        }
        roots.push(t.cos());
    }
    roots.reverse();
    Ok(roots)
}
