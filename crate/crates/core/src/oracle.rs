//! Brute-force minimax by derivative-free search over the node positions.
//!
//! Independent of the Remez machinery: the objective is the maximum of
//! `w(x) |Π (x - a_k)|` over a fixed 20 001-point θ-grid, minimized with a
//! multi-start Nelder–Mead simplex. Only meant for degrees up to 3.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::WeightParams;

pub const GRID_POINTS: usize = 20_001;
pub const DEFAULT_RESTARTS: usize = 32;
const SEED: u64 = 0x00DD_BA11_5EED;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    /// Nodes sorted increasingly.
    pub nodes: Vec<f64>,
    /// Grid maximum of the weighted product at `nodes`.
    pub norm: f64,
}

struct Objective {
    xs: Vec<f64>,
    ws: Vec<f64>,
}

impl Objective {
    fn new(w: WeightParams) -> Self {
        let (xs, ws) = (0..GRID_POINTS)
            .map(|i| {
                let t = PI * i as f64 / (GRID_POINTS - 1) as f64;
                (t.cos(), w.eval_theta(t))
            })
            .unzip();
        Self { xs, ws }
    }

    fn eval(&self, nodes: &[f64]) -> f64 {
        let clamped: Vec<f64> = nodes.iter().map(|a| a.clamp(-1.0, 1.0)).collect();
        let mut worst: f64 = 0.0;
        for (&x, &w) in self.xs.iter().zip(&self.ws) {
            let p: f64 = clamped.iter().map(|a| x - a).product();
            worst = worst.max(w * p.abs());
        }
        // Steer the simplex back into the box without changing values inside it.
        let excess: f64 = nodes.iter().map(|a| (a.abs() - 1.0).max(0.0)).sum();
        worst * (1.0 + excess)
    }
}

/// Minimizes `f` from `start` with a simplex of edge `step`.
fn nelder_mead<F: Fn(&[f64]) -> f64>(f: &F, start: &[f64], step: f64, max_evals: usize) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), f(start)));
    for k in 0..n {
        let mut v = start.to_vec();
        v[k] += step;
        let fv = f(&v);
        simplex.push((v, fv));
    }
    let mut evals = n + 1;
    let affine = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect() };

    while evals < max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        let size = simplex
            .iter()
            .skip(1)
            .map(|(v, _)| v.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if size < 1e-12 || spread <= 1e-15 * simplex[0].1.abs() && size < 1e-9 {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|i| simplex[..n].iter().map(|(v, _)| v[i]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].0.clone();
        let reflected = affine(&centroid, &worst, -1.0);
        let fr = f(&reflected);
        evals += 1;
        if fr < simplex[0].1 {
            let expanded = affine(&centroid, &worst, -2.0);
            let fe = f(&expanded);
            evals += 1;
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
        } else {
            let (target, ft) = if fr < simplex[n].1 { (reflected, fr) } else { (worst, simplex[n].1) };
            let contracted = affine(&centroid, &target, 0.5);
            let fc = f(&contracted);
            evals += 1;
            if fc < ft {
                simplex[n] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let v = affine(&best, &entry.0, 0.5);
                    let fv = f(&v);
                    *entry = (v, fv);
                }
                evals += n;
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

/// Multi-start search followed by shrinking-simplex restarts from the
/// incumbent. Deterministic: every restart has its own fixed seed.
pub fn brute_minimax(w: WeightParams, n: usize, restarts: usize) -> Result<OracleResult> {
    if n > 3 {
        return Err(Error::Domain("the oracle only handles degrees up to 3".into()));
    }
    let obj = Objective::new(w);
    if n == 0 {
        return Ok(OracleResult { nodes: vec![], norm: obj.eval(&[]) });
    }
    let f = |v: &[f64]| obj.eval(v);
    let runs: Vec<(Vec<f64>, f64)> = (0..restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ r as u64);
            let start: Vec<f64> = (0..n)
                .map(|k| -1.0 + 2.0 * (k as f64 + rng.gen::<f64>()) / n as f64)
                .collect();
            nelder_mead(&f, &start, 0.2, 4000)
        })
        .collect();
    let mut best = runs
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one restart");
    for step in [1e-2, 1e-3, 1e-4, 1e-5, 1e-6] {
        let polished = nelder_mead(&f, &best.0, step, 4000);
        if polished.1 <= best.1 {
            best = polished;
        }
    }
    let mut nodes: Vec<f64> = best.0.iter().map(|a| a.clamp(-1.0, 1.0)).collect();
    nodes.sort_by(f64::total_cmp);
    let norm = obj.eval(&nodes);
    Ok(OracleResult { nodes, norm })
}
