//! Widom factors `W_n = 2ⁿ · min max |w p|`, their monotonicity, and sweeps
//! over the parameter plane.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{asymptote, m_bound};
use crate::error::{Error, Result};
use crate::minimax::{solve, SolveOptions};
use crate::special::{weight_to_param, weighted_monic_jacobi_sup, WeightParams};

/// Relative tolerance used when classifying a sequence.
pub const CLASSIFY_TOL: f64 = 1e-9;

/// Squared radius of the circle around `(1/4, 1/4)` inside which increasing
/// sequences are expected.
pub const INNER_RADIUS_SQ: f64 = 1.0 / 8.0;
/// Squared radius beyond which decreasing sequences are expected.
pub const OUTER_RADIUS_SQ: f64 = 1.184 / 8.0;
/// Squared radius of the empirical boundary drawn in the heatmap.
pub const FIGURE_OUTER_RADIUS_SQ: f64 = 1.183_608_888_9 / 8.0;

pub fn widom_factor(w: WeightParams, n: usize) -> Result<f64> {
    Ok(solve(w, n, &SolveOptions::default())?.widom)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Increasing,
    Decreasing,
    Constant,
    NonMonotone,
}

impl Classification {
    pub fn label(self) -> &'static str {
        match self {
            Self::Increasing => "Increasing",
            Self::Decreasing => "Decreasing",
            Self::Constant => "Constant",
            Self::NonMonotone => "NonMonotone",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Classifies a sequence with steps compared against `tol · max|v|`.
///
/// Fewer than two values classify as `Constant`.
pub fn classify(values: &[f64], tol: f64) -> Classification {
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let eps = tol * scale;
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if values.len() < 2 || hi - lo <= eps {
        return Classification::Constant;
    }
    let steps: Vec<f64> = values.windows(2).map(|p| p[1] - p[0]).collect();
    if steps.iter().all(|&d| d >= -eps) {
        Classification::Increasing
    } else if steps.iter().all(|&d| d <= eps) {
        Classification::Decreasing
    } else {
        Classification::NonMonotone
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WidomSequence {
    pub weight: WeightParams,
    pub n_start: usize,
    pub values: Vec<f64>,
    pub asymptote: f64,
    pub classification: Classification,
}

/// `W_1, …, W_{n_max}`.
pub fn widom_sequence(w: WeightParams, n_max: usize) -> Result<WidomSequence> {
    if n_max < 2 {
        return Err(Error::Domain("a sequence needs n_max >= 2".into()));
    }
    let opts = SolveOptions::default();
    let values = (1..=n_max)
        .map(|n| solve(w, n, &opts).map(|s| s.widom))
        .collect::<Result<Vec<_>>>()?;
    Ok(WidomSequence {
        weight: w,
        n_start: 1,
        classification: classify(&values, CLASSIFY_TOL),
        asymptote: asymptote(w),
        values,
    })
}

/// A square grid `[lo, hi]²` with `resolution` points per side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub resolution: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            lo: 0.0,
            hi: 0.8,
            resolution: 40,
        }
    }
}

impl GridSpec {
    pub fn coordinate(&self, i: usize) -> f64 {
        if i + 1 == self.resolution {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.resolution - 1) as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanCell {
    pub weight: WeightParams,
    /// `None` when a solve failed; see `error`.
    pub classification: Option<Classification>,
    pub values: Vec<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub grid: GridSpec,
    pub n_max: usize,
    /// Row-major with `ρα` varying fastest: index `j * resolution + i`.
    pub cells: Vec<ScanCell>,
    pub runtime_secs: f64,
}

impl ScanResult {
    pub fn cell(&self, i: usize, j: usize) -> &ScanCell {
        &self.cells[j * self.grid.resolution + i]
    }

    pub fn classifications(&self) -> Vec<Option<Classification>> {
        self.cells.iter().map(|c| c.classification).collect()
    }
}

/// Classifies every cell of the grid. Cells run in parallel and land in a
/// pre-indexed vector, so the result does not depend on scheduling.
pub fn scan(grid: GridSpec, n_max: usize) -> Result<ScanResult> {
    if grid.resolution < 2 {
        return Err(Error::Domain("scan resolution must be >= 2".into()));
    }
    if !(grid.lo >= 0.0 && grid.hi > grid.lo && grid.hi.is_finite()) {
        return Err(Error::Domain(format!("invalid scan range [{}, {}]", grid.lo, grid.hi)));
    }
    if n_max < 2 {
        return Err(Error::Domain("a sequence needs n_max >= 2".into()));
    }
    let start = Instant::now();
    let r = grid.resolution;
    let cells = (0..r * r)
        .into_par_iter()
        .map(|idx| {
            let w = WeightParams::new(grid.coordinate(idx % r), grid.coordinate(idx / r)).expect("grid inside domain");
            match widom_sequence(w, n_max) {
                Ok(seq) => ScanCell {
                    weight: w,
                    classification: Some(seq.classification),
                    values: seq.values,
                    error: None,
                },
                Err(e) => ScanCell {
                    weight: w,
                    classification: None,
                    values: vec![],
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    Ok(ScanResult {
        grid,
        n_max,
        cells,
        runtime_secs: start.elapsed().as_secs_f64(),
    })
}

/// The four terms of `W_n ≤ 2ⁿ sup|w P̂_n| ≤ M_n ≤ 2^{1-ρα-ρβ}`, where `P̂_n`
/// is the monic Jacobi polynomial whose measure matches the weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundChain {
    pub n: usize,
    pub widom: f64,
    pub jacobi: f64,
    pub m_bound: f64,
    pub asymptote: f64,
}

impl BoundChain {
    /// Largest relative excess of a left term over its right neighbour; zero
    /// when the chain holds.
    pub fn max_violation(&self) -> f64 {
        [(self.widom, self.jacobi), (self.jacobi, self.m_bound), (self.m_bound, self.asymptote)]
            .iter()
            .map(|&(l, r)| ((l - r) / r).max(0.0))
            .fold(0.0, f64::max)
    }
}

/// Requires `ρα, ρβ ∈ [0, 1/2]` so that the Jacobi parameters lie in `[-1/2, 1/2]`.
pub fn bound_chain(w: WeightParams, n: usize) -> Result<BoundChain> {
    let p = weight_to_param(w);
    Ok(BoundChain {
        n,
        widom: widom_factor(w, n)?,
        jacobi: 2f64.powi(n as i32) * weighted_monic_jacobi_sup(w, n)?,
        m_bound: m_bound(p, n)?,
        asymptote: asymptote(w),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    Inside,
    Between,
    Outside,
}

/// Position relative to the two circles centred at `(1/4, 1/4)`.
pub fn conjecture_region(w: WeightParams) -> Region {
    let d2 = (w.rho_a - 0.25).powi(2) + (w.rho_b - 0.25).powi(2);
    if d2 < INNER_RADIUS_SQ {
        Region::Inside
    } else if d2 > OUTER_RADIUS_SQ {
        Region::Outside
    } else {
        Region::Between
    }
}

/// `max |W_n(w ± δ e_k) - W_n(w)|` over the four axis directions. Directions
/// that would leave the quadrant `ρ ≥ 0` are skipped.
pub fn continuity_probe(w: WeightParams, delta: f64, n: usize) -> Result<f64> {
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(Error::Domain("delta must be a finite non-negative number".into()));
    }
    if delta == 0.0 {
        return Ok(0.0);
    }
    let base = widom_factor(w, n)?;
    let shifts = [(delta, 0.0), (-delta, 0.0), (0.0, delta), (0.0, -delta)];
    let mut worst: f64 = 0.0;
    for (da, db) in shifts {
        let (a, b) = (w.rho_a + da, w.rho_b + db);
        if a < 0.0 || b < 0.0 {
            continue;
        }
        let v = widom_factor(WeightParams::new(a, b)?, n)?;
        worst = worst.max((v - base).abs());
    }
    Ok(worst)
}
