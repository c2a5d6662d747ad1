//! Serialized forms of solver output.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::minimax::{error_extrema, ChebyshevSolution, MonicPolynomial, SolveOptions};
use crate::special::WeightParams;
use crate::widom::{ScanResult, WidomSequence};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDocument {
    pub rho_a: f64,
    pub rho_b: f64,
    pub degree: usize,
    /// Power basis, ascending.
    pub coefficients: Vec<f64>,
    /// First-kind Chebyshev basis, ascending, without the implied leading term.
    pub cheb_coeffs: Vec<f64>,
    pub roots: Vec<f64>,
    pub reference: Vec<f64>,
    pub norm: f64,
    pub lower_bound: f64,
    pub widom: f64,
    pub iterations: usize,
    pub levelling_defect: f64,
    pub condition: f64,
}

impl SolutionDocument {
    pub fn from_solution(sol: &ChebyshevSolution) -> Self {
        Self {
            rho_a: sol.weight.rho_a,
            rho_b: sol.weight.rho_b,
            degree: sol.poly.degree,
            coefficients: sol.poly.power_coeffs(),
            cheb_coeffs: sol.poly.cheb_coeffs.clone(),
            roots: sol.poly.roots.clone().unwrap_or_default(),
            reference: sol.reference.clone(),
            norm: sol.norm,
            lower_bound: sol.lower_bound,
            widom: sol.widom,
            iterations: sol.iterations,
            levelling_defect: sol.levelling_defect,
            condition: sol.condition,
        }
    }

    /// Recomputes `max |w p|` from the stored weight and Chebyshev coefficients.
    pub fn reevaluate_norm(&self) -> Result<f64> {
        let w = WeightParams::new(self.rho_a, self.rho_b)?;
        let poly = MonicPolynomial::new(self.cheb_coeffs.clone());
        let grid = SolveOptions::default().grid_size(self.degree);
        let ext = error_extrema(w, &poly, grid)?;
        Ok(ext.iter().map(|e| e.1.abs()).fold(0.0, f64::max))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "weight     (1-x)^{} (1+x)^{}", num(self.rho_a), num(self.rho_b));
        let _ = writeln!(s, "degree     {}", self.degree);
        let _ = writeln!(s, "norm       {}", num(self.norm));
        let _ = writeln!(s, "widom      {}", num(self.widom));
        let _ = writeln!(s, "defect     {}", num(self.levelling_defect));
        let _ = writeln!(s, "iterations {}", self.iterations);
        let _ = writeln!(s, "roots      {}", list(&self.roots));
        let _ = writeln!(s, "reference  {}", list(&self.reference));
        let _ = writeln!(s, "coeffs     {}", list(&self.coefficients));
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceDocument {
    pub rho_a: f64,
    pub rho_b: f64,
    pub n_start: usize,
    pub values: Vec<f64>,
    pub asymptote: f64,
    pub classification: String,
    /// Degree-zero value, the maximum of the weight.
    pub weight_sup: f64,
}

impl SequenceDocument {
    pub fn from_sequence(seq: &WidomSequence) -> Self {
        Self {
            rho_a: seq.weight.rho_a,
            rho_b: seq.weight.rho_b,
            n_start: seq.n_start,
            values: seq.values.clone(),
            asymptote: seq.asymptote,
            classification: seq.classification.label().to_string(),
            weight_sup: crate::bounds::weight_sup_bound(seq.weight),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.values.iter().enumerate() {
            let _ = writeln!(s, "W_{:<3} {}", self.n_start + k, num(*v));
        }
        let _ = writeln!(s, "limit  {}", num(self.asymptote));
        let _ = writeln!(s, "class  {}", self.classification);
        s
    }
}

/// Seventeen significant digits, enough to round-trip any double.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn list(v: &[f64]) -> String {
    v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(" ")
}

/// Header `rho_a,rho_b,classification,w1..wN`, one row per cell, `ρα` fastest.
/// Failed cells carry `Failed` and empty value fields.
pub fn scan_csv(result: &ScanResult) -> String {
    let mut s = String::from("rho_a,rho_b,classification");
    for k in 1..=result.n_max {
        let _ = write!(s, ",w{k}");
    }
    s.push('\n');
    for cell in &result.cells {
        let label = cell.classification.map_or("Failed", |c| c.label());
        let _ = write!(s, "{},{},{}", num(cell.weight.rho_a), num(cell.weight.rho_b), label);
        for k in 0..result.n_max {
            s.push(',');
            if let Some(v) = cell.values.get(k) {
                s.push_str(&num(*v));
            }
        }
        s.push('\n');
    }
    s
}
