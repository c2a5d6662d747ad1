//! Command-line front end of the `widom` binary.
//!
//! Exit codes: 0 success, 1 bad arguments or unwritable output, 2 solver
//! failure, 3 a verified property does not hold.

pub mod document;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{is_corner, m_bound_report, verify_coeff_lemma};
use crate::circle::{erdos_lax_check, polya_szego_combine, verify_cn_relation};
use crate::error::Error;
use crate::minimax::{solve, SolveOptions};
use crate::oracle::{brute_minimax, DEFAULT_RESTARTS};
use crate::special::{JacobiParams, WeightParams};
use crate::widom::{bound_chain, scan, widom_sequence, GridSpec};

use document::{num, scan_csv, SequenceDocument, SolutionDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SOLVER: i32 = 2;
pub const EXIT_PROPERTY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "widom", version, about = "Weighted Chebyshev polynomials and Widom factors for Jacobi weights")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the weighted Chebyshev problem for one degree.
    Solve(SolveArgs),
    /// Widom factors W_1..W_n and their monotonicity.
    Widom(WidomArgs),
    /// Classify Widom sequences over a square parameter grid.
    Scan(ScanArgs),
    /// Numerical checks of the bounds and identities.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Brute-force minimax by simplex search (degree ≤ 3).
    Oracle(OracleArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct WeightArgs {
    #[arg(long, allow_hyphen_values = true)]
    rho_a: f64,
    #[arg(long, allow_hyphen_values = true)]
    rho_b: f64,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    weight: WeightArgs,
    #[arg(long)]
    degree: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value_t = 60)]
    max_iter: usize,
    #[arg(long, default_value_t = 30)]
    grid_factor: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct WidomArgs {
    #[command(flatten)]
    weight: WeightArgs,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Points per side; ignored with --full.
    #[arg(long, default_value_t = 40)]
    resolution: usize,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    /// Parameter range as lo:hi.
    #[arg(long, default_value = "0:0.8", value_parser = parse_range)]
    range: (f64, f64),
    /// Full 250 × 250 grid, overriding --resolution.
    #[arg(long)]
    full: bool,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Monotone growth of M_n to its limit over a grid of the parameter square.
    Bounds {
        #[arg(long, default_value_t = 1000)]
        n_max: usize,
        #[arg(long, default_value_t = 9)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Signs of the coefficients c0, c1, c2 on the parameter triangle.
    Coeffs {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Interval/circle norm relation, Erdős–Lax equality, Pólya–Szegő zeros.
    Circle {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        /// Random configurations for the Erdős–Lax and Pólya–Szegő checks.
        #[arg(long, default_value_t = 50)]
        random: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// W_n ≤ 2ⁿ sup|w P̂_n| ≤ M_n ≤ 2^{1-ρα-ρβ} on {0.1, 0.25, 0.4}².
    Jacobi {
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    weight: WeightArgs,
    #[arg(long)]
    degree: usize,
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    restarts: usize,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: f64 = a.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: f64 = b.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    if !(lo >= 0.0 && hi > lo && hi.is_finite()) {
        return Err("need 0 <= lo < hi".into());
    }
    Ok((lo, hi))
}

/// A failure mapped to its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) => EXIT_USAGE,
            Error::PropertyViolation(_) => EXIT_PROPERTY,
            _ => EXIT_SOLVER,
        };
        Self { code, message: e.to_string() }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Widom(a) => cmd_widom(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Verify(v) => cmd_verify(v),
        Command::Oracle(a) => cmd_oracle(a),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn weight(a: &WeightArgs) -> Result<WeightParams, Failure> {
    WeightParams::new(a.rho_a, a.rho_b).map_err(|e| Failure::usage(e.to_string()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

fn cmd_solve(a: SolveArgs) -> Result<i32, Failure> {
    let w = weight(&a.weight)?;
    if a.degree == 0 {
        return Err(Failure::usage("--degree must be at least 1"));
    }
    let opts = SolveOptions {
        tolerance: a.tol,
        max_iter: a.max_iter,
        grid_factor: a.grid_factor,
    };
    let sol = solve(w, a.degree, &opts)?;
    let doc = SolutionDocument::from_solution(&sol);
    let text = match a.format {
        Format::Json => to_json(&doc),
        Format::Text => doc.to_text(),
    };
    emit(&text, a.out.as_deref())?;
    Ok(EXIT_OK)
}

fn cmd_widom(a: WidomArgs) -> Result<i32, Failure> {
    let w = weight(&a.weight)?;
    if a.n_max < 2 {
        return Err(Failure::usage("--n-max must be at least 2"));
    }
    let seq = widom_sequence(w, a.n_max)?;
    let doc = SequenceDocument::from_sequence(&seq);
    let text = match a.format {
        Format::Json => to_json(&doc),
        Format::Text => doc.to_text(),
    };
    emit(&text, a.out.as_deref())?;
    Ok(EXIT_OK)
}

fn cmd_scan(a: ScanArgs) -> Result<i32, Failure> {
    let resolution = if a.full { 250 } else { a.resolution };
    if resolution < 2 {
        return Err(Failure::usage("--resolution must be at least 2"));
    }
    if a.n_max < 2 {
        return Err(Failure::usage("--n-max must be at least 2"));
    }
    // Fail on unwritable destinations before the expensive part.
    for path in std::iter::once(&a.out).chain(a.svg.as_ref()) {
        fs::File::create(path).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let grid = GridSpec {
        lo: a.range.0,
        hi: a.range.1,
        resolution,
    };
    let result = scan(grid, a.n_max)?;
    emit(&scan_csv(&result), Some(&a.out))?;
    if let Some(svg_path) = &a.svg {
        emit(&svg::heatmap(&result), Some(svg_path))?;
    }
    let mut counts = std::collections::BTreeMap::<&str, usize>::new();
    for c in &result.cells {
        *counts.entry(c.classification.map_or("Failed", |k| k.label())).or_default() += 1;
    }
    let summary: Vec<String> = counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
    println!(
        "{} cells in {:.2} s: {}",
        result.cells.len(),
        result.runtime_secs,
        summary.join(" ")
    );
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct Check {
    name: String,
    passed: bool,
    max_violation: f64,
    detail: String,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    suite: &'static str,
    passed: bool,
    checks: Vec<Check>,
}

impl VerifyReport {
    fn new(suite: &'static str, checks: Vec<Check>) -> Self {
        Self {
            suite,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!(
                "{} {:<40} max violation {}  {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                num(c.max_violation),
                c.detail
            ));
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        s.push_str(&format!(
            "{}: {} checks, {} failed\n",
            self.suite,
            self.checks.len(),
            failed
        ));
        s
    }
}

fn cmd_verify(v: VerifyCommand) -> Result<i32, Failure> {
    let (report, format) = match v {
        VerifyCommand::Bounds { n_max, grid, format } => (verify_bounds(n_max, grid)?, format),
        VerifyCommand::Coeffs { samples, format } => (verify_coeffs(samples)?, format),
        VerifyCommand::Circle { n_max, random, seed, format } => (verify_circle(n_max, random, seed)?, format),
        VerifyCommand::Jacobi { n_max, format } => (verify_jacobi(n_max)?, format),
    };
    let text = match format {
        Format::Json => to_json(&report),
        Format::Text => report.to_text(),
    };
    emit(&text, None)?;
    Ok(if report.passed { EXIT_OK } else { EXIT_PROPERTY })
}

fn verify_bounds(n_max: usize, grid: usize) -> Result<VerifyReport, Failure> {
    if grid < 2 || n_max < 2 {
        return Err(Failure::usage("--grid and --n-max must be at least 2"));
    }
    let mut checks = Vec::new();
    for i in 0..grid {
        for j in 0..grid {
            let alpha = -0.5 + i as f64 / (grid - 1) as f64;
            let beta = -0.5 + j as f64 / (grid - 1) as f64;
            let p = JacobiParams::new(alpha, beta)?;
            let r = m_bound_report(p, n_max)?;
            let corner = is_corner(p);
            let last = *r.values.last().expect("n_max >= 2");
            let gap = (last - r.limit).abs();
            let limit_ok = n_max < 1000 || gap <= 1e-4;
            let passed = r.monotone && (r.strict || corner) && limit_ok;
            checks.push(Check {
                name: format!("M_n at (α, β) = ({alpha:.3}, {beta:.3})"),
                passed,
                max_violation: r.max_violation,
                detail: format!(
                    "monotone={} strict={} |M_{n_max} - limit|={gap:.3e}",
                    r.monotone, r.strict
                ),
            });
        }
    }
    Ok(VerifyReport::new("bounds", checks))
}

fn verify_coeffs(samples: usize) -> Result<VerifyReport, Failure> {
    let r = verify_coeff_lemma(samples)?;
    let check = Check {
        name: format!("c0, c1, c2 <= 0 on {} points", r.points),
        passed: r.passed(),
        max_violation: r.max_violation.max(r.boundary_mismatch),
        detail: format!(
            "max c0={:.3e} c1={:.3e} c2={:.3e}; equality at {:?}; edge mismatch {:.1e}",
            r.max_c0, r.max_c1, r.max_c2, r.equality_points, r.boundary_mismatch
        ),
    };
    Ok(VerifyReport::new("coeffs", vec![check]))
}

fn verify_circle(n_max: usize, random: usize, seed: u64) -> Result<VerifyReport, Failure> {
    let mut checks = Vec::new();
    for &(a, b) in &[(0.5, 0.5), (0.75, 0.75), (1.0, 1.0), (0.75, 1.25)] {
        let w = WeightParams::new(a, b)?;
        for n in 0..=n_max {
            let r = verify_cn_relation(w, n)?;
            checks.push(Check {
                name: format!("C_n relation at ({a}, {b}), n = {n}"),
                passed: r.ratio_defect <= 1e-6,
                max_violation: r.ratio_defect,
                detail: format!("C_n={} I_n={}", num(r.c_n), num(r.i_n)),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_el: f64 = 0.0;
    for _ in 0..random {
        let count = rng.gen_range(1..=5);
        let top = (12.0 / count as f64).min(3.0);
        let angles: Vec<f64> = (0..count).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        let exps: Vec<f64> = (0..count).map(|_| rng.gen_range(1.0..=top)).collect();
        worst_el = worst_el.max(erdos_lax_check(&angles, &exps)?.relative_defect());
    }
    checks.push(Check {
        name: format!("Erdős–Lax equality, {random} configurations"),
        passed: worst_el <= 1e-6,
        max_violation: worst_el,
        detail: String::new(),
    });
    let mut worst_ps: f64 = 0.0;
    for _ in 0..random {
        let count = rng.gen_range(1..=7);
        let pts: Vec<Complex64> = (0..count)
            .map(|_| Complex64::from_polar(0.99 * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        let roots = polya_szego_combine(&pts)?.roots()?;
        for r in roots {
            worst_ps = worst_ps.max((r.norm() - 1.0).abs());
        }
    }
    checks.push(Check {
        name: format!("Pólya–Szegő zeros on |z| = 1, {random} sets"),
        passed: worst_ps <= 1e-8,
        max_violation: worst_ps,
        detail: String::new(),
    });
    Ok(VerifyReport::new("circle", checks))
}

fn verify_jacobi(n_max: usize) -> Result<VerifyReport, Failure> {
    if n_max < 1 {
        return Err(Failure::usage("--n-max must be at least 1"));
    }
    let grid = [0.1, 0.25, 0.4];
    let mut checks = Vec::new();
    for &a in &grid {
        for &b in &grid {
            let w = WeightParams::new(a, b)?;
            let mut worst: f64 = 0.0;
            for n in 1..=n_max {
                worst = worst.max(bound_chain(w, n)?.max_violation());
            }
            checks.push(Check {
                name: format!("bound chain at ({a}, {b}), n <= {n_max}"),
                passed: worst <= 1e-9,
                max_violation: worst,
                detail: String::new(),
            });
        }
    }
    Ok(VerifyReport::new("jacobi", checks))
}

#[derive(Serialize)]
struct OracleDocument {
    rho_a: f64,
    rho_b: f64,
    degree: usize,
    nodes: Vec<f64>,
    norm: f64,
    remez_norm: Option<f64>,
    relative_gap: Option<f64>,
}

fn cmd_oracle(a: OracleArgs) -> Result<i32, Failure> {
    let w = weight(&a.weight)?;
    let r = brute_minimax(w, a.degree, a.restarts)?;
    let remez = if a.degree >= 1 { solve(w, a.degree, &SolveOptions::default()).ok().map(|s| s.norm) } else { None };
    let doc = OracleDocument {
        rho_a: w.rho_a,
        rho_b: w.rho_b,
        degree: a.degree,
        relative_gap: remez.map(|m| (r.norm - m).abs() / m),
        nodes: r.nodes,
        norm: r.norm,
        remez_norm: remez,
    };
    emit(&to_json(&doc), None)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parser() {
        assert_eq!(parse_range("0:0.8").unwrap(), (0.0, 0.8));
        assert!(parse_range("0.8:0").is_err());
        assert!(parse_range("-1:2").is_err());
        assert!(parse_range("abc").is_err());
    }

    #[test]
    fn bad_flags_exit_one() {
        assert_eq!(run(["widom", "solve", "--rho-a", "0"]), EXIT_USAGE);
        assert_eq!(run(["widom", "bogus"]), EXIT_USAGE);
        assert_eq!(run(["widom", "solve", "--rho-a", "-1", "--rho-b", "0", "--degree", "2"]), EXIT_USAGE);
    }
}
