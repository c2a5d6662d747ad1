//! Global maximization of a continuous function on an interval: uniform
//! sampling, then local refinement of every sampled peak.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a maximum of `f` on `[a, b]`.
///
/// Assumes `f` is unimodal on the bracket; the endpoints are candidates too,
/// so a monotone `f` converges onto the larger end.
pub(crate) fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> (f64, f64) {
    let (fa0, fb0) = (f(a), f(b));
    let (a0, b0) = (a, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= 4.0 * f64::EPSILON * (a.abs() + b.abs()).max(1e-300) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    if fa0 > best.1 {
        best = (a0, fa0);
    }
    if fb0 > best.1 {
        best = (b0, fb0);
    }
    best
}

/// Maximum of `f` over `[a, b]` from `samples` equally spaced points, each
/// sampled local peak refined by golden-section search in its neighbour
/// bracket. Returns `(argmax, max)`.
pub(crate) fn maximize<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, samples: usize) -> (f64, f64) {
    let samples = samples.max(3);
    let step = (b - a) / (samples - 1) as f64;
    let xs: Vec<f64> = (0..samples).map(|i| a + step * i as f64).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let grid_max = vs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    let mut best = (xs[0], vs[0]);
    for i in 0..samples {
        let left = if i > 0 { vs[i - 1] } else { f64::NEG_INFINITY };
        let right = if i + 1 < samples { vs[i + 1] } else { f64::NEG_INFINITY };
        if vs[i] < left || vs[i] < right {
            continue;
        }
        // Peaks far below the sampled maximum cannot win after refinement.
        if vs[i] < 0.5 * grid_max {
            continue;
        }
        let lo = xs[i.saturating_sub(1)];
        let hi = xs[(i + 1).min(samples - 1)];
        let cand = golden_max(&f, lo, hi);
        let cand = if cand.1 >= vs[i] { cand } else { (xs[i], vs[i]) };
        if cand.1 > best.1 {
            best = cand;
        }
    }
    best
}
