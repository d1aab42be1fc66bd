//! Adaptive composite Gauss–Legendre quadrature.
//!
//! Every integral in the crate goes through [`integrate`]: a globally adaptive
//! scheme that keeps a heap of 15-point panels and bisects the panel with the
//! largest error estimate until the summed estimate meets the requested
//! relative tolerance. The per-panel error estimate compares the panel rule
//! against the sum of the rule on its two halves.

use std::collections::BinaryHeap;
use std::sync::LazyLock;

const PANEL_POINTS: usize = 15;
const MAX_PANELS: usize = 20_000;

static GL15: LazyLock<(Vec<f64>, Vec<f64>)> = LazyLock::new(|| gauss_legendre(PANEL_POINTS));

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "gauss_legendre: need at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Fixed 15-point rule on `[a, b]`.
pub fn gl15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (nodes, weights) = &*GL15;
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let whole = gl15(f, a, b);
    let m = 0.5 * (a + b);
    let halves = gl15(f, a, m) + gl15(f, m, b);
    Panel {
        a,
        b,
        value: halves,
        error: (whole - halves).abs(),
    }
}

/// Integral of `f` over `[a, b]` to relative tolerance `rel_tol`.
///
/// Integrable endpoint singularities are handled by repeated bisection of the
/// offending panel; the panel budget caps the work and the best available
/// estimate is returned when it runs out.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    integrate_with(f, a, b, rel_tol, 0.0)
}

/// As [`integrate`], stopping once the error estimate is below either the
/// relative or the absolute tolerance. Use for integrals that may cancel to
/// (nearly) zero.
pub fn integrate_with<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if b < a {
        return -integrate_with(f, b, a, rel_tol, abs_tol);
    }
    let mut heap = BinaryHeap::new();
    let first = panel(&f, a, b);
    let mut total = first.value;
    let mut err = first.error;
    heap.push(first);
    while err > (rel_tol * total.abs()).max(abs_tol) && err > 1e-300 && heap.len() < MAX_PANELS {
        let worst = heap.pop().expect("heap is never empty here");
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            heap.push(worst);
            break;
        }
        let left = panel(&f, worst.a, m);
        let right = panel(&f, m, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to drop the drift accumulated by the incremental updates.
    heap.iter().map(|p| p.value).sum()
}
