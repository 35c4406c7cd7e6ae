//! Quadrature building blocks: Gauss–Legendre panels and adaptive
//! Gauss–Kronrod (7/15) integration of complex-valued integrands.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "Gauss-Legendre rule needs at least one node");
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
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
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
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
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre rule on consecutive panels.
#[derive(Debug, Clone)]
pub struct PanelRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl PanelRule {
    /// `edges` must be strictly increasing; every panel gets `order` nodes.
    pub fn new(edges: &[f64], order: usize) -> Self {
        let (x, w) = gauss_legendre(order);
        let panels = edges.len().saturating_sub(1);
        let mut nodes = Vec::with_capacity(panels * order);
        let mut weights = Vec::with_capacity(panels * order);
        for pair in edges.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for (xi, wi) in x.iter().zip(&w) {
                nodes.push(mid + half * xi);
                weights.push(half * wi);
            }
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Panel edges covering `[lo, hi]` with width at most `width`, always
/// containing every breakpoint that falls inside the interval.
pub fn panel_edges(lo: f64, hi: f64, width: f64, breakpoints: &[f64]) -> Vec<f64> {
    let mut anchors: Vec<f64> = Vec::with_capacity(breakpoints.len() + 2);
    anchors.push(lo);
    for &b in breakpoints {
        if b > lo && b < hi {
            anchors.push(b);
        }
    }
    anchors.push(hi);
    anchors.sort_by(|a, b| a.partial_cmp(b).unwrap());
    anchors.dedup();

    let mut edges = Vec::new();
    edges.push(lo);
    for pair in anchors.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let pieces = libm::ceil((b - a) / width).max(1.0) as usize;
        let step = (b - a) / pieces as f64;
        for j in 1..pieces {
            edges.push(a + step * j as f64);
        }
        edges.push(b);
    }
    edges
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
    /// Integral of `|f|`, the scale against which roundoff is judged.
    pub magnitude: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    magnitude: f64,
}

fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> Segment {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f(mid);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut magnitude = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(mid - dx);
        let f2 = f(mid + dx);
        let s = f1 + f2;
        kronrod += s * WGK[j];
        magnitude += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).norm(),
        magnitude: magnitude * half.abs(),
    }
}

/// Tolerances for [`integrate_adaptive`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub relative: f64,
    pub absolute: f64,
    /// Error below `roundoff · ∫|f|` is accepted regardless of `relative`.
    pub roundoff: f64,
    pub max_segments: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { relative: 1e-10, absolute: 0.0, roundoff: 1e-14, max_segments: 50_000 }
    }
}

impl Tolerance {
    pub fn relative(relative: f64) -> Self {
        Self { relative, ..Self::default() }
    }

    fn target(&self, value: Complex64, magnitude: f64) -> f64 {
        (self.relative * value.norm())
            .max(self.absolute)
            .max(self.roundoff * magnitude)
    }
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error).is_eq()
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive G7/K15 integration over consecutive intervals given by `edges`.
///
/// Global strategy: the segment with the largest error estimate is bisected
/// until the summed estimate meets the tolerance.
pub fn integrate_adaptive<F>(mut f: F, edges: &[f64], tol: Tolerance) -> Result<Estimate>
where
    F: FnMut(f64) -> Complex64,
{
    let mut heap: BinaryHeap<Segment> = edges
        .windows(2)
        .filter(|p| p[1] > p[0])
        .map(|p| gk15(&mut f, p[0], p[1]))
        .collect();
    let mut evaluations = 15 * heap.len();
    let mut value: Complex64 = heap.iter().map(|s| s.value).sum();
    let mut error: f64 = heap.iter().map(|s| s.error).sum();
    let mut magnitude: f64 = heap.iter().map(|s| s.magnitude).sum();

    loop {
        if error <= tol.target(value, magnitude) {
            // re-sum to shed the drift of the running updates
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
            return Ok(Estimate { value, error, magnitude, evaluations });
        }
        if heap.len() >= tol.max_segments {
            return Err(Error::NumericalFailure { what: "adaptive quadrature", estimate: error });
        }
        let Some(seg) = heap.pop() else {
            return Ok(Estimate { value, error, magnitude, evaluations });
        };
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            return Err(Error::NumericalFailure { what: "adaptive quadrature", estimate: error });
        }
        let left = gk15(&mut f, seg.a, mid);
        let right = gk15(&mut f, mid, seg.b);
        value += left.value + right.value - seg.value;
        error += left.error + right.error - seg.error;
        magnitude += left.magnitude + right.magnitude - seg.magnitude;
        heap.push(left);
        heap.push(right);
        evaluations += 30;
    }
}

/// Real-valued convenience wrapper.
pub fn integrate_real<F>(mut f: F, edges: &[f64], tol: Tolerance) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    let est = integrate_adaptive(|x| Complex64::new(f(x), 0.0), edges, tol)?;
    Ok((est.value.re, est.error))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in [1usize, 2, 5, 16, 24, 31] {
            let (x, w) = gauss_legendre(n);
            let total: f64 = w.iter().sum();
            assert!((total - 2.0).abs() < 1e-14, "n = {n}");
            let deg = 2 * n - 1;
            let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32 - 1)).sum();
            let exact = if (deg - 1) % 2 == 0 { 2.0 / deg as f64 } else { 0.0 };
            assert!((q - exact).abs() < 1e-13, "n = {n}");
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn panel_edges_keep_breakpoints() {
        let e = panel_edges(0.0, 10.0, 0.3, &[1.0, 4.25, 20.0]);
        assert_eq!(e[0], 0.0);
        assert_eq!(*e.last().unwrap(), 10.0);
        assert!(e.contains(&1.0) && e.contains(&4.25));
        assert!(e.windows(2).all(|p| p[1] > p[0] && p[1] - p[0] <= 0.3 + 1e-12));
    }

    #[test]
    fn adaptive_oscillatory() {
        // ∫₀^{10} e^{i 7 x} dx
        let est = integrate_adaptive(
            |x| Complex64::new(0.0, 7.0 * x).exp(),
            &[0.0, 10.0],
            Tolerance::relative(1e-12),
        )
        .unwrap();
        let exact = (Complex64::new(0.0, 70.0).exp() - 1.0) / Complex64::new(0.0, 7.0);
        assert!((est.value - exact).norm() < 1e-12);
    }

    #[test]
    fn adaptive_endpoint_singularity() {
        let (v, _) = integrate_real(|x| 1.0 / x.sqrt(), &[0.0, 1.0], Tolerance::relative(1e-10)).unwrap();
        assert!((v - 2.0).abs() < 1e-9);
    }
}
