//! Composite Gauss–Legendre quadrature.
//!
//! Used only as an independent cross-check for the AGM routines; nothing on
//! the fast path depends on it.

use rayon::prelude::*;
use std::f64::consts::PI;

/// Nodes and weights of an n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the rule by Newton iteration on P_n, starting from the
    /// Chebyshev-like guess cos(π(i + 3/4)/(n + 1/2)).
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
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
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrates `f` over [lo, hi] split into `panels` equal panels.
    ///
    /// Panels are summed in fixed chunks so the result does not depend on
    /// the thread schedule.
    pub fn integrate<F>(&self, f: F, lo: f64, hi: f64, panels: usize) -> f64
    where
        F: Fn(f64) -> f64 + Sync,
    {
        assert!(panels >= 1);
        let h = (hi - lo) / panels as f64;
        let half = 0.5 * h;
        const CHUNK: usize = 4096;
        let n_chunks = panels.div_ceil(CHUNK);
        let partials: Vec<f64> = (0..n_chunks)
            .into_par_iter()
            .map(|c| {
                let start = c * CHUNK;
                let end = (start + CHUNK).min(panels);
                let mut acc = 0.0;
                for k in start..end {
                    let mid = lo + (k as f64 + 0.5) * h;
                    let mut s = 0.0;
                    for (x, w) in self.nodes.iter().zip(&self.weights) {
                        s += w * f(mid + half * x);
                    }
                    acc += s;
                }
                acc
            })
            .collect();
        partials.iter().sum::<f64>() * half
    }
}

/// Evaluates P_n(x) and P_n'(x) via the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
