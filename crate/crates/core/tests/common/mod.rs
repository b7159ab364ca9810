//! Brute-force references shared by the integration and acceptance tests.
//! Nothing here calls into the library's quadrature.

#![allow(dead_code)]

use std::f64::consts::PI;

/// sin^4(x/2) / (x^3 (x^2 + gt^2)), or sin^4(x/2) / x^5 above gt when `sharp`.
pub fn integrand(x: f64, gt: f64, sharp: bool) -> f64 {
    let s = (0.5 * x).sin();
    let s4 = s * s * s * s;
    if sharp {
        if x < gt {
            0.0
        } else {
            s4 / x.powi(5)
        }
    } else {
        s4 / (x.powi(3) * (x * x + gt * gt))
    }
}

/// Composite midpoint rule with `n` equal panels on each segment between
/// consecutive `edges`.
pub fn midpoint(edges: &[f64], n: usize, f: &dyn Fn(f64) -> f64) -> f64 {
    edges
        .windows(2)
        .map(|w| {
            let h = (w[1] - w[0]) / n as f64;
            let mut acc = 0.0;
            for i in 0..n {
                acc += f(w[0] + (i as f64 + 0.5) * h);
            }
            acc * h
        })
        .sum()
}

/// Segment edges from `lo` to `hi`, growing geometrically (x4) from a first
/// width `first` so every scale of the integrand gets the same panel count.
pub fn geometric_edges(lo: f64, hi: f64, first: f64) -> Vec<f64> {
    let mut edges = vec![lo];
    let mut width = first;
    while *edges.last().unwrap() + width < hi {
        edges.push(edges.last().unwrap() + width);
        width *= 4.0;
    }
    edges.push(hi);
    edges
}

/// Midpoint sum of the dimensionless integrand over (lower, upper], doubling
/// the panel count until two successive sums agree to `self_tol`.
pub fn midpoint_oracle(gt: f64, upper: f64, sharp: bool, self_tol: f64) -> f64 {
    let lower = if sharp { gt } else { 0.0 };
    let edges = geometric_edges(lower, upper, 1e-3 * gt.min(1.0));
    let f = |x: f64| integrand(x, gt, sharp);
    let mut n = 512;
    let mut last = midpoint(&edges, n, &f);
    loop {
        n *= 2;
        let next = midpoint(&edges, n, &f);
        if (next - last).abs() <= self_tol * next.abs() {
            return next;
        }
        assert!(n < 1 << 22, "midpoint oracle failed to settle");
        last = next;
    }
}

/// Oracle for a large cut-off: midpoint on (0, 200 pi], then the 3/8 x^-5
/// envelope from 200 pi to `upper` (the oscillating remainder is below
/// (200 pi)^-5 ~ 1e-14).
pub fn midpoint_oracle_with_tail(gt: f64, upper: f64) -> f64 {
    let split = 200.0 * PI;
    let body = midpoint_oracle(gt, split, false, 1e-9);
    let tail = 0.375 * (1.0 / (4.0 * split.powi(4)) - 1.0 / (4.0 * upper.powi(4)));
    body + tail
}
