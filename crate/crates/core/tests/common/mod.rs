//! Independent numerical oracles for the integration tests. Nothing here
//! calls into the library's special functions.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

pub fn std_normal_density(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// IG(1, 1) density.
pub fn ig11_density(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    (1.0 / (2.0 * PI * x * x * x)).sqrt() * (-(x - 1.0).powi(2) / (2.0 * x)).exp()
}

/// CDF values of a density at sorted points, by integrating between
/// consecutive points starting from `lower` (where the CDF is `base`).
pub fn cdf_at_sorted<F: Fn(f64) -> f64>(density: &F, lower: f64, base: f64, sorted: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(sorted.len());
    let mut acc = base;
    let mut prev = lower;
    for &x in sorted {
        if x > prev {
            acc += integrate(density, prev, x, 1e-12);
            prev = x;
        }
        out.push(acc);
    }
    out
}

/// One-sample Kolmogorov–Smirnov distance from precomputed CDF values at
/// the sorted sample.
pub fn ks_from_cdf(cdf: &[f64]) -> f64 {
    let n = cdf.len() as f64;
    cdf.iter()
        .enumerate()
        .map(|(i, &f)| (f - i as f64 / n).max((i + 1) as f64 / n - f))
        .fold(0.0, f64::max)
}

/// Tabulated inverse-CDF sampler for a one-dimensional density given on a
/// grid in `s`, with `u = map(s)`.
pub struct GridSampler {
    s: Vec<f64>,
    cdf: Vec<f64>,
}

impl GridSampler {
    /// `log_density_s` is the log density of `s` (unnormalized).
    pub fn new<F: Fn(f64) -> f64>(log_density_s: F, lo: f64, hi: f64, points: usize) -> Self {
        let s: Vec<f64> = (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .collect();
        let d: Vec<f64> = s.iter().map(|&v| log_density_s(v).exp()).collect();
        let mut cdf = vec![0.0; points];
        for i in 1..points {
            cdf[i] = cdf[i - 1] + 0.5 * (d[i] + d[i - 1]) * (s[i] - s[i - 1]);
        }
        let total = cdf[points - 1];
        cdf.iter_mut().for_each(|c| *c /= total);
        GridSampler { s, cdf }
    }

    pub fn quantile(&self, p: f64) -> f64 {
        let i = self.cdf.partition_point(|&c| c < p).clamp(1, self.s.len() - 1);
        let (c0, c1) = (self.cdf[i - 1], self.cdf[i]);
        let w = if c1 > c0 { (p - c0) / (c1 - c0) } else { 0.5 };
        self.s[i - 1] + w * (self.s[i] - self.s[i - 1])
    }
}

/// Minimal deterministic generator for oracle inputs (SplitMix64), kept
/// separate from the library's streams.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform on (0, 1).
    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }
}
