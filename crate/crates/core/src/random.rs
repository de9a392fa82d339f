//! Seeded random streams and base-distribution samplers.
//!
//! Every stream is a ChaCha8 generator keyed by a 64-bit seed with a 64-bit
//! stream id, so `(seed, stream)` pairs give reproducible, non-overlapping
//! sequences. Parallel work obtains its streams through [`RngState::fork`].

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Gamma, StandardNormal};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct RngState {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl RngState {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        RngState {
            seed,
            stream,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Derive `count` independent child streams. The children share a fresh
    /// seed drawn from `self` and are distinguished by stream id `0..count`,
    /// so the result depends only on the parent state, not on how the
    /// children are later scheduled.
    pub fn fork(&mut self, count: usize) -> Vec<RngState> {
        let child_seed = self.inner.next_u64();
        (0..count as u64)
            .map(|i| RngState::new(child_seed, i))
            .collect()
    }

    /// One U[0,1) variate.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// One U(0,1) variate, never exactly zero.
    #[inline]
    pub fn uniform_open(&mut self) -> f64 {
        loop {
            let u = self.uniform();
            if u > 0.0 {
                return u;
            }
        }
    }

    #[inline]
    pub fn std_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.inner)
    }

    #[inline]
    pub fn std_exponential(&mut self) -> f64 {
        Exp1.sample(&mut self.inner)
    }
}

impl RngCore for RngState {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive and finite, got {value}"
        )))
    }
}

pub fn sample_uniform01(rng: &mut RngState, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.uniform()).collect()
}

pub fn sample_normal(rng: &mut RngState, n: usize, mean: f64, sd: f64) -> Result<Vec<f64>> {
    check_positive("sd", sd)?;
    Ok((0..n).map(|_| mean + sd * rng.std_normal()).collect())
}

pub fn sample_exponential(rng: &mut RngState, n: usize, rate: f64) -> Result<Vec<f64>> {
    check_positive("rate", rate)?;
    Ok((0..n).map(|_| rng.std_exponential() / rate).collect())
}

/// Gamma(shape, scale) sampler (Marsaglia–Tsang, with the `U^{1/k}` boost
/// for `k < 1`).
#[derive(Clone, Copy, Debug)]
pub struct GammaSampler {
    dist: Gamma<f64>,
}

impl GammaSampler {
    pub fn new(shape: f64, scale: f64) -> Result<Self> {
        check_positive("gamma shape", shape)?;
        check_positive("gamma scale", scale)?;
        let dist = Gamma::new(shape, scale).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(GammaSampler { dist })
    }

    #[inline]
    pub fn draw(&self, rng: &mut RngState) -> f64 {
        self.dist.sample(&mut rng.inner)
    }
}

pub fn sample_gamma(rng: &mut RngState, n: usize, shape: f64, scale: f64) -> Result<Vec<f64>> {
    let g = GammaSampler::new(shape, scale)?;
    Ok((0..n).map(|_| g.draw(rng)).collect())
}

/// Inverse Gaussian sampler by the Michael–Schucany–Haas transformation:
/// take `nu = Z^2`, form the smaller root `x` of the quadratic relating
/// `nu` to the variate, and return `x` with probability `mu / (mu + x)`,
/// otherwise the other root `mu^2 / x`.
#[derive(Clone, Copy, Debug)]
pub struct InvGaussSampler {
    mu: f64,
    lambda: f64,
}

impl InvGaussSampler {
    pub fn new(mu: f64, lambda: f64) -> Result<Self> {
        check_positive("inverse Gaussian mean", mu)?;
        check_positive("inverse Gaussian shape", lambda)?;
        Ok(InvGaussSampler { mu, lambda })
    }

    #[inline]
    pub fn draw(&self, rng: &mut RngState) -> f64 {
        let (mu, lambda) = (self.mu, self.lambda);
        let z = rng.std_normal();
        let y = mu * z * z;
        // Rationalized form of mu + mu/(2l) * (y - sqrt(4ly + y^2)); it
        // avoids cancellation when y is large relative to lambda.
        let x = mu * 2.0 * lambda / (2.0 * lambda + y + (4.0 * lambda * y + y * y).sqrt());
        if rng.uniform() * (mu + x) <= mu {
            x
        } else {
            mu * mu / x
        }
    }
}

pub fn sample_invgauss(rng: &mut RngState, n: usize, mu: f64, lambda: f64) -> Result<Vec<f64>> {
    let g = InvGaussSampler::new(mu, lambda)?;
    Ok((0..n).map(|_| g.draw(rng)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean(v: &[f64]) -> f64 {
        v.iter().sum::<f64>() / v.len() as f64
    }

    fn var(v: &[f64]) -> f64 {
        let m = mean(v);
        v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() - 1) as f64
    }

    #[test]
    fn uniform_range_and_mean() {
        let mut rng = RngState::new(1, 0);
        let small = sample_uniform01(&mut rng, 3);
        assert!(small.iter().all(|&u| (0.0..1.0).contains(&u)));
        let big = sample_uniform01(&mut RngState::new(1, 0), 10_000);
        assert!((mean(&big) - 0.5).abs() < 0.02);
    }

    #[test]
    fn same_seed_and_stream_is_deterministic() {
        let a = sample_uniform01(&mut RngState::new(1, 7), 100);
        let b = sample_uniform01(&mut RngState::new(1, 7), 100);
        assert_eq!(a, b);
        let c = sample_uniform01(&mut RngState::new(1, 8), 100);
        assert_ne!(a, c);
    }

    #[test]
    fn fork_is_reproducible() {
        let mut p1 = RngState::new(99, 0);
        let mut p2 = RngState::new(99, 0);
        let a: Vec<u64> = p1.fork(4).iter_mut().map(|r| r.next_u64()).collect();
        let b: Vec<u64> = p2.fork(4).iter_mut().map(|r| r.next_u64()).collect();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn normal_moments_and_errors() {
        let v = sample_normal(&mut RngState::new(2, 0), 10_000, 0.0, 1.0).unwrap();
        assert!((var(&v) - 1.0).abs() < 0.05);
        assert!(mean(&v).abs() < 0.03);
        assert!(sample_normal(&mut RngState::new(2, 0), 1, 5.0, 0.0).is_err());
    }

    #[test]
    fn exponential_mean_and_errors() {
        let v = sample_exponential(&mut RngState::new(3, 0), 10_000, 1.0).unwrap();
        assert!((mean(&v) - 1.0).abs() < 0.03);
        let one = sample_exponential(&mut RngState::new(3, 0), 1, 2.0).unwrap();
        assert!(one[0] > 0.0);
        assert!(sample_exponential(&mut RngState::new(3, 0), 1, 0.0).is_err());
    }

    #[test]
    fn gamma_mean_and_errors() {
        let v = sample_gamma(&mut RngState::new(4, 0), 10_000, 3.66, 0.44).unwrap();
        assert!((mean(&v) - 1.6104).abs() < 0.03);
        assert!(sample_gamma(&mut RngState::new(4, 0), 1, 0.0, 1.0).is_err());
    }

    #[test]
    fn invgauss_moments_and_errors() {
        let v = sample_invgauss(&mut RngState::new(5, 0), 10_000, 1.0, 1.0).unwrap();
        assert!((mean(&v) - 1.0).abs() < 0.03);
        let inv_mean = v.iter().map(|x| 1.0 / x).sum::<f64>() / v.len() as f64;
        assert!((inv_mean - 2.0).abs() < 0.05);
        assert!(sample_invgauss(&mut RngState::new(5, 0), 1, 1.0, 0.0).is_err());
    }
}
