//! I.i.d. proposal densities on the `u` space.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::framework::Proposal;
use crate::random::{GammaSampler, InvGaussSampler, RngState};
use crate::special::ln_gamma_unchecked;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// U[0,1]^n.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitUniform;

impl Proposal for UnitUniform {
    fn sample_into(&self, rng: &mut RngState, out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = rng.uniform());
    }

    fn log_density(&self, u: &[f64]) -> f64 {
        if u.iter().all(|v| (0.0..=1.0).contains(v)) {
            0.0
        } else {
            f64::NEG_INFINITY
        }
    }
}

/// Mixture `(1 - w) N(0, I) + w N(0, s^2 I)` over whole vectors. With
/// `w = 0` this is the standard normal.
#[derive(Clone, Copy, Debug)]
pub struct NormalMixture {
    weight: f64,
    small_sd: f64,
}

impl NormalMixture {
    pub fn standard() -> Self {
        NormalMixture {
            weight: 0.0,
            small_sd: 1.0,
        }
    }

    pub fn new(weight: f64, small_sd: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&weight) {
            return Err(Error::InvalidParameter(format!(
                "mixture weight must lie in [0, 1), got {weight}"
            )));
        }
        if !(small_sd > 0.0) || !small_sd.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mixture sd must be positive, got {small_sd}"
            )));
        }
        Ok(NormalMixture { weight, small_sd })
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }
}

impl Proposal for NormalMixture {
    fn sample_into(&self, rng: &mut RngState, out: &mut [f64]) {
        let sd = if self.weight > 0.0 && rng.uniform() < self.weight {
            self.small_sd
        } else {
            1.0
        };
        out.iter_mut().for_each(|v| *v = sd * rng.std_normal());
    }

    fn log_density(&self, u: &[f64]) -> f64 {
        let n = u.len() as f64;
        let ss: f64 = u.iter().map(|v| v * v).sum();
        let wide = -n * LN_SQRT_2PI - 0.5 * ss;
        if self.weight == 0.0 {
            return wide;
        }
        let s = self.small_sd;
        let narrow = -n * (LN_SQRT_2PI + s.ln()) - 0.5 * ss / (s * s);
        let a = (1.0 - self.weight).ln() + wide;
        let b = self.weight.ln() + narrow;
        let m = a.max(b);
        m + ((a - m).exp() + (b - m).exp()).ln()
    }
}

/// Gamma(shape, scale)^n.
#[derive(Clone, Copy, Debug)]
pub struct GammaIid {
    shape: f64,
    scale: f64,
    sampler: GammaSampler,
    log_norm: f64,
}

impl GammaIid {
    pub fn new(shape: f64, scale: f64) -> Result<Self> {
        let sampler = GammaSampler::new(shape, scale)?;
        Ok(GammaIid {
            shape,
            scale,
            sampler,
            log_norm: shape * scale.ln() + ln_gamma_unchecked(shape),
        })
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn log_density_1(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return f64::NEG_INFINITY;
        }
        (self.shape - 1.0) * x.ln() - x / self.scale - self.log_norm
    }
}

impl Proposal for GammaIid {
    fn sample_into(&self, rng: &mut RngState, out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = self.sampler.draw(rng));
    }

    fn log_density(&self, u: &[f64]) -> f64 {
        u.iter().map(|&x| self.log_density_1(x)).sum()
    }
}

/// InverseGaussian(mu, lambda)^n.
#[derive(Clone, Copy, Debug)]
pub struct InvGaussIid {
    mu: f64,
    lambda: f64,
    sampler: InvGaussSampler,
}

impl InvGaussIid {
    pub fn new(mu: f64, lambda: f64) -> Result<Self> {
        Ok(InvGaussIid {
            mu,
            lambda,
            sampler: InvGaussSampler::new(mu, lambda)?,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn log_density_1(&self, x: f64) -> f64 {
        invgauss_log_density(x, self.mu, self.lambda)
    }
}

/// ln of `sqrt(l / (2 pi x^3)) exp(-l (x - mu)^2 / (2 mu^2 x))`.
pub fn invgauss_log_density(x: f64, mu: f64, lambda: f64) -> f64 {
    if x <= 0.0 {
        return f64::NEG_INFINITY;
    }
    0.5 * (lambda / (2.0 * PI * x * x * x)).ln() - lambda * (x - mu).powi(2) / (2.0 * mu * mu * x)
}

impl Proposal for InvGaussIid {
    fn sample_into(&self, rng: &mut RngState, out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = self.sampler.draw(rng));
    }

    fn log_density(&self, u: &[f64]) -> f64 {
        u.iter().map(|&x| self.log_density_1(x)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixture_with_zero_weight_is_standard_normal() {
        let u = [0.3, -1.2, 2.0];
        let std = NormalMixture::standard().log_density(&u);
        let expected: f64 = u.iter().map(|v| -LN_SQRT_2PI - 0.5 * v * v).sum();
        assert!((std - expected).abs() < 1e-14);
        assert!(NormalMixture::new(1.0, 0.1).is_err());
    }

    #[test]
    fn invgauss_density_at_mode_region() {
        // density of IG(1,1) at x = 1 is 1/sqrt(2 pi)
        let d = invgauss_log_density(1.0, 1.0, 1.0).exp();
        assert!((d - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn gamma_density_exponential_case() {
        let g = GammaIid::new(1.0, 2.0).unwrap();
        assert!((g.log_density_1(3.0) - (-(2f64.ln()) - 1.5)).abs() < 1e-14);
    }
}
