//! Generic conditional-sampling machinery.
//!
//! A [`ConditionalModel`] supplies the pivot `chi(u, theta)`, the root
//! `theta_hat(u, t)` of `tau(u, theta) = t`, and `log h(u, t)`. The samplers
//! here draw `u` approximately or exactly from `h(. | t)` and emit
//! `x_hat = chi(u, theta_hat(u, t))`, which satisfies `T(x_hat) = t` by
//! construction.

mod batch;
mod importance;
mod mh;
mod model;
mod naive;
mod rejection;

pub use batch::{Diagnostics, SampleBatch};
pub use importance::{estimate_conditional_expectation, IsEstimate};
pub use mh::{mh_sample, mh_sample_chains, MhConfig};
pub use model::{ConditionalModel, Projection, Proposal};
pub use naive::{naive_sample, NaiveConfig};
pub use rejection::{rejection_sample, RejectionConfig};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for `T(x_hat) = t`, scaled by `1 + |t_j|` per component.
pub const CONSERVATION_TOL: f64 = 1e-8;

/// Parameter of the artificial model. Scalar models use `alpha` only and
/// keep `beta` at 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaPair {
    alpha: f64,
    beta: f64,
    dimension: u8,
}

impl ThetaPair {
    pub fn pair(alpha: f64, beta: f64) -> Result<Self> {
        check_param("alpha", alpha)?;
        check_param("beta", beta)?;
        Ok(ThetaPair {
            alpha,
            beta,
            dimension: 2,
        })
    }

    pub fn scalar(theta: f64) -> Result<Self> {
        check_param("theta", theta)?;
        Ok(ThetaPair {
            alpha: theta,
            beta: 1.0,
            dimension: 1,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn dimension(&self) -> usize {
        self.dimension as usize
    }
}

fn check_param(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

/// The statistic `T` being conditioned on, identified by its defining
/// functions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum StatFamily {
    /// `sum x_i`
    Sum,
    /// `sum x_i^r`
    PowerSum { r: f64 },
    /// `max x_i - min x_i`
    Range,
    /// `(sum x_i, sum ln x_i)`
    Gamma,
    /// `(sum x_i, sum 1/x_i)`
    InvGauss,
}

impl StatFamily {
    pub fn dimension(&self) -> usize {
        match self {
            StatFamily::Sum | StatFamily::PowerSum { .. } | StatFamily::Range => 1,
            StatFamily::Gamma | StatFamily::InvGauss => 2,
        }
    }

    /// `T(x)`. Values outside the family's support give non-finite
    /// components; callers that need validation use [`crate::gof::suff_stats`].
    pub fn evaluate(&self, x: &[f64]) -> SuffStat {
        let (t1, t2) = match *self {
            StatFamily::Sum => (x.iter().sum(), 0.0),
            StatFamily::PowerSum { r } => (x.iter().map(|v| v.powf(r)).sum(), 0.0),
            StatFamily::Range => {
                let (lo, hi) = x
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                        (lo.min(v), hi.max(v))
                    });
                (hi - lo, 0.0)
            }
            StatFamily::Gamma => x
                .iter()
                .fold((0.0, 0.0), |(a, b), &v| (a + v, b + v.ln())),
            StatFamily::InvGauss => x
                .iter()
                .fold((0.0, 0.0), |(a, b), &v| (a + v, b + 1.0 / v)),
        };
        SuffStat {
            family: *self,
            t1,
            t2,
        }
    }
}

/// An observed value `t` of a statistic.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuffStat {
    pub family: StatFamily,
    pub t1: f64,
    /// Unused (zero) for one-dimensional statistics.
    pub t2: f64,
}

impl SuffStat {
    pub fn scalar(family: StatFamily, t: f64) -> Self {
        debug_assert_eq!(family.dimension(), 1);
        SuffStat {
            family,
            t1: t,
            t2: 0.0,
        }
    }

    pub fn pair(family: StatFamily, t1: f64, t2: f64) -> Self {
        debug_assert_eq!(family.dimension(), 2);
        SuffStat { family, t1, t2 }
    }

    pub fn dimension(&self) -> usize {
        self.family.dimension()
    }

    /// Components `t_1, .., t_dim`.
    pub fn values(&self) -> Vec<f64> {
        match self.dimension() {
            1 => vec![self.t1],
            _ => vec![self.t1, self.t2],
        }
    }

    /// Componentwise `|self_j - other_j| <= tol * (1 + |other_j|)`.
    pub fn matches(&self, other: &SuffStat, tol: f64) -> bool {
        self.values()
            .iter()
            .zip(other.values())
            .all(|(a, b)| (a - b).abs() <= tol * (1.0 + b.abs()))
    }
}

/// Uniform prior on a box; a proper (integrable) distribution for `Theta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PriorBox {
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
}

impl PriorBox {
    pub fn new(a1: f64, a2: f64, b1: f64, b2: f64) -> Result<Self> {
        let ok = |lo: f64, hi: f64| lo > 0.0 && lo < hi && hi.is_finite();
        if !ok(a1, a2) || !ok(b1, b2) {
            return Err(Error::InvalidParameter(format!(
                "prior box needs 0 < a1 < a2 and 0 < b1 < b2 with finite bounds, got \
                 [{a1}, {a2}] x [{b1}, {b2}]"
            )));
        }
        Ok(PriorBox { a1, a2, b1, b2 })
    }

    /// Box for a scalar parameter; the beta range is a fixed dummy.
    pub fn scalar(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, 0.5, 1.5)
    }

    pub fn contains(&self, theta: ThetaPair) -> bool {
        let a_in = theta.alpha >= self.a1 && theta.alpha <= self.a2;
        if theta.dimension() == 1 {
            a_in
        } else {
            a_in && theta.beta >= self.b1 && theta.beta <= self.b2
        }
    }

    pub fn center(&self) -> (f64, f64) {
        (0.5 * (self.a1 + self.a2), 0.5 * (self.b1 + self.b2))
    }
}

impl Default for PriorBox {
    /// `[0.5, 1.5]^2`.
    fn default() -> Self {
        PriorBox {
            a1: 0.5,
            a2: 1.5,
            b1: 0.5,
            b2: 1.5,
        }
    }
}
