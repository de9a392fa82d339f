use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::framework::{
    rejection_sample, ConditionalModel, PriorBox, Proposal, RejectionConfig, SampleBatch,
    StatFamily, SuffStat, ThetaPair,
};
use crate::random::RngState;

use super::proposals::NormalMixture;

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// `X_1, .., X_n` i.i.d. N(0,1) given `max X_i - min X_i = t`, via the
/// scale pivot `x = u / theta` and the prior density `n theta^(n-1)` on
/// `(0, 1)`.
///
/// Then `h(u, t) = (2 pi)^(-n/2) exp(-t^2 sum u_i^2 / (2 r(u)^2))` for
/// `r(u) < t` and zero otherwise, which is dominated by the N(0, I) density.
#[derive(Clone, Debug)]
pub struct NormalRangeModel {
    n: usize,
    t: f64,
    proposal: NormalMixture,
}

impl NormalRangeModel {
    pub fn new(n: usize, t: f64) -> Result<Self> {
        Self::with_proposal(n, t, NormalMixture::standard())
    }

    /// Model whose proposal mixes in `N(0, s^2 I)` with weight `w`.
    pub fn with_mixture(n: usize, t: f64, w: f64, s: f64) -> Result<Self> {
        Self::with_proposal(n, t, NormalMixture::new(w, s)?)
    }

    fn with_proposal(n: usize, t: f64, proposal: NormalMixture) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(
                "the range needs at least 2 observations".into(),
            ));
        }
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Unattainable(format!(
                "the range is positive almost surely, got {t}"
            )));
        }
        Ok(NormalRangeModel { n, t, proposal })
    }

    /// Envelope constant valid for the configured proposal: `1 / (1 - w)`.
    pub fn bound(&self) -> f64 {
        1.0 / (1.0 - self.proposal.weight())
    }
}

fn range(u: &[f64]) -> f64 {
    let (lo, hi) = u
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    hi - lo
}

impl ConditionalModel for NormalRangeModel {
    fn len(&self) -> usize {
        self.n
    }

    fn family(&self) -> StatFamily {
        StatFamily::Range
    }

    fn target(&self) -> SuffStat {
        SuffStat::scalar(StatFamily::Range, self.t)
    }

    /// Support of the prior on theta.
    fn prior(&self) -> PriorBox {
        PriorBox::scalar(f64::MIN_POSITIVE, 1.0).expect("valid constant box")
    }

    fn proposal(&self) -> &dyn Proposal {
        &self.proposal
    }

    fn chi(&self, u: &[f64], theta: ThetaPair) -> Vec<f64> {
        u.iter().map(|v| v / theta.alpha()).collect()
    }

    fn log_pivot_density(&self, u: &[f64], theta: ThetaPair) -> f64 {
        let th = theta.alpha();
        let ss: f64 = u.iter().map(|v| (v / th).powi(2)).sum();
        -0.5 * self.n as f64 * LN_2PI - 0.5 * ss - self.n as f64 * th.ln()
    }

    fn solve_theta_hat(&self, u: &[f64]) -> Result<ThetaPair> {
        if u.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("u must be finite".into()));
        }
        let r = range(u);
        if r <= 0.0 {
            return Err(Error::NoSolution("u has zero range".into()));
        }
        ThetaPair::scalar(r / self.t)
    }

    fn log_h_given(&self, u: &[f64], _theta: ThetaPair, _x_hat: &[f64]) -> f64 {
        let r = range(u);
        if r >= self.t {
            return f64::NEG_INFINITY;
        }
        let ss: f64 = u.iter().map(|v| v * v).sum();
        -0.5 * self.n as f64 * LN_2PI - self.t * self.t * ss / (2.0 * r * r)
    }
}

/// Exact draws from the conditional law of an N(0,1) sample given its
/// range, by rejection with `M = 1 / (1 - w)`.
pub fn normal_range_sample(
    model: &NormalRangeModel,
    m: usize,
    max_draws: u64,
    exec: Execution,
    rng: &mut RngState,
) -> Result<SampleBatch> {
    let cfg = RejectionConfig {
        bound: model.bound(),
        num_samples: m,
        max_draws,
        exec,
    };
    rejection_sample(model, &cfg, rng).map_err(|e| match e {
        Error::BudgetExhausted {
            draws,
            accepted,
            partial,
            ..
        } => Error::BudgetExhausted {
            draws,
            accepted,
            advice: format!(
                "acceptance is low when t = {} is far from the typical range; \
                 use mh_sample with a mixture proposal (small-variance component) \
                 or raise the draw budget",
                model.t
            ),
            partial,
        },
        other => other,
    })
}
