use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::framework::{
    rejection_sample, ConditionalModel, PriorBox, Proposal, RejectionConfig, SampleBatch,
    StatFamily, SuffStat, ThetaPair,
};
use crate::random::RngState;

use super::proposals::UnitUniform;

/// `X_1, .., X_n` i.i.d. U[0,1] given `sum X_i^r = t`, via the scale pivot
/// `x = u / theta` and the prior density `n theta^(n-1)` on `(0, 1]`.
///
/// With that prior `h(u, t)` is constant on
/// `{u in [0,1]^n : t max u_i^r <= sum u_i^r <= t}`, so rejection from
/// U[0,1]^n with `M = 1` is exact.
#[derive(Clone, Debug)]
pub struct UniformSumModel {
    n: usize,
    r: f64,
    t: f64,
    proposal: UnitUniform,
}

impl UniformSumModel {
    pub fn new(n: usize, r: f64, t: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidParameter(format!("r must be positive, got {r}")));
        }
        if !(t > 0.0 && t < n as f64) {
            return Err(Error::Unattainable(format!(
                "a sum of {n} powers of U[0,1] variates lies in (0, {n}), got {t}"
            )));
        }
        Ok(UniformSumModel {
            n,
            r,
            t,
            proposal: UnitUniform,
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    fn power_sum(&self, u: &[f64]) -> f64 {
        if self.r == 1.0 {
            u.iter().sum()
        } else {
            u.iter().map(|v| v.powf(self.r)).sum()
        }
    }
}

impl ConditionalModel for UniformSumModel {
    fn len(&self) -> usize {
        self.n
    }

    fn family(&self) -> StatFamily {
        if self.r == 1.0 {
            StatFamily::Sum
        } else {
            StatFamily::PowerSum { r: self.r }
        }
    }

    fn target(&self) -> SuffStat {
        SuffStat::scalar(self.family(), self.t)
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
        if u.iter().all(|&v| v >= 0.0 && v <= th) {
            -(self.n as f64) * th.ln()
        } else {
            f64::NEG_INFINITY
        }
    }

    fn solve_theta_hat(&self, u: &[f64]) -> Result<ThetaPair> {
        if u.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
            return Err(Error::Domain("u must be nonnegative".into()));
        }
        let s = self.power_sum(u);
        if s <= 0.0 {
            return Err(Error::NoSolution("all of u is zero".into()));
        }
        ThetaPair::scalar((s / self.t).powf(1.0 / self.r))
    }

    fn log_h_given(&self, u: &[f64], _theta: ThetaPair, _x_hat: &[f64]) -> f64 {
        let s = self.power_sum(u);
        let max = u.iter().fold(0.0_f64, |m, &v| m.max(v));
        let max_r = if self.r == 1.0 { max } else { max.powf(self.r) };
        if self.t * max_r <= s && s <= self.t {
            0.0
        } else {
            f64::NEG_INFINITY
        }
    }
}

/// Exact draws from the conditional law of a U[0,1] sample given its power
/// sum, by rejection with `M = 1`.
pub fn uniform_sum_sample(
    model: &UniformSumModel,
    m: usize,
    max_draws: u64,
    exec: Execution,
    rng: &mut RngState,
) -> Result<SampleBatch> {
    let cfg = RejectionConfig {
        bound: 1.0,
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
                "the acceptance region shrinks as t approaches 0 or n = {}; \
                 raise the draw budget or use mh_sample with this model",
                model.n
            ),
            partial,
        },
        other => other,
    })
}
