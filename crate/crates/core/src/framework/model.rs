use crate::error::{Error, Result};
use crate::random::RngState;

use super::{PriorBox, StatFamily, SuffStat, ThetaPair, CONSERVATION_TOL};

/// Independent proposal distribution `g(u)` on the `u` space.
pub trait Proposal: Send + Sync {
    fn sample_into(&self, rng: &mut RngState, out: &mut [f64]);

    /// `ln g(u)`, `-inf` outside the support.
    fn log_density(&self, u: &[f64]) -> f64;
}

/// Result of solving `tau(u, theta) = t` for one `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub theta: ThetaPair,
    pub x_hat: Vec<f64>,
    /// `ln h(u, t)`; `-inf` when `h = 0` (e.g. `theta_hat` outside the prior).
    pub log_h: f64,
}

/// An artificial parametric model for conditioning `X` on `T(X) = t`.
///
/// Implementations are immutable after construction; the conditioning
/// value `t` and the proposal are fixed per model instance.
#[allow(clippy::len_without_is_empty)]
pub trait ConditionalModel: Send + Sync {
    /// Length `n` of `X`.
    fn len(&self) -> usize;

    fn family(&self) -> StatFamily;

    /// The conditioning value `t`.
    fn target(&self) -> SuffStat;

    fn prior(&self) -> PriorBox;

    fn proposal(&self) -> &dyn Proposal;

    /// The pivot `chi(u, theta)`.
    fn chi(&self, u: &[f64], theta: ThetaPair) -> Vec<f64>;

    /// `ln f(u | theta)`, the density making `chi(U, theta)` distributed as `X`.
    fn log_pivot_density(&self, u: &[f64], theta: ThetaPair) -> f64;

    /// The unique root `theta_hat(u, t)` of `tau(u, theta) = t`.
    fn solve_theta_hat(&self, u: &[f64]) -> Result<ThetaPair>;

    /// `ln h(u, t)` given an already solved `theta_hat` and `x_hat`.
    fn log_h_given(&self, u: &[f64], theta: ThetaPair, x_hat: &[f64]) -> f64;

    /// `tau(u, theta) = T(chi(u, theta))`.
    fn tau(&self, u: &[f64], theta: ThetaPair) -> SuffStat {
        self.family().evaluate(&self.chi(u, theta))
    }

    /// Solve, map through the pivot and evaluate `h`. Fails when the solve
    /// fails or the solved `x_hat` does not reproduce `t`.
    fn project(&self, u: &[f64]) -> Result<Projection> {
        let theta = self.solve_theta_hat(u)?;
        let x_hat = self.chi(u, theta);
        let t = self.target();
        if !self.family().evaluate(&x_hat).matches(&t, CONSERVATION_TOL) {
            return Err(Error::Contract(format!(
                "solved x_hat misses the conditioning value {:?}",
                t.values()
            )));
        }
        let log_h = self.log_h_given(u, theta, &x_hat);
        Ok(Projection {
            theta,
            x_hat,
            log_h,
        })
    }

    /// `ln h(u, t)`, with every failure mapped to `-inf`.
    fn log_h(&self, u: &[f64]) -> f64 {
        self.project(u).map_or(f64::NEG_INFINITY, |p| p.log_h)
    }
}

/// Outcome of evaluating one proposal, with failures classified for the
/// diagnostics counters.
pub(crate) enum Evaluated {
    Ok(Projection),
    SolverFailure,
    SelfCheckFailure,
}

pub(crate) fn evaluate<M: ConditionalModel + ?Sized>(model: &M, u: &[f64]) -> Evaluated {
    match model.project(u) {
        Ok(p) => Evaluated::Ok(p),
        Err(Error::Contract(_)) => Evaluated::SelfCheckFailure,
        Err(_) => Evaluated::SolverFailure,
    }
}
