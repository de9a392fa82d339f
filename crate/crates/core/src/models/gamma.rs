use crate::error::{Error, Result};
use crate::framework::{
    ConditionalModel, PriorBox, Proposal, StatFamily, SuffStat, ThetaPair,
};
use crate::gof::gamma_mle;
use crate::roots::MonotoneSolver;

use super::proposals::GammaIid;
use super::{log_sum_exp_scaled, log_values, power_log_jacobian, power_pivot};

/// Gap below which `ln t1 - t2/n - ln n` counts as rounding noise around the
/// boundary value 0 rather than as an impossible `t`.
const BOUNDARY_TOL: f64 = 1e-12;

/// `X_1, .., X_n` i.i.d. gamma given `(sum X_i, sum ln X_i) = (t1, t2)`.
///
/// The conditional law does not depend on the gamma parameters, so `X` is
/// taken as Exp(1) and embedded via `x = (u / beta)^alpha`, under which `U` is
/// Weibull(alpha, beta), with a uniform prior on a box. The proposal is the
/// gamma law at the maximum likelihood estimate for `t`.
#[derive(Clone, Debug)]
pub struct GammaSuffModel {
    n: usize,
    t: SuffStat,
    prior: PriorBox,
    log_prior: f64,
    proposal: GammaIid,
}

impl GammaSuffModel {
    pub fn new(n: usize, t1: f64, t2: f64, prior: PriorBox) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(
                "conditioning on two statistics needs n >= 2".into(),
            ));
        }
        let t = SuffStat::pair(StatFamily::Gamma, t1, t2);
        check_attainable(n, &t)?;
        let (shape, scale) = gamma_mle(n, t1, t2)?;
        Ok(GammaSuffModel {
            n,
            t,
            prior,
            log_prior: -((prior.a2 - prior.a1) * (prior.b2 - prior.b1)).ln(),
            proposal: GammaIid::new(shape, scale)?,
        })
    }

    /// Model conditioned on the statistics of `x`.
    pub fn from_data(x: &[f64], prior: PriorBox) -> Result<Self> {
        log_values(x)?;
        let t = StatFamily::Gamma.evaluate(x);
        Self::new(x.len(), t.t1, t.t2, prior)
    }

    pub fn mle(&self) -> (f64, f64) {
        (self.proposal.shape(), self.proposal.scale())
    }
}

fn check_attainable(n: usize, t: &SuffStat) -> Result<f64> {
    if !(t.t1 > 0.0) || !t.t1.is_finite() || !t.t2.is_finite() {
        return Err(Error::Unattainable(format!(
            "sum of gamma variates must be positive, got {}",
            t.t1
        )));
    }
    // ln of arithmetic mean over geometric mean; nonnegative by AM-GM.
    let c = t.t1.ln() - t.t2 / n as f64 - (n as f64).ln();
    if c < -BOUNDARY_TOL {
        return Err(Error::Unattainable(format!(
            "t1 / exp(t2 / n) must exceed n, got (t1, t2) = ({}, {})",
            t.t1, t.t2
        )));
    }
    if c <= BOUNDARY_TOL {
        return Err(Error::NoSolution(
            "t is only attained by all-equal samples".into(),
        ));
    }
    Ok(c)
}

/// `ln p(alpha)` with `p(alpha) = sum u_i^alpha / (prod u_i)^(alpha / n)`.
///
/// `p` is strictly increasing on `(0, inf)` with `p(0+) = n` unless all
/// `u_i` are equal.
pub fn gamma_monotone_target(u: &[f64], alpha: f64) -> Result<f64> {
    let y = centered_logs(u)?;
    Ok(log_sum_exp_scaled(&y, alpha).0)
}

fn centered_logs(u: &[f64]) -> Result<Vec<f64>> {
    let mut y = log_values(u)?;
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    y.iter_mut().for_each(|v| *v -= mean);
    Ok(y)
}

/// The unique `(alpha, beta)` with `sum (u_i / beta)^alpha = t1` and
/// `alpha sum ln(u_i / beta) = t2`.
pub fn gamma_solve(u: &[f64], t: &SuffStat) -> Result<ThetaPair> {
    let n = u.len();
    if n < 2 {
        return Err(Error::InvalidParameter("need n >= 2".into()));
    }
    let c = check_attainable(n, t)?;
    let log_u = log_values(u)?;
    let mean = log_u.iter().sum::<f64>() / n as f64;
    let y: Vec<f64> = log_u.iter().map(|v| v - mean).collect();
    if y.iter().all(|&v| v == 0.0) {
        return Err(Error::NoSolution("all u_i are equal".into()));
    }
    let ln_n = (n as f64).ln();
    let alpha = MonotoneSolver::default().solve(
        |a| {
            let (f, d) = log_sum_exp_scaled(&y, a);
            (f - ln_n, d)
        },
        c,
    )?;
    let ln_beta = (log_sum_exp_scaled(&log_u, alpha).0 - t.t1.ln()) / alpha;
    ThetaPair::pair(alpha, ln_beta.exp())
}

fn log_h_at(t: &SuffStat, theta: ThetaPair, x_hat: &[f64], prior: &PriorBox, log_prior: f64) -> f64 {
    if !prior.contains(theta) {
        return f64::NEG_INFINITY;
    }
    let (a, b) = (theta.alpha(), theta.beta());
    let n = x_hat.len() as f64;
    let sxlx: f64 = x_hat.iter().map(|x| x * x.ln()).sum();
    let det = (t.t1 * t.t2 - n * sxlx).abs() / b;
    n * (a / b).ln() + (1.0 - 1.0 / a) * t.t2 - t.t1 + log_prior - det.ln()
}

/// `ln h(u, t)` for the gamma model with a uniform prior on `prior`;
/// `-inf` when no root exists or it falls outside the box.
pub fn gamma_log_h(u: &[f64], t: &SuffStat, prior: &PriorBox) -> f64 {
    let Ok(theta) = gamma_solve(u, t) else {
        return f64::NEG_INFINITY;
    };
    let Ok(log_u) = log_values(u) else {
        return f64::NEG_INFINITY;
    };
    let x_hat = power_pivot(&log_u, theta);
    let log_prior = -((prior.a2 - prior.a1) * (prior.b2 - prior.b1)).ln();
    log_h_at(t, theta, &x_hat, prior, log_prior)
}

impl ConditionalModel for GammaSuffModel {
    fn len(&self) -> usize {
        self.n
    }

    fn family(&self) -> StatFamily {
        StatFamily::Gamma
    }

    fn target(&self) -> SuffStat {
        self.t
    }

    fn prior(&self) -> PriorBox {
        self.prior
    }

    fn proposal(&self) -> &dyn Proposal {
        &self.proposal
    }

    fn chi(&self, u: &[f64], theta: ThetaPair) -> Vec<f64> {
        let log_u: Vec<f64> = u.iter().map(|v| v.ln()).collect();
        power_pivot(&log_u, theta)
    }

    /// Weibull(alpha, beta) log density.
    fn log_pivot_density(&self, u: &[f64], theta: ThetaPair) -> f64 {
        if u.iter().any(|&v| !(v > 0.0)) {
            return f64::NEG_INFINITY;
        }
        let (a, b) = (theta.alpha(), theta.beta());
        power_log_jacobian(u, theta) - u.iter().map(|v| (v / b).powf(a)).sum::<f64>()
    }

    fn solve_theta_hat(&self, u: &[f64]) -> Result<ThetaPair> {
        gamma_solve(u, &self.t)
    }

    fn log_h_given(&self, _u: &[f64], theta: ThetaPair, x_hat: &[f64]) -> f64 {
        log_h_at(&self.t, theta, x_hat, &self.prior, self.log_prior)
    }
}
