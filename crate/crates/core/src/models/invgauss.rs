use crate::error::{Error, Result};
use crate::framework::{ConditionalModel, PriorBox, Proposal, StatFamily, SuffStat, ThetaPair};
use crate::gof::invgauss_mle;
use crate::roots::MonotoneSolver;

use super::proposals::{invgauss_log_density, InvGaussIid};
use super::{log_sum_exp_scaled, log_values, power_log_jacobian, power_pivot};

const BOUNDARY_TOL: f64 = 1e-12;
const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// `X_1, .., X_n` i.i.d. inverse Gaussian given
/// `(sum X_i, sum 1 / X_i) = (t1, t2)`.
///
/// `X` is taken as IG(1, 1) and embedded via `x = (u / beta)^alpha` with a
/// uniform prior on a box. The proposal is the inverse Gaussian law at the
/// maximum likelihood estimate for `t`.
#[derive(Clone, Debug)]
pub struct InvGaussSuffModel {
    n: usize,
    t: SuffStat,
    prior: PriorBox,
    log_prior: f64,
    proposal: InvGaussIid,
}

impl InvGaussSuffModel {
    pub fn new(n: usize, t1: f64, t2: f64, prior: PriorBox) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(
                "conditioning on two statistics needs n >= 2".into(),
            ));
        }
        let t = SuffStat::pair(StatFamily::InvGauss, t1, t2);
        check_attainable(n, &t)?;
        let (mu, lambda) = invgauss_mle(n, t1, t2)?;
        Ok(InvGaussSuffModel {
            n,
            t,
            prior,
            log_prior: -((prior.a2 - prior.a1) * (prior.b2 - prior.b1)).ln(),
            proposal: InvGaussIid::new(mu, lambda)?,
        })
    }

    pub fn from_data(x: &[f64], prior: PriorBox) -> Result<Self> {
        log_values(x)?;
        let t = StatFamily::InvGauss.evaluate(x);
        Self::new(x.len(), t.t1, t.t2, prior)
    }

    pub fn mle(&self) -> (f64, f64) {
        (self.proposal.mu(), self.proposal.lambda())
    }
}

fn check_attainable(n: usize, t: &SuffStat) -> Result<f64> {
    if !(t.t1 > 0.0 && t.t2 > 0.0) || !t.t1.is_finite() || !t.t2.is_finite() {
        return Err(Error::Unattainable(format!(
            "both sums must be positive, got ({}, {})",
            t.t1, t.t2
        )));
    }
    // Cauchy-Schwarz: t1 t2 >= n^2.
    let c = (t.t1 * t.t2).ln() - 2.0 * (n as f64).ln();
    if c < -BOUNDARY_TOL {
        return Err(Error::Unattainable(format!(
            "t1 t2 must exceed n^2 = {}, got {}",
            n * n,
            t.t1 * t.t2
        )));
    }
    if c <= BOUNDARY_TOL {
        return Err(Error::NoSolution(
            "t is only attained by all-equal samples".into(),
        ));
    }
    Ok(c)
}

/// `ln p(alpha)` with `p(alpha) = sum u_i^alpha * sum u_i^(-alpha)`;
/// strictly increasing with `p(0+) = n^2` unless all `u_i` are equal.
pub fn invgauss_monotone_target(u: &[f64], alpha: f64) -> Result<f64> {
    let y = log_values(u)?;
    Ok(log_sum_exp_scaled(&y, alpha).0 + log_sum_exp_scaled(&y, -alpha).0)
}

/// The unique `(alpha, beta)` with `sum (u_i / beta)^alpha = t1` and
/// `sum (u_i / beta)^(-alpha) = t2`.
pub fn invgauss_solve(u: &[f64], t: &SuffStat) -> Result<ThetaPair> {
    let n = u.len();
    if n < 2 {
        return Err(Error::InvalidParameter("need n >= 2".into()));
    }
    let c = check_attainable(n, t)?;
    let y = log_values(u)?;
    if y.iter().all(|&v| v == y[0]) {
        return Err(Error::NoSolution("all u_i are equal".into()));
    }
    let two_ln_n = 2.0 * (n as f64).ln();
    let alpha = MonotoneSolver::default().solve(
        |a| {
            let (fp, dp) = log_sum_exp_scaled(&y, a);
            let (fm, dm) = log_sum_exp_scaled(&y, -a);
            (fp + fm - two_ln_n, dp - dm)
        },
        c,
    )?;
    let ln_beta = (t.t2.ln() - log_sum_exp_scaled(&y, -alpha).0) / alpha;
    ThetaPair::pair(alpha, ln_beta.exp())
}

fn log_h_at(t: &SuffStat, theta: ThetaPair, x_hat: &[f64], prior: &PriorBox, log_prior: f64) -> f64 {
    if !prior.contains(theta) {
        return f64::NEG_INFINITY;
    }
    let (a, b) = (theta.alpha(), theta.beta());
    let n = x_hat.len() as f64;
    let (mut slx, mut sxlx, mut slx_x) = (0.0, 0.0, 0.0);
    for &x in x_hat {
        let lx = x.ln();
        slx += lx;
        sxlx += x * lx;
        slx_x += lx / x;
    }
    let det = (t.t2 * sxlx - t.t1 * slx_x).abs() / b;
    n * (a / b).ln() + (-0.5 - 1.0 / a) * slx - 0.5 * (t.t1 + t.t2) + n - 0.5 * n * LN_2PI
        + log_prior
        - det.ln()
}

/// `ln h(u, t)` for the inverse Gaussian model with a uniform prior on
/// `prior`; `-inf` when no root exists or it falls outside the box.
pub fn invgauss_log_h(u: &[f64], t: &SuffStat, prior: &PriorBox) -> f64 {
    let Ok(theta) = invgauss_solve(u, t) else {
        return f64::NEG_INFINITY;
    };
    let Ok(log_u) = log_values(u) else {
        return f64::NEG_INFINITY;
    };
    let x_hat = power_pivot(&log_u, theta);
    let log_prior = -((prior.a2 - prior.a1) * (prior.b2 - prior.b1)).ln();
    log_h_at(t, theta, &x_hat, prior, log_prior)
}

impl ConditionalModel for InvGaussSuffModel {
    fn len(&self) -> usize {
        self.n
    }

    fn family(&self) -> StatFamily {
        StatFamily::InvGauss
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

    fn log_pivot_density(&self, u: &[f64], theta: ThetaPair) -> f64 {
        if u.iter().any(|&v| !(v > 0.0)) {
            return f64::NEG_INFINITY;
        }
        let x = self.chi(u, theta);
        power_log_jacobian(u, theta)
            + x.iter().map(|&v| invgauss_log_density(v, 1.0, 1.0)).sum::<f64>()
    }

    fn solve_theta_hat(&self, u: &[f64]) -> Result<ThetaPair> {
        invgauss_solve(u, &self.t)
    }

    fn log_h_given(&self, _u: &[f64], theta: ThetaPair, x_hat: &[f64]) -> f64 {
        log_h_at(&self.t, theta, x_hat, &self.prior, self.log_prior)
    }
}
