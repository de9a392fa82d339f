//! Concrete conditional models.
//!
//! * [`UniformSumModel`]: i.i.d. U[0,1] given `sum x_i^r`.
//! * [`NormalRangeModel`]: i.i.d. N(0,1) given the range.
//! * [`GammaSuffModel`]: i.i.d. gamma given `(sum x_i, sum ln x_i)`.
//! * [`InvGaussSuffModel`]: i.i.d. inverse Gaussian given `(sum x_i, sum 1/x_i)`.
//!
//! The two exponential-family models share the pivot `x_i = (u_i / beta)^alpha`
//! and are sampled by Metropolis–Hastings with the family itself, at the
//! maximum likelihood estimate, as proposal.

mod gamma;
mod invgauss;
mod normal_range;
pub mod proposals;
mod uniform_sum;
mod weibull;

pub use gamma::{gamma_log_h, gamma_monotone_target, gamma_solve, GammaSuffModel};
pub use invgauss::{invgauss_log_h, invgauss_monotone_target, invgauss_solve, InvGaussSuffModel};
pub use normal_range::{normal_range_sample, NormalRangeModel};
pub use uniform_sum::{uniform_sum_sample, UniformSumModel};
pub use weibull::{weibull_confidence_sample, WeibullConfidence};

use crate::error::{Error, Result};
use crate::framework::ThetaPair;

/// `(y_i)` with `y_i = ln u_i`; errors on nonpositive or non-finite entries.
pub(crate) fn log_values(u: &[f64]) -> Result<Vec<f64>> {
    if u.is_empty() {
        return Err(Error::Domain("empty vector".into()));
    }
    u.iter()
        .map(|&v| {
            if v > 0.0 && v.is_finite() {
                Ok(v.ln())
            } else {
                Err(Error::Domain(format!("values must be positive, got {v}")))
            }
        })
        .collect()
}

/// `ln sum exp(a * y_i)` and its derivative in `a`.
pub(crate) fn log_sum_exp_scaled(y: &[f64], a: f64) -> (f64, f64) {
    let m = y.iter().map(|v| a * v).fold(f64::NEG_INFINITY, f64::max);
    let mut s = 0.0;
    let mut sy = 0.0;
    for &v in y {
        let e = (a * v - m).exp();
        s += e;
        sy += e * v;
    }
    (m + s.ln(), sy / s)
}

/// `x_i = (u_i / beta)^alpha` from `ln u_i`.
pub(crate) fn power_pivot(log_u: &[f64], theta: ThetaPair) -> Vec<f64> {
    let lb = theta.beta().ln();
    log_u
        .iter()
        .map(|&y| (theta.alpha() * (y - lb)).exp())
        .collect()
}

/// Sum of Weibull-type log Jacobians: `n ln(alpha / beta) + (alpha - 1) sum ln(u_i / beta)`.
pub(crate) fn power_log_jacobian(u: &[f64], theta: ThetaPair) -> f64 {
    let (a, b) = (theta.alpha(), theta.beta());
    u.len() as f64 * (a / b).ln() + (a - 1.0) * u.iter().map(|v| (v / b).ln()).sum::<f64>()
}
