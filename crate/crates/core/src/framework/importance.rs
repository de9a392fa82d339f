use crate::error::{Error, Result};
use crate::exec::{shard_sizes, Execution};
use crate::random::RngState;

use super::model::{evaluate, Evaluated};
use super::rejection::SHARD_SIZE;
use super::ConditionalModel;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsEstimate {
    pub estimate: f64,
    /// Delta-method standard error of the self-normalized ratio.
    pub std_error: f64,
    /// Kish effective sample size `(sum w)^2 / sum w^2`.
    pub effective_sample_size: f64,
}

/// Self-normalized importance-sampling estimate of `E[phi(X) | T = t]`:
/// `sum phi(x_hat_i) w_i / sum w_i` with `w_i = h(u_i, t) / g(u_i)` and
/// `u_i` drawn from the model's proposal.
pub fn estimate_conditional_expectation<M, F>(
    model: &M,
    phi: F,
    m: usize,
    exec: Execution,
    rng: &mut RngState,
) -> Result<IsEstimate>
where
    M: ConditionalModel + ?Sized,
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    if m < 2 {
        return Err(Error::InvalidParameter(
            "importance sampling needs at least 2 draws".into(),
        ));
    }
    let sizes = shard_sizes(m, SHARD_SIZE);
    let jobs: Vec<(usize, RngState)> = sizes.iter().copied().zip(rng.fork(sizes.len())).collect();
    let shards = exec.map(jobs, |(count, mut r)| {
        let g = model.proposal();
        let mut u = vec![0.0; model.len()];
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            g.sample_into(&mut r, &mut u);
            if let Evaluated::Ok(p) = evaluate(model, &u) {
                if p.log_h > f64::NEG_INFINITY {
                    out.push((p.log_h - g.log_density(&u), phi(&p.x_hat)));
                }
            }
        }
        out
    });
    let draws: Vec<(f64, f64)> = shards.into_iter().flatten().collect();
    let max_lw = draws
        .iter()
        .map(|d| d.0)
        .fold(f64::NEG_INFINITY, f64::max);
    if draws.is_empty() || !max_lw.is_finite() {
        return Err(Error::DegenerateWeights);
    }
    let weights: Vec<f64> = draws.iter().map(|d| (d.0 - max_lw).exp()).collect();
    let sum_w: f64 = weights.iter().sum();
    let sum_wphi: f64 = weights.iter().zip(&draws).map(|(w, d)| w * d.1).sum();
    let estimate = sum_wphi / sum_w;
    let var_num: f64 = weights
        .iter()
        .zip(&draws)
        .map(|(w, d)| (w * (d.1 - estimate)).powi(2))
        .sum();
    let sum_w2: f64 = weights.iter().map(|w| w * w).sum();
    Ok(IsEstimate {
        estimate,
        std_error: var_num.sqrt() / sum_w,
        effective_sample_size: sum_w * sum_w / sum_w2,
    })
}
