use crate::error::{Error, Result};
use crate::exec::{shard_sizes, Execution};
use crate::random::RngState;

use super::model::{evaluate, Evaluated};
use super::{ConditionalModel, SampleBatch};

/// Samples per independent shard; fixed so results do not depend on the
/// number of worker threads.
pub(crate) const SHARD_SIZE: usize = 2048;

#[derive(Clone, Debug)]
pub struct RejectionConfig {
    /// Envelope constant `M` with `h(u, t) / g(u) <= M` for all `u`.
    pub bound: f64,
    pub num_samples: usize,
    /// Total proposal budget across shards.
    pub max_draws: u64,
    pub exec: Execution,
}

impl RejectionConfig {
    pub fn new(bound: f64, num_samples: usize) -> Self {
        RejectionConfig {
            bound,
            num_samples,
            max_draws: 1_000_000_000,
            exec: Execution::default(),
        }
    }
}

enum ShardOutcome {
    Done(SampleBatch),
    Violation { ratio: f64 },
    Exhausted(SampleBatch),
}

fn run_shard<M: ConditionalModel + ?Sized>(
    model: &M,
    bound: f64,
    quota: usize,
    budget: u64,
    rng: &mut RngState,
) -> ShardOutcome {
    let g = model.proposal();
    let mut batch = SampleBatch::new(model.len(), rng.seed(), rng.stream());
    let mut u = vec![0.0; model.len()];
    let log_bound = bound.ln();
    // Tolerate rounding when the envelope is tight.
    let slack = 1e-9;
    let mut accepted = 0;
    while accepted < quota {
        if batch.diagnostics.proposals >= budget {
            return ShardOutcome::Exhausted(batch);
        }
        g.sample_into(rng, &mut u);
        let z = rng.uniform();
        batch.diagnostics.proposals += 1;
        let proj = match evaluate(model, &u) {
            Evaluated::Ok(p) => p,
            Evaluated::SolverFailure => {
                batch.diagnostics.solver_failures += 1;
                continue;
            }
            Evaluated::SelfCheckFailure => {
                batch.diagnostics.self_check_failures += 1;
                continue;
            }
        };
        if proj.log_h == f64::NEG_INFINITY {
            continue;
        }
        let log_ratio = proj.log_h - g.log_density(&u);
        if log_ratio > log_bound + slack {
            return ShardOutcome::Violation {
                ratio: log_ratio.exp(),
            };
        }
        if z.ln() + log_bound <= log_ratio {
            batch.push(&proj.x_hat, Some(proj.theta));
            batch.diagnostics.accepted += 1;
            accepted += 1;
        }
    }
    ShardOutcome::Done(batch)
}

/// Exact i.i.d. draws from `h(u | t)` by rejection from the model's
/// proposal with envelope constant `cfg.bound`: accept `u` when
/// `M z <= h(u, t) / g(u)`.
///
/// An observed ratio above `M` aborts with [`Error::BoundViolation`], since
/// the output would no longer be exact.
pub fn rejection_sample<M: ConditionalModel + ?Sized>(
    model: &M,
    cfg: &RejectionConfig,
    rng: &mut RngState,
) -> Result<SampleBatch> {
    if !(cfg.bound > 0.0) || !cfg.bound.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "rejection bound must be positive and finite, got {}",
            cfg.bound
        )));
    }
    let quotas = shard_sizes(cfg.num_samples, SHARD_SIZE);
    let total = cfg.num_samples.max(1) as f64;
    let jobs: Vec<(usize, u64, RngState)> = quotas
        .iter()
        .zip(rng.fork(quotas.len()))
        .map(|(&q, r)| {
            let budget = ((cfg.max_draws as f64) * q as f64 / total).ceil() as u64;
            (q, budget, r)
        })
        .collect();
    let outcomes = cfg.exec.map(jobs, |(q, budget, mut r)| {
        run_shard(model, cfg.bound, q, budget, &mut r)
    });

    let mut parts = Vec::with_capacity(outcomes.len());
    let mut exhausted = false;
    for o in outcomes {
        match o {
            ShardOutcome::Done(b) => parts.push(b),
            ShardOutcome::Exhausted(b) => {
                exhausted = true;
                parts.push(b);
            }
            ShardOutcome::Violation { ratio } => {
                return Err(Error::BoundViolation {
                    ratio,
                    bound: cfg.bound,
                })
            }
        }
    }
    let batch = SampleBatch::merge(model.len(), rng.seed(), rng.stream(), parts);
    if exhausted {
        return Err(Error::BudgetExhausted {
            draws: batch.diagnostics.proposals,
            accepted: batch.len(),
            advice: "the acceptance region is small for this t; raise the draw budget".into(),
            partial: Box::new(batch),
        });
    }
    Ok(batch)
}
