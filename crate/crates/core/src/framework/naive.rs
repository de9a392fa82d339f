use crate::error::{Error, Result};
use crate::exec::{shard_sizes, Execution};
use crate::random::RngState;

use super::rejection::SHARD_SIZE;
use super::{Proposal, SampleBatch, StatFamily, SuffStat};

#[derive(Clone, Debug)]
pub struct NaiveConfig {
    /// Componentwise tolerances `eps_j > 0`.
    pub eps: Vec<f64>,
    pub num_samples: usize,
    pub max_draws: u64,
    pub exec: Execution,
}

impl NaiveConfig {
    pub fn new(eps: Vec<f64>, num_samples: usize) -> Self {
        NaiveConfig {
            eps,
            num_samples,
            max_draws: 10_000_000_000,
            exec: Execution::default(),
        }
    }
}

/// Approximate conditional draws by filtering: sample `x` from `target`
/// (a sampler for the law of `X`) and keep it when
/// `|T_j(x) - t_j| <= eps_j` for every component `j`.
pub fn naive_sample(
    target: &dyn Proposal,
    n: usize,
    t: SuffStat,
    cfg: &NaiveConfig,
    rng: &mut RngState,
) -> Result<SampleBatch> {
    let family: StatFamily = t.family;
    if cfg.eps.len() != family.dimension() {
        return Err(Error::InvalidParameter(format!(
            "need {} tolerances, got {}",
            family.dimension(),
            cfg.eps.len()
        )));
    }
    if cfg.eps.iter().any(|&e| !(e > 0.0)) {
        return Err(Error::InvalidParameter("tolerances must be positive".into()));
    }
    let two_dim = family.dimension() == 2;
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
    let results = cfg.exec.map(jobs, |(quota, budget, mut r)| {
        let mut batch = SampleBatch::new(n, r.seed(), r.stream());
        let mut x = vec![0.0; n];
        let mut accepted = 0;
        while accepted < quota {
            if batch.diagnostics.proposals >= budget {
                return (batch, true);
            }
            target.sample_into(&mut r, &mut x);
            batch.diagnostics.proposals += 1;
            let tx = family.evaluate(&x);
            let inside = (tx.t1 - t.t1).abs() <= cfg.eps[0]
                && (!two_dim || (tx.t2 - t.t2).abs() <= cfg.eps[1]);
            if inside {
                batch.push(&x, None);
                batch.diagnostics.accepted += 1;
                accepted += 1;
            }
        }
        (batch, false)
    });
    let exhausted = results.iter().any(|(_, e)| *e);
    let parts = results.into_iter().map(|(b, _)| b).collect();
    let batch = SampleBatch::merge(n, rng.seed(), rng.stream(), parts);
    if exhausted {
        return Err(Error::BudgetExhausted {
            draws: batch.diagnostics.proposals,
            accepted: batch.len(),
            advice: "increase the tolerances or the draw budget".into(),
            partial: Box::new(batch),
        });
    }
    Ok(batch)
}
