use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::random::RngState;

use super::model::{evaluate, Evaluated};
use super::{ConditionalModel, Projection, SampleBatch};

#[derive(Clone, Debug)]
pub struct MhConfig {
    /// Number of kept states.
    pub num_samples: usize,
    /// Keep every `thin`-th state.
    pub thin: usize,
    /// Iterations discarded before the first kept state. Zero is correct
    /// when the chain starts at observed data.
    pub burn_in: usize,
    pub record_diagnostics: bool,
    /// Starting `u`; when absent, proposals are drawn until `h > 0`.
    pub initial_state: Option<Vec<f64>>,
    pub max_init_attempts: u64,
}

impl MhConfig {
    pub fn new(num_samples: usize) -> Self {
        MhConfig {
            num_samples,
            thin: 1,
            burn_in: 0,
            record_diagnostics: false,
            initial_state: None,
            max_init_attempts: 1_000_000,
        }
    }

    pub fn with_thin(mut self, thin: usize) -> Self {
        self.thin = thin;
        self
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }

    pub fn with_initial_state(mut self, u: Vec<f64>) -> Self {
        self.initial_state = Some(u);
        self
    }

    pub fn with_diagnostics(mut self) -> Self {
        self.record_diagnostics = true;
        self
    }
}

struct State {
    proj: Projection,
    log_g: f64,
}

fn initial_state<M: ConditionalModel + ?Sized>(
    model: &M,
    cfg: &MhConfig,
    rng: &mut RngState,
) -> Result<State> {
    let g = model.proposal();
    if let Some(u0) = &cfg.initial_state {
        if u0.len() != model.len() {
            return Err(Error::InvalidParameter(format!(
                "initial state has length {}, model expects {}",
                u0.len(),
                model.len()
            )));
        }
        let proj = model.project(u0)?;
        if proj.log_h == f64::NEG_INFINITY {
            return Err(Error::InvalidParameter(
                "initial state has zero density h(u, t)".into(),
            ));
        }
        return Ok(State {
            log_g: g.log_density(u0),
            proj,
        });
    }
    let mut u = vec![0.0; model.len()];
    for _ in 0..cfg.max_init_attempts {
        g.sample_into(rng, &mut u);
        if let Evaluated::Ok(proj) = evaluate(model, &u) {
            if proj.log_h > f64::NEG_INFINITY {
                return Ok(State {
                    log_g: g.log_density(&u),
                    proj,
                });
            }
        }
    }
    Err(Error::Initialization {
        attempts: cfg.max_init_attempts,
    })
}

/// Independence Metropolis–Hastings on `h(u | t)` with the model's proposal.
///
/// A proposal `u'` replaces the current `u` when
/// `z <= [h(u') / h(u)] * [g(u) / g(u')]`, evaluated in log space. Proposals
/// whose root solve fails count as `h = 0`.
pub fn mh_sample<M: ConditionalModel + ?Sized>(
    model: &M,
    cfg: &MhConfig,
    rng: &mut RngState,
) -> Result<SampleBatch> {
    if cfg.num_samples == 0 {
        return Err(Error::InvalidParameter("num_samples must be >= 1".into()));
    }
    if cfg.thin == 0 {
        return Err(Error::InvalidParameter("thin must be >= 1".into()));
    }
    let n = model.len();
    let g = model.proposal();
    let mut batch = SampleBatch::new(n, rng.seed(), rng.stream());
    let mut flags = cfg.record_diagnostics.then(Vec::new);

    let mut current = initial_state(model, cfg, rng)?;
    let mut proposal = vec![0.0; n];
    let total = cfg.burn_in + cfg.num_samples * cfg.thin;
    let diag = &mut batch.diagnostics;
    let mut kept: Vec<(Vec<f64>, super::ThetaPair)> = Vec::with_capacity(cfg.num_samples);

    for iter in 1..=total {
        g.sample_into(rng, &mut proposal);
        let z = rng.uniform();
        diag.proposals += 1;
        let mut accepted = false;
        match evaluate(model, &proposal) {
            Evaluated::Ok(proj) if proj.log_h > f64::NEG_INFINITY => {
                let log_g = g.log_density(&proposal);
                let log_ratio = proj.log_h - current.proj.log_h + current.log_g - log_g;
                if z.ln() <= log_ratio {
                    current = State { proj, log_g };
                    accepted = true;
                }
            }
            Evaluated::Ok(_) => {}
            Evaluated::SolverFailure => diag.solver_failures += 1,
            Evaluated::SelfCheckFailure => diag.self_check_failures += 1,
        }
        if accepted {
            diag.accepted += 1;
        }
        if let Some(f) = flags.as_mut() {
            f.push(accepted);
        }
        if iter > cfg.burn_in && (iter - cfg.burn_in).is_multiple_of(cfg.thin) {
            kept.push((current.proj.x_hat.clone(), current.proj.theta));
        }
    }
    diag.accept_flags = flags;
    for (x, theta) in kept {
        batch.push(&x, Some(theta));
    }
    Ok(batch)
}

/// Run `chains` independent chains on forked streams and concatenate their
/// kept states in chain order. `cfg.num_samples` is the total across chains.
pub fn mh_sample_chains<M: ConditionalModel + ?Sized>(
    model: &M,
    cfg: &MhConfig,
    chains: usize,
    exec: Execution,
    rng: &mut RngState,
) -> Result<SampleBatch> {
    let chains = chains.max(1).min(cfg.num_samples.max(1));
    let base = cfg.num_samples / chains;
    let extra = cfg.num_samples % chains;
    let jobs: Vec<(usize, RngState)> = rng
        .fork(chains)
        .into_iter()
        .enumerate()
        .map(|(i, r)| (base + usize::from(i < extra), r))
        .collect();
    let results = exec.map(jobs, |(count, mut r)| {
        let mut c = cfg.clone();
        c.num_samples = count;
        mh_sample(model, &c, &mut r)
    });
    let parts = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SampleBatch::merge(model.len(), rng.seed(), rng.stream(), parts))
}
