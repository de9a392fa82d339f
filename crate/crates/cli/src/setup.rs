//! Model and sampler selection shared by `sample` and `compare`.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use condmc::framework::{mh_sample_chains, naive_sample, NaiveConfig};
use condmc::gof::{suff_stats, Family};
use condmc::models::proposals::{GammaIid, InvGaussIid, NormalMixture, UnitUniform};
use condmc::models::{
    normal_range_sample, uniform_sum_sample, GammaSuffModel, InvGaussSuffModel, NormalRangeModel,
    UniformSumModel,
};
use condmc::{ConditionalModel, Execution, MhConfig, PriorBox, RngState, SampleBatch, SuffStat};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::io::read_data;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    UniformSum,
    UniformPowerSum,
    NormalRange,
    Gamma,
    Invgauss,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Mh,
    Rejection,
    Naive,
}

pub fn parse_box(s: &str) -> std::result::Result<PriorBox, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("not a number: {p:?}")))
        .collect::<std::result::Result<_, _>>()?;
    if v.len() != 4 {
        return Err(format!("expected a1,a2,b1,b2, got {} values", v.len()));
    }
    PriorBox::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    /// Condition on T of this data file instead of an explicit t.
    #[arg(long, conflicts_with_all = ["t1", "t2", "n"])]
    pub data: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub t1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t2: Option<f64>,
    #[arg(short = 'n', long = "n")]
    pub n: Option<usize>,
    /// Power for uniform-power-sum.
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    /// Prior box a1,a2,b1,b2 for gamma and invgauss.
    #[arg(long = "box", value_parser = parse_box)]
    pub prior: Option<PriorBox>,
    /// Weight of the N(0, s^2) component in the normal-range proposal.
    #[arg(long, default_value_t = 0.0)]
    pub mix_weight: f64,
    #[arg(long, default_value_t = 0.1)]
    pub mix_sd: f64,
}

#[derive(Args, Debug, Clone)]
pub struct SamplerArgs {
    #[arg(short = 'm', long = "m")]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub thin: usize,
    /// Defaults to 0 when the chain starts at --data, 1000 otherwise.
    #[arg(long)]
    pub burn_in: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub chains: usize,
    /// Naive-sampler tolerances e1[,e2].
    #[arg(long, value_delimiter = ',')]
    pub eps: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1_000_000_000)]
    pub max_draws: u64,
}

pub enum Built {
    Uniform(UniformSumModel),
    Range(NormalRangeModel),
    Gamma(GammaSuffModel),
    InvGauss(InvGaussSuffModel),
}

pub struct Setup {
    pub kind: ModelKind,
    pub n: usize,
    pub t: SuffStat,
    pub data: Option<Vec<f64>>,
    pub model: Built,
}

impl Setup {
    pub fn new(args: &ModelArgs) -> Result<Self> {
        if args.model == ModelKind::UniformSum && args.r != 1.0 {
            return Err(CliError::Usage("--r needs --model uniform-power-sum".into()));
        }
        let two_dim = matches!(args.model, ModelKind::Gamma | ModelKind::Invgauss);
        let prior = args.prior.unwrap_or_default();
        let (n, t1, t2, data) = match &args.data {
            Some(path) => {
                let d = read_data(path)?;
                let x = d.values().to_vec();
                let (t1, t2) = match args.model {
                    ModelKind::UniformSum => (x.iter().sum(), 0.0),
                    ModelKind::UniformPowerSum => (x.iter().map(|v| v.powf(args.r)).sum(), 0.0),
                    ModelKind::NormalRange => {
                        let hi = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                        let lo = x.iter().cloned().fold(f64::INFINITY, f64::min);
                        (hi - lo, 0.0)
                    }
                    ModelKind::Gamma => {
                        let t = suff_stats(&x, Family::Gamma)?;
                        (t.t1, t.t2)
                    }
                    ModelKind::Invgauss => {
                        let t = suff_stats(&x, Family::InvGauss)?;
                        (t.t1, t.t2)
                    }
                };
                (x.len(), t1, t2, Some(x))
            }
            None => {
                let n = args.n.ok_or_else(|| CliError::Usage("give --data or -n with --t1".into()))?;
                let t1 = args.t1.ok_or_else(|| CliError::Usage("give --data or --t1".into()))?;
                let t2 = match (two_dim, args.t2) {
                    (true, Some(t2)) => t2,
                    (true, None) => return Err(CliError::Usage("this model needs --t2".into())),
                    (false, Some(_)) => {
                        return Err(CliError::Usage("this model conditions on one value; drop --t2".into()))
                    }
                    (false, None) => 0.0,
                };
                (n, t1, t2, None)
            }
        };
        let model = match args.model {
            ModelKind::UniformSum | ModelKind::UniformPowerSum => {
                Built::Uniform(UniformSumModel::new(n, args.r, t1)?)
            }
            ModelKind::NormalRange => {
                Built::Range(NormalRangeModel::with_mixture(n, t1, args.mix_weight, args.mix_sd)?)
            }
            ModelKind::Gamma => Built::Gamma(GammaSuffModel::new(n, t1, t2, prior)?),
            ModelKind::Invgauss => Built::InvGauss(InvGaussSuffModel::new(n, t1, t2, prior)?),
        };
        let t = model.as_dyn().target();
        Ok(Setup {
            kind: args.model,
            n,
            t,
            data,
            model,
        })
    }

    pub fn default_method(&self) -> Method {
        match self.model {
            Built::Uniform(_) | Built::Range(_) => Method::Rejection,
            Built::Gamma(_) | Built::InvGauss(_) => Method::Mh,
        }
    }

    pub fn run(
        &self,
        method: Method,
        args: &SamplerArgs,
        exec: Execution,
        rng: &mut RngState,
    ) -> Result<SampleBatch> {
        let m = args.m;
        match method {
            Method::Mh => {
                let mut cfg = MhConfig::new(m).with_thin(args.thin);
                cfg.burn_in = args.burn_in.unwrap_or(if self.data.is_some() { 0 } else { 1000 });
                if let Some(x) = &self.data {
                    cfg = cfg.with_initial_state(x.clone());
                }
                Ok(mh_sample_chains(self.model.as_dyn(), &cfg, args.chains, exec, rng)?)
            }
            Method::Rejection => match &self.model {
                Built::Uniform(model) => Ok(uniform_sum_sample(model, m, args.max_draws, exec, rng)?),
                Built::Range(model) => Ok(normal_range_sample(model, m, args.max_draws, exec, rng)?),
                _ => Err(CliError::Usage(
                    "rejection needs an envelope bound, which only uniform-sum and normal-range \
                     provide; use --method mh or naive"
                        .into(),
                )),
            },
            Method::Naive => {
                let eps = args
                    .eps
                    .clone()
                    .ok_or_else(|| CliError::Usage("--method naive needs --eps".into()))?;
                let mut cfg = NaiveConfig::new(eps, m);
                cfg.max_draws = args.max_draws;
                cfg.exec = exec;
                let batch = match &self.model {
                    Built::Uniform(_) => naive_sample(&UnitUniform, self.n, self.t, &cfg, rng),
                    Built::Range(_) => {
                        naive_sample(&NormalMixture::standard(), self.n, self.t, &cfg, rng)
                    }
                    Built::Gamma(model) => {
                        let (k, theta) = model.mle();
                        naive_sample(&GammaIid::new(k, theta)?, self.n, self.t, &cfg, rng)
                    }
                    Built::InvGauss(model) => {
                        let (mu, lambda) = model.mle();
                        naive_sample(&InvGaussIid::new(mu, lambda)?, self.n, self.t, &cfg, rng)
                    }
                };
                Ok(batch?)
            }
        }
    }
}

impl Built {
    pub fn as_dyn(&self) -> &dyn ConditionalModel {
        match self {
            Built::Uniform(m) => m,
            Built::Range(m) => m,
            Built::Gamma(m) => m,
            Built::InvGauss(m) => m,
        }
    }
}
