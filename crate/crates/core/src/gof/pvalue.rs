use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::framework::{mh_sample_chains, MhConfig, PriorBox, SuffStat};
use crate::models::{GammaSuffModel, InvGaussSuffModel};
use crate::random::RngState;

use super::{mle_from_suffstats, suff_stats, transform_z, Dataset, Family, GofStatistic};

/// Relative slack when comparing a sampled statistic with the observed one.
/// Samples near the initial state reproduce the data up to rounding and
/// must count as ties.
const TIE_TOL: f64 = 1e-10;

/// Batches used for the autocorrelation-adjusted standard error.
const SE_BATCHES: usize = 100;

#[derive(Clone, Debug)]
pub struct GofConfig {
    /// Number of conditional samples `k`.
    pub k: usize,
    pub thin: usize,
    pub burn_in: usize,
    /// Independent chains, each started at the data, sharing `k`.
    pub chains: usize,
    pub prior: PriorBox,
    /// Use `(1 + sum I) / (1 + k)` instead of the plain average.
    pub continuity_correction: bool,
    /// Replace the observed statistic; a testing hook.
    pub observed_override: Option<f64>,
    pub exec: Execution,
}

impl GofConfig {
    pub fn new(k: usize) -> Self {
        GofConfig {
            k,
            thin: 1,
            burn_in: 0,
            chains: 1,
            prior: PriorBox::default(),
            continuity_correction: false,
            observed_override: None,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GofReport {
    pub statistic: GofStatistic,
    /// Observed value `w*`.
    pub observed: f64,
    pub p_value: f64,
    /// Batch-means standard error of `p_value`.
    pub monte_carlo_se: f64,
    pub k: usize,
    pub family: Family,
    /// MLE used for the probability transform.
    pub mle: (f64, f64),
    pub acceptance_rate: f64,
    pub seed: u64,
}

/// Conditional p-value of one statistic; see [`conditional_p_values`].
pub fn conditional_p_value(
    data: &Dataset,
    family: Family,
    stat: GofStatistic,
    cfg: &GofConfig,
    rng: &mut RngState,
) -> Result<GofReport> {
    Ok(conditional_p_values(data, family, &[stat], cfg, rng)?.remove(0))
}

/// Estimate `P(W >= w* | T = t)` for each statistic from one shared set of
/// `k` conditional samples: `(1/k) sum_j I(W(x_j) >= w*)`.
pub fn conditional_p_values(
    data: &Dataset,
    family: Family,
    stats: &[GofStatistic],
    cfg: &GofConfig,
    rng: &mut RngState,
) -> Result<Vec<GofReport>> {
    if cfg.k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    if stats.is_empty() {
        return Err(Error::InvalidParameter("no statistic requested".into()));
    }
    let x = data.values();
    let n = x.len();
    let t = suff_stats(x, family)?;
    let mle = mle_from_suffstats(&t, n)?;
    let z_obs = transform_z(x, family, mle)?;
    let observed = stats
        .iter()
        .map(|s| match cfg.observed_override {
            Some(w) => Ok(w),
            None => s.evaluate(&z_obs),
        })
        .collect::<Result<Vec<f64>>>()?;

    let seed = rng.seed();
    let mh = MhConfig::new(cfg.k)
        .with_thin(cfg.thin)
        .with_burn_in(cfg.burn_in)
        .with_initial_state(x.to_vec());
    let batch = match family {
        Family::Gamma => {
            let model = GammaSuffModel::from_data(x, cfg.prior)?;
            mh_sample_chains(&model, &mh, cfg.chains, cfg.exec, rng)?
        }
        Family::InvGauss => {
            let model = InvGaussSuffModel::from_data(x, cfg.prior)?;
            mh_sample_chains(&model, &mh, cfg.chains, cfg.exec, rng)?
        }
    };
    check_mle_fixed_point(batch.row(0), family, &t, mle)?;

    let rows: Vec<&[f64]> = batch.rows().collect();
    let values = cfg.exec.map_slice(&rows, |row| -> Result<Vec<f64>> {
        let z = transform_z(row, family, mle)?;
        stats.iter().map(|s| s.evaluate(&z)).collect()
    });
    let values = values.into_iter().collect::<Result<Vec<Vec<f64>>>>()?;

    let k = values.len();
    let reports = stats
        .iter()
        .enumerate()
        .map(|(j, &statistic)| {
            let w_star = observed[j];
            let cut = w_star - TIE_TOL * (1.0 + w_star.abs());
            let hits: Vec<f64> = values
                .iter()
                .map(|v| if v[j] >= cut { 1.0 } else { 0.0 })
                .collect();
            let count: f64 = hits.iter().sum();
            let p_value = if cfg.continuity_correction {
                (1.0 + count) / (1.0 + k as f64)
            } else {
                count / k as f64
            };
            GofReport {
                statistic,
                observed: w_star,
                p_value,
                monte_carlo_se: batch_means_se(&hits),
                k,
                family,
                mle,
                acceptance_rate: batch.acceptance_rate(),
                seed,
            }
        })
        .collect();
    Ok(reports)
}

/// Every conditional sample shares `t`, hence the MLE.
fn check_mle_fixed_point(x: &[f64], family: Family, t: &SuffStat, mle: (f64, f64)) -> Result<()> {
    let ts = family.stat_family().evaluate(x);
    let again = mle_from_suffstats(&ts, x.len())?;
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-6 * b.abs().max(1.0);
    if close(again.0, mle.0) && close(again.1, mle.1) {
        Ok(())
    } else {
        Err(Error::Contract(format!(
            "conditional sample has MLE {again:?}, data has {mle:?} (t = {:?})",
            t.values()
        )))
    }
}

/// Standard error of the mean of a dependent sequence from
/// `min(100, len)` contiguous batch means.
fn batch_means_se(values: &[f64]) -> f64 {
    let k = values.len();
    let b = SE_BATCHES.min(k);
    if b < 2 {
        let p = values.iter().sum::<f64>() / k.max(1) as f64;
        return (p * (1.0 - p) / k.max(1) as f64).sqrt();
    }
    let size = k / b;
    let means: Vec<f64> = (0..b)
        .map(|i| {
            let chunk = &values[i * size..(i + 1) * size];
            chunk.iter().sum::<f64>() / size as f64
        })
        .collect();
    let mean = means.iter().sum::<f64>() / b as f64;
    let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (b - 1) as f64;
    (var / b as f64).sqrt()
}
