//! Conditional goodness-of-fit tests for the gamma and inverse Gaussian
//! families.
//!
//! The null distribution of a statistic `W` is taken conditionally on the
//! sufficient statistic `T = t`, where it is free of the unknown
//! parameters. The p-value `P(W >= w* | T = t)` is estimated from
//! Metropolis–Hastings conditional samples started at the data.

mod mle;
mod pvalue;

pub use mle::{gamma_mle, invgauss_mle, mle_from_suffstats};
pub use pvalue::{conditional_p_value, conditional_p_values, GofConfig, GofReport};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framework::{StatFamily, SuffStat};
use crate::special::{gamma_cdf, invgauss_cdf};

/// Lower and upper clamp for transformed values, keeping `ln z` finite.
pub const Z_CLAMP: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gamma,
    InvGauss,
}

impl Family {
    pub fn stat_family(self) -> StatFamily {
        match self {
            Family::Gamma => StatFamily::Gamma,
            Family::InvGauss => StatFamily::InvGauss,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Gamma => "gamma",
            Family::InvGauss => "invgauss",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma" => Ok(Family::Gamma),
            "invgauss" | "inverse-gaussian" | "ig" => Ok(Family::InvGauss),
            _ => Err(Error::InvalidParameter(format!("unknown family {s:?}"))),
        }
    }
}

/// Kolmogorov–Smirnov `D`, Anderson–Darling `A2`, Cramér–von Mises `W2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GofStatistic {
    #[serde(rename = "D")]
    Ks,
    #[serde(rename = "A2")]
    Ad,
    #[serde(rename = "W2")]
    Cvm,
}

impl GofStatistic {
    pub const ALL: [GofStatistic; 3] = [GofStatistic::Ad, GofStatistic::Cvm, GofStatistic::Ks];

    pub fn name(self) -> &'static str {
        match self {
            GofStatistic::Ks => "D",
            GofStatistic::Ad => "A2",
            GofStatistic::Cvm => "W2",
        }
    }

    pub fn evaluate(self, z: &[f64]) -> Result<f64> {
        match self {
            GofStatistic::Ks => ks_stat(z),
            GofStatistic::Ad => ad_stat(z),
            GofStatistic::Cvm => cvm_stat(z),
        }
    }
}

impl FromStr for GofStatistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ks" | "D" => Ok(GofStatistic::Ks),
            "ad" | "A2" => Ok(GofStatistic::Ad),
            "cvm" | "W2" => Ok(GofStatistic::Cvm),
            _ => Err(Error::InvalidParameter(format!("unknown statistic {s:?}"))),
        }
    }
}

/// A sample of real observations.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    values: Vec<f64>,
}

impl Dataset {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("dataset is empty".into()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite value {v}")));
        }
        Ok(Dataset { values })
    }

    /// Parse whitespace- or comma-separated reals; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            for tok in body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
            {
                let v: f64 = tok.parse().map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("not a number: {tok:?}"),
                })?;
                if !v.is_finite() {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: format!("non-finite value {tok:?}"),
                    });
                }
                values.push(v);
            }
        }
        if values.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "no values found".into(),
            });
        }
        Ok(Dataset { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `(sum x_i, sum ln x_i)` for gamma, `(sum x_i, sum 1/x_i)` for inverse
/// Gaussian.
pub fn suff_stats(data: &[f64], family: Family) -> Result<SuffStat> {
    if data.is_empty() {
        return Err(Error::InvalidParameter("empty data".into()));
    }
    if let Some(v) = data.iter().find(|&&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::Domain(format!(
            "{family} data must be positive, got {v}"
        )));
    }
    Ok(family.stat_family().evaluate(data))
}

/// Sorted `z_i = F(x_(i); params)` clamped into `[1e-12, 1 - 1e-12]`.
pub fn transform_z(data: &[f64], family: Family, params: (f64, f64)) -> Result<Vec<f64>> {
    let mut z = data
        .iter()
        .map(|&x| match family {
            Family::Gamma => gamma_cdf(x, params.0, params.1),
            Family::InvGauss => invgauss_cdf(x, params.0, params.1),
        })
        .collect::<Result<Vec<f64>>>()?;
    z.iter_mut().for_each(|v| *v = v.clamp(Z_CLAMP, 1.0 - Z_CLAMP));
    z.sort_by(f64::total_cmp);
    Ok(z)
}

fn check_sorted(z: &[f64]) -> Result<()> {
    if z.is_empty() {
        return Err(Error::Contract("empty z".into()));
    }
    if z.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::Contract("z must be sorted ascending".into()));
    }
    Ok(())
}

/// `D = max_i max(z_i - (i-1)/n, i/n - z_i)`.
pub fn ks_stat(z: &[f64]) -> Result<f64> {
    check_sorted(z)?;
    let n = z.len() as f64;
    Ok(z.iter()
        .enumerate()
        .map(|(i, &zi)| (zi - i as f64 / n).max((i + 1) as f64 / n - zi))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// `A2 = -n - (1/n) sum (2i-1) (ln z_i + ln(1 - z_(n+1-i)))`.
pub fn ad_stat(z: &[f64]) -> Result<f64> {
    check_sorted(z)?;
    let n = z.len();
    let s: f64 = (0..n)
        .map(|i| (2 * i + 1) as f64 * (z[i].ln() + (-z[n - 1 - i]).ln_1p()))
        .sum();
    Ok(-(n as f64) - s / n as f64)
}

/// `W2 = 1/(12n) + sum (z_i - (2i-1)/(2n))^2`.
pub fn cvm_stat(z: &[f64]) -> Result<f64> {
    check_sorted(z)?;
    let n = z.len() as f64;
    let s: f64 = z
        .iter()
        .enumerate()
        .map(|(i, &zi)| (zi - (2 * i + 1) as f64 / (2.0 * n)).powi(2))
        .sum();
    Ok(1.0 / (12.0 * n) + s)
}
