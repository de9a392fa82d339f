use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{shard_sizes, Execution};
use crate::framework::ThetaPair;
use crate::random::RngState;
use crate::roots::MonotoneSolver;

use super::{log_sum_exp_scaled, log_values};

const SHARD: usize = 1024;

#[derive(Clone, Debug, Serialize)]
pub struct WeibullConfidence {
    /// Draws of `(alpha, beta)` = (shape, scale).
    pub draws: Vec<ThetaPair>,
    /// Exp(1) vectors for which no root existed; these are not replaced.
    pub skipped: usize,
}

/// Confidence distribution for Weibull(shape, scale) parameters given a
/// sample `data`: for each of `m` draws `x ~ Exp(1)^n`, solve
/// `sum (data_i / beta)^alpha = sum x_i` and
/// `alpha sum ln(data_i / beta) = sum ln x_i`.
pub fn weibull_confidence_sample(
    data: &[f64],
    m: usize,
    exec: Execution,
    rng: &mut RngState,
) -> Result<WeibullConfidence> {
    let n = data.len();
    if n < 2 {
        return Err(Error::InvalidParameter("need at least 2 observations".into()));
    }
    let log_u = log_values(data)?;
    let mean = log_u.iter().sum::<f64>() / n as f64;
    let y: Vec<f64> = log_u.iter().map(|v| v - mean).collect();
    if y.iter().all(|&v| v == 0.0) {
        return Err(Error::Degenerate("all observations are equal".into()));
    }
    let ln_n = (n as f64).ln();
    let solver = MonotoneSolver::default();

    let sizes = shard_sizes(m, SHARD);
    let jobs: Vec<(usize, RngState)> = sizes.iter().copied().zip(rng.fork(sizes.len())).collect();
    let parts = exec.map(jobs, |(count, mut r)| {
        let mut out = Vec::with_capacity(count);
        let mut skipped = 0;
        for _ in 0..count {
            let (mut t1, mut t2) = (0.0, 0.0);
            for _ in 0..n {
                let x = r.std_exponential();
                t1 += x;
                t2 += x.ln();
            }
            let c = t1.ln() - t2 / n as f64 - ln_n;
            let solved = (c > 0.0)
                .then(|| {
                    solver.solve(
                        |a| {
                            let (f, d) = log_sum_exp_scaled(&y, a);
                            (f - ln_n, d)
                        },
                        c,
                    )
                })
                .and_then(|r| r.ok())
                .and_then(|alpha| {
                    let ln_beta = (log_sum_exp_scaled(&log_u, alpha).0 - t1.ln()) / alpha;
                    ThetaPair::pair(alpha, ln_beta.exp()).ok()
                });
            match solved {
                Some(theta) => out.push(theta),
                None => skipped += 1,
            }
        }
        (out, skipped)
    });
    let mut draws = Vec::with_capacity(m);
    let mut skipped = 0;
    for (d, s) in parts {
        draws.extend(d);
        skipped += s;
    }
    Ok(WeibullConfidence { draws, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::gamma_solve;
    use crate::framework::{StatFamily, SuffStat};

    #[test]
    fn agrees_with_gamma_solver() {
        let data = [0.4, 1.3, 0.8, 2.1, 1.1];
        let mut rng = RngState::new(5, 0);
        let conf = weibull_confidence_sample(&data, 3, Execution::Sequential, &mut rng).unwrap();
        assert_eq!(conf.draws.len() + conf.skipped, 3);
        // replay the first Exp(1) vector
        let mut rng = RngState::new(5, 0);
        let mut r = rng.fork(1).remove(0);
        let x: Vec<f64> = (0..5).map(|_| r.std_exponential()).collect();
        let t = StatFamily::Gamma.evaluate(&x);
        let expected = gamma_solve(&data, &SuffStat::pair(StatFamily::Gamma, t.t1, t.t2)).unwrap();
        assert!((conf.draws[0].alpha() - expected.alpha()).abs() < 1e-12);
        assert!((conf.draws[0].beta() - expected.beta()).abs() < 1e-12);
    }

    #[test]
    fn rejects_equal_data() {
        let mut rng = RngState::new(1, 0);
        assert!(weibull_confidence_sample(&[2.0, 2.0], 10, Execution::Sequential, &mut rng).is_err());
    }
}
