use crate::error::{Error, Result};
use crate::framework::{StatFamily, SuffStat};
use crate::roots::MonotoneSolver;
use crate::special::{digamma, trigamma};

/// Gamma (shape, scale) MLE from `t1 = sum x_i`, `t2 = sum ln x_i`: the
/// root of `ln k - digamma(k) = ln(t1 / n) - t2 / n`, then `scale = t1 / (n k)`.
pub fn gamma_mle(n: usize, t1: f64, t2: f64) -> Result<(f64, f64)> {
    if n == 0 || !(t1 > 0.0) || !t2.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "gamma MLE needs n >= 1 and t1 > 0, got n = {n}, t = ({t1}, {t2})"
        )));
    }
    let nf = n as f64;
    let s = (t1 / nf).ln() - t2 / nf;
    if !(s > 0.0) {
        return Err(Error::Degenerate(
            "arithmetic and geometric means coincide; the shape MLE is infinite".into(),
        ));
    }
    // Minka's closed-form starting point.
    let k0 = (3.0 - s + ((s - 3.0).powi(2) + 24.0 * s).sqrt()) / (12.0 * s);
    let solver = MonotoneSolver {
        start: k0,
        lower_limit: 1e-12,
        upper_limit: 1e15,
        ..MonotoneSolver::default()
    };
    // digamma(k) - ln k is increasing in k.
    let k = solver.solve(
        |k| {
            let f = digamma(k).unwrap_or(f64::NAN) - k.ln();
            let d = trigamma(k).unwrap_or(f64::NAN) - 1.0 / k;
            (f, d)
        },
        -s,
    )?;
    Ok((k, t1 / (nf * k)))
}

/// Inverse Gaussian (mu, lambda) MLE from `t1 = sum x_i`, `t2 = sum 1/x_i`:
/// `mu = t1 / n`, `1 / lambda = (t2 - n^2 / t1) / n`.
pub fn invgauss_mle(n: usize, t1: f64, t2: f64) -> Result<(f64, f64)> {
    if n == 0 || !(t1 > 0.0) || !(t2 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "inverse Gaussian MLE needs n >= 1 and positive sums, got n = {n}, t = ({t1}, {t2})"
        )));
    }
    let nf = n as f64;
    let inv_lambda = (t2 - nf * nf / t1) / nf;
    if !(inv_lambda > 0.0) {
        return Err(Error::Degenerate(
            "t1 t2 = n^2; the lambda MLE is infinite".into(),
        ));
    }
    Ok((t1 / nf, 1.0 / inv_lambda))
}

/// MLE for the family of `t`: gamma `(shape, scale)` or inverse Gaussian
/// `(mu, lambda)`.
pub fn mle_from_suffstats(t: &SuffStat, n: usize) -> Result<(f64, f64)> {
    match t.family {
        StatFamily::Gamma => gamma_mle(n, t.t1, t.t2),
        StatFamily::InvGauss => invgauss_mle(n, t.t1, t.t2),
        other => Err(Error::InvalidParameter(format!(
            "no two-parameter MLE for {other:?}"
        ))),
    }
}
