//! Root finding for strictly increasing scalar functions on `(0, inf)`.
//!
//! The bracket is grown geometrically from a starting point until the target
//! is straddled; the root is then refined by Newton steps that fall back to
//! bisection whenever a step would leave the bracket.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct MonotoneSolver {
    /// Initial guess; bracketing starts here.
    pub start: f64,
    /// Geometric expansion factor for the bracket.
    pub growth: f64,
    pub lower_limit: f64,
    pub upper_limit: f64,
    /// Relative width at which the bracket counts as converged.
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Default for MonotoneSolver {
    fn default() -> Self {
        MonotoneSolver {
            start: 1.0,
            growth: 4.0,
            lower_limit: 1e-8,
            upper_limit: 1e8,
            rel_tol: 1e-12,
            max_iter: 200,
        }
    }
}

impl MonotoneSolver {
    /// Find `x` with `f(x) = target`, where `f` returns `(value, derivative)`
    /// and is strictly increasing.
    pub fn solve<F>(&self, f: F, target: f64) -> Result<f64>
    where
        F: Fn(f64) -> (f64, f64),
    {
        let (lo, hi) = self.bracket(&f, target)?;
        self.refine(&f, target, lo, hi)
    }

    fn bracket<F>(&self, f: &F, target: f64) -> Result<(f64, f64)>
    where
        F: Fn(f64) -> (f64, f64),
    {
        let x0 = self.start;
        let v0 = f(x0).0;
        if v0 == target {
            return Ok((x0, x0));
        }
        if v0 < target {
            let mut lo = x0;
            let mut hi = x0 * self.growth;
            while f(hi).0 < target {
                lo = hi;
                hi *= self.growth;
                if hi > self.upper_limit {
                    return Err(Error::Convergence {
                        what: "root bracketing (upward)",
                        iterations: 0,
                    });
                }
            }
            Ok((lo, hi))
        } else {
            let mut hi = x0;
            let mut lo = x0 / self.growth;
            while f(lo).0 > target {
                hi = lo;
                lo /= self.growth;
                if lo < self.lower_limit {
                    return Err(Error::Convergence {
                        what: "root bracketing (downward)",
                        iterations: 0,
                    });
                }
            }
            Ok((lo, hi))
        }
    }

    fn refine<F>(&self, f: &F, target: f64, mut lo: f64, mut hi: f64) -> Result<f64>
    where
        F: Fn(f64) -> (f64, f64),
    {
        if lo == hi {
            return Ok(lo);
        }
        let mut x = 0.5 * (lo + hi);
        for _ in 0..self.max_iter {
            let (v, dv) = f(x);
            let r = v - target;
            if r == 0.0 {
                return Ok(x);
            }
            if r < 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            let newton = x - r / dv;
            let next = if dv > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            let step = (next - x).abs();
            x = next;
            if step <= self.rel_tol * x || hi - lo <= self.rel_tol * x {
                return Ok(x);
            }
        }
        Err(Error::Convergence {
            what: "monotone root refinement",
            iterations: self.max_iter,
        })
    }
}
