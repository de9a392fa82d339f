use thiserror::Error;

use crate::framework::SampleBatch;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what} did not converge within {iterations} iterations")]
    Convergence { what: &'static str, iterations: usize },

    /// No parameter value solves the conditioning equations for this `u`.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// The conditioning value lies outside the range of the statistic.
    #[error("unattainable conditioning value: {0}")]
    Unattainable(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("could not find a starting state with positive density after {attempts} proposals")]
    Initialization { attempts: u64 },

    #[error("envelope bound violated: density ratio {ratio} exceeds bound {bound}")]
    BoundViolation { ratio: f64, bound: f64 },

    #[error("draw budget exhausted after {draws} draws with {accepted} accepted; {advice}")]
    BudgetExhausted {
        draws: u64,
        accepted: usize,
        advice: String,
        partial: Box<SampleBatch>,
    },

    #[error("all importance weights are zero")]
    DegenerateWeights,

    #[error("contract violation: {0}")]
    Contract(String),
}

impl Error {
    /// True for failures caused by the caller's input rather than by a
    /// numerical or sampling budget problem.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::Domain(_)
                | Error::Parse { .. }
                | Error::Unattainable(_)
                | Error::Degenerate(_)
                | Error::Contract(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
