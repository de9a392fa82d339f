use serde::{Deserialize, Serialize};

use super::ThetaPair;

/// Counters collected while sampling.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Proposals (or raw draws) evaluated.
    pub proposals: u64,
    pub accepted: u64,
    /// Proposals whose root solve failed; treated as `h = 0`.
    pub solver_failures: u64,
    /// Proposals whose solved `x_hat` missed `t`; treated as `h = 0`.
    pub self_check_failures: u64,
    /// Per-iteration MH accept flags, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub accept_flags: Option<Vec<bool>>,
}

impl Diagnostics {
    pub fn acceptance_rate(&self) -> f64 {
        if self.proposals == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposals as f64
        }
    }

    pub(crate) fn absorb(&mut self, other: Diagnostics) {
        self.proposals += other.proposals;
        self.accepted += other.accepted;
        self.solver_failures += other.solver_failures;
        self.self_check_failures += other.self_check_failures;
        match (&mut self.accept_flags, other.accept_flags) {
            (Some(a), Some(b)) => a.extend(b),
            (None, Some(b)) => self.accept_flags = Some(b),
            _ => {}
        }
    }
}

/// `m` conditional draws of length `n`, stored row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    n: usize,
    samples: Vec<f64>,
    /// One entry per row; empty for samplers that do not solve for theta.
    pub theta_hats: Vec<ThetaPair>,
    pub diagnostics: Diagnostics,
    /// `(seed, stream)` of the generator the batch was drawn from.
    pub seed: u64,
    pub stream: u64,
}

impl SampleBatch {
    pub fn new(n: usize, seed: u64, stream: u64) -> Self {
        SampleBatch {
            n,
            samples: Vec::new(),
            theta_hats: Vec::new(),
            diagnostics: Diagnostics::default(),
            seed,
            stream,
        }
    }

    /// Build from explicit rows (used when reading sample files).
    pub fn from_rows(n: usize, rows: Vec<Vec<f64>>) -> Self {
        let mut b = SampleBatch::new(n, 0, 0);
        for r in rows {
            assert_eq!(r.len(), n, "row length must equal n");
            b.samples.extend(r);
        }
        b
    }

    pub(crate) fn push(&mut self, x: &[f64], theta: Option<ThetaPair>) {
        debug_assert_eq!(x.len(), self.n);
        self.samples.extend_from_slice(x);
        if let Some(t) = theta {
            self.theta_hats.push(t);
        }
    }

    /// Concatenate shard batches in order. Seed provenance is taken from
    /// `seed`/`stream`.
    pub(crate) fn merge(n: usize, seed: u64, stream: u64, parts: Vec<SampleBatch>) -> Self {
        let mut out = SampleBatch::new(n, seed, stream);
        for p in parts {
            out.samples.extend(p.samples);
            out.theta_hats.extend(p.theta_hats);
            out.diagnostics.absorb(p.diagnostics);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.samples.len().checked_div(self.n).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.samples[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.samples.chunks_exact(self.n.max(1))
    }

    /// Column `j` (0-based) across all rows.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows().map(|r| r[j]).collect()
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.samples
    }

    pub fn acceptance_rate(&self) -> f64 {
        self.diagnostics.acceptance_rate()
    }
}
