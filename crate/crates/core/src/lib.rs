//! Exact sampling from the conditional distribution of a random vector `X`
//! given `T(X) = t`.
//!
//! The construction embeds `X` in an artificial parametric model: a pivot
//! `chi(u, theta)` that has the law of `X` for every `theta`, a proper prior
//! on `theta`, and the joint density `h(u, t)` of `U` and `tau(U, Theta)`.
//! Sampling `u` from `h(. | t)` and mapping through
//! `chi(u, theta_hat(u, t))` yields exact conditional draws.
//!
//! Concrete models live in [`models`]; the generic samplers (rejection,
//! independence Metropolis–Hastings, naive filtering, importance sampling)
//! in [`framework`]; conditional goodness-of-fit testing in [`gof`].

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod datasets;
pub mod ecdf;
pub mod error;
pub mod exec;
pub mod framework;
pub mod gof;
pub mod models;
pub mod random;
pub mod roots;
pub mod special;

pub use error::{Error, Result};
pub use exec::Execution;
pub use framework::{
    ConditionalModel, MhConfig, PriorBox, Proposal, SampleBatch, StatFamily, SuffStat, ThetaPair,
};
pub use random::RngState;
