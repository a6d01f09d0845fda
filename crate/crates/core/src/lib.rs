//! Leave-one-out risk estimation, L^q stability and PAC generalisation bounds
//! for ridge regression and the k-nearest-neighbours classifier.
//!
//! The crate is split along the lines of the experiment pipeline:
//!
//! - [`linalg`]: small dense symmetric solves, operator norms and the matrix
//!   identities the stability bounds lean on.
//! - [`seed`] and [`datagen`]: reproducible synthetic samples under bounded or
//!   sub-Gaussian assumptions, plus sample surgery (remove or replace a point).
//! - [`learners`]: ridge regression, kNN, cost functions, the leave-one-out
//!   estimator (naive and rank-one accelerated) and Monte Carlo prediction error.
//! - [`stability`]: empirical L^q stability and the closed-form stability constants.
//! - [`bounds`]: the moment bounds, the moment-to-tail conversion and both PAC bounds.
//! - [`harness`]: seeded Monte Carlo campaigns, report emission and the CLI plumbing.

pub mod bounds;
pub mod datagen;
pub mod error;
pub mod harness;
pub mod learners;
pub mod linalg;
pub mod seed;
pub mod stability;

pub use error::{Error, Result};

// Compiles the README examples as doctests.
#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
pub struct ReadmeDoctests;
