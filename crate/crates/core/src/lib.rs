//! Reliability analysis for stochastic agent evaluations.
//!
//! Trial-level logs (one binary outcome per question per run) are grouped into
//! a [`TrialMatrix`], from which the crate derives accuracy intervals, the
//! between/within-question variance decomposition, ICC(1,1) with its standard
//! error, paired agent comparisons, trial-budget plans and Evaluation Cards.
//!
//! Data-parallel loops (bootstrap replicates, convergence resamples, simulated
//! questions, per-question reductions) run on rayon when the `parallel`
//! feature is enabled. Every parallel path draws randomness from substreams
//! keyed by item index and reduces in canonical order, so results are
//! bit-identical to [`Exec::Sequential`].

// `!(x > 0.0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod comparison;
pub mod design;
mod error;
pub mod exec;
pub mod ingest;
pub mod reporting;
pub mod rng;
pub mod simulator;
pub mod special;
pub mod stats;

pub use error::{Error, Result};
pub use exec::Exec;
pub use ingest::{TrialMatrix, TrialRecord};
pub use stats::{AccuracySummary, IccBand, IccEstimate, IccVariant, VarianceDecomposition};
