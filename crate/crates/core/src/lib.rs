//! Unsupervised multiple-choice question answering.
//!
//! The pipeline has two stages: candidate choosing turns lexical
//! sliding-window scores or external EQA answer spans into per-question
//! candidate sets (noisy pseudo-labels), and weak-supervision training
//! fits an MCQA scorer against those sets with the Highest-Only, MML,
//! or Hard-EM objective. Candidate sets are a training-time device
//! only; prediction always ranks all choices.
//!
//! Modules follow the pipeline: [`corpus`] loads RACE/MCTest data,
//! [`matching`] scores choices, [`candidates`] selects and diagnoses
//! candidate sets, [`objectives`] defines the losses, [`scorer`] trains
//! and predicts, [`eval`] assembles reports, and [`cli`] wires the
//! file-based stages together. See the `examples/` directory for a
//! runnable tour, and the `mcqa` binary for the
//! `ingest | candidates | train | eval` pipeline.

pub mod candidates;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod matching;
pub mod objectives;
pub mod scorer;
pub mod synth;

pub use error::{Error, Result};
