//! Policy evaluation: running agents for a step budget, success rates, the
//! benchmark score and reports.

pub mod golden;
pub mod harness;
pub mod policy;
pub mod report;
pub mod score;
pub mod stats;

use thiserror::Error;

pub use harness::{run_policy, RunOptions, RunOutcome, DEFAULT_BUDGET};
pub use policy::{Policy, RandomPolicy, ScriptPolicy};
pub use score::{aggregate_runs, compute_score, success_rates, summarize, RunSummary};
pub use stats::EpisodeStats;

use crate::env::record::RecordError;
use crate::env::EnvError;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error(transparent)]
    Record(#[from] RecordError),
    #[error("stats log has no episodes")]
    EmptyLog,
    #[error("no input values")]
    EmptyInput,
    #[error("success rate {value} at index {index} outside [0, 100]")]
    RateOutOfRange { index: usize, value: f64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("png encoding failed: {0}")]
    Png(#[from] png::EncodingError),
}
