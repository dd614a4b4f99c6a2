//! Seeded multi-run experiments, comparisons between fitness strategies, and
//! the files they produce.

pub mod config;
pub mod csv;
mod compare;
mod plots;
mod run;

pub use compare::{compare_methods, ComparisonReport, ComparisonRow};
pub use config::{ExperimentConfig, Method, OUTPUT_DIR_ENV};
pub use plots::emit_plots;
pub use run::{
    execute_experiment, population_metrics, run_experiment, run_single, ExperimentReport,
    GenerationRecord, MeanRecord, RunResult, Summary,
};
