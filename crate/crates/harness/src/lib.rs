//! Experiment harness for hyperseed: dataset loading and generation, TOML
//! configuration, repeated runs with reports, sweeps, model files and plots.

pub mod config;
pub mod corpus;
pub mod datasets;
pub mod error;
pub mod experiment;
pub mod fcps;
pub mod metrics;
pub mod model;
pub mod output;
pub mod render;
pub mod sweep;

pub use config::{DataSource, ExperimentConfig, Select};
pub use error::{HarnessError, Result};
pub use experiment::{
    run_experiment, run_repeat, run_with_inputs, ExperimentReport, Inputs, RunArtifacts,
};
pub use metrics::{evaluate, Metrics};
pub use model::{Model, ModelFile};
pub use sweep::{run_sweep, SweepAxis, SweepRow};
