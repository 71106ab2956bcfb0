//! Experiment harness for topocode: dataset loaders, seeded experiment
//! runs and CSV/JSON result files.

pub mod datasets;
pub mod error;
pub mod experiment;
pub mod output;

pub use error::HarnessError;
pub use experiment::{run, Dataset, Experiment, ExperimentSpec, RunOutput};
pub use output::{read_manifest, write_run};
