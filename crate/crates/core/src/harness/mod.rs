//! Monte Carlo estimation, experiment runners and reports.

pub mod config;
pub mod estimate;
pub mod experiments;
pub mod family;
pub mod report;
pub mod verify;

pub use config::{ExperimentConfig, ExperimentKind};
pub use estimate::{estimate, run_trials, verdict, Diagnostics, Direction, EstimateWithCI, Verdict};
pub use experiments::run;
pub use family::standard_family;
pub use report::{ExperimentReport, Table};
pub use verify::{verify_kernel, VerifyReport};
