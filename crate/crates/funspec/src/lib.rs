//! Configuration, report formats and the acceptance matrix for
//! `funspec-core`. The `funspec` binary is a thin wrapper over this crate.

pub mod config;
pub mod report;
pub mod run;
pub mod verify;

pub use config::{Diagnostic, RunConfig, Task};
pub use report::{Report, Status};
pub use run::run;
pub use verify::{verify_suite, Check};
