//! Library side of the `deltascat` command-line tool: configuration,
//! dispatch and output formatting.

pub mod config;
pub mod error;
pub mod format;
pub mod run;

pub use config::{FileConfig, Mode, RunConfig, SystemSpec};
pub use error::CliError;
pub use run::run;
