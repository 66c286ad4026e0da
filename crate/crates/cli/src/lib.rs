//! Command-line front end for `fforge-core`: instance files in, stable
//! result records out.

pub mod commands;
pub mod document;
pub mod error;
pub mod report;

pub use document::{parse_instance, render_instance, Instance, InstanceDocument};
pub use error::{CliError, CliResult};
pub use report::{ParsedResult, Report};
