//! Configuration, job dispatch and table output behind the `gw-decohere`
//! binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod jobs;
pub mod table;

pub use config::{Job, RunConfig};
pub use error::CliError;
pub use jobs::{run, Report};
pub use table::Table;
