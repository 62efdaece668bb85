//! Scenario files, the `epsodds` command line and the JSON API on top of
//! [`epsodds_core`].

pub mod cli;
pub mod error;
pub mod payload;
pub mod registry;
pub mod scenario_file;
pub mod server;

pub use error::AppError;
