//! Library side of the `qdemon` command: config parsing, sweeps and the
//! verification battery. The binary is a thin argument layer over it.

pub mod config;
pub mod error;
pub mod report;
pub mod sweep;
pub mod verify;

pub use error::{CliError, Result};
