//! File formats, JSON reports and the `delone` command-line front end for
//! [`delone_core`].
//!
//! - [`pointfile`]: the `dim n` point-set text format.
//! - [`specfile`]: JSON generator specs for lattices, Sturmian and Kronecker
//!   sets.
//! - [`report`]: JSON report records at 12 significant digits and CSV plot
//!   data.
//! - [`cli`]: argument parsing and the `generate`, `analyze`, `compare` and
//!   `diagnose` commands.

pub mod cli;
mod error;
pub mod pointfile;
pub mod report;
pub mod specfile;

pub use error::{AppError, AppResult};
