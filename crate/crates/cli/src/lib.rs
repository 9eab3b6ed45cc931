//! Instance files, the built-in scenario catalogue, the randomized property
//! suite and plot-data emission for the abscon engine.

pub mod checks;
pub mod error;
pub mod instance;
pub mod plot;
pub mod report;
pub mod scenarios;
pub mod suite;

pub use error::{CliError, Result};
