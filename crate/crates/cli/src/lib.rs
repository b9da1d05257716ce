//! Batch front end for the Kloosterman cancellation harness: JSON
//! configuration in, CSV rows out.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{config_from_value, parse_config, Mode, RunConfig, WeightSpec};
pub use error::CliError;
pub use output::{write_csv, CsvSink, ResultRow, COLUMNS};
pub use run::{run, run_streaming, scan_grid, VERSION};
