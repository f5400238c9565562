//! File-based front end for `torsion-core`: JSON configs, parallel report
//! runs, CSV and JSON output, and the acceptance suite.

pub mod acceptance;
pub mod config;
pub mod report;

pub use config::{Config, ConfigError};
pub use report::{calibration, run, sig12, to_json, write_csv, write_json, ReportError};
