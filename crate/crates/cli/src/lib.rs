//! Command-line front end for the spectral laboratory: config parsing,
//! check dispatch, and deterministic CSV reports.

pub mod checks;
pub mod config;
pub mod csvout;
