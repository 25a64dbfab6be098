//! File formats, plotting and the command line front end for `ysc-core`.

pub mod cli;
pub mod config;
pub mod csvlog;
pub mod plot;
pub mod report;
