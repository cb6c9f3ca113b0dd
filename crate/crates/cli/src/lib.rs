//! Command-line front end: configuration, on-disk cache, target grammar,
//! the verification pipeline and report writers.

pub mod cache;
pub mod commands;
pub mod config;
pub mod references;
pub mod report;
pub mod targets;
pub mod verify;
