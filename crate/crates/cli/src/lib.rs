//! Command-line front end: JSON matrix files in, single-line JSON reports out.

pub mod commands;
pub mod files;
pub mod report;
