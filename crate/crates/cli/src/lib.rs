//! File formats, group selection, JSON reports and the example registry
//! behind the `natext` binary.

pub mod commands;
pub mod config;
pub mod registry;
pub mod report;
pub mod select;
pub mod spec_file;
