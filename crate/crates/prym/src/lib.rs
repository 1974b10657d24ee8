//! Command-line driver for `prym-core`: input documents, JSON reports,
//! threaded counting and the acceptance suite.

pub mod acceptance;
pub mod input;
pub mod jobs;
pub mod parallel;
pub mod report;
