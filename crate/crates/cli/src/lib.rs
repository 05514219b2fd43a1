//! Command-line front end: problem files, reports and certificates.

pub mod certificate;
pub mod commands;
pub mod problem;
pub mod report;
