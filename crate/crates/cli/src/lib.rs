//! Command surface and property suites for `quantalg`.

pub mod commands;
pub mod generators;
pub mod report;
pub mod suites;
