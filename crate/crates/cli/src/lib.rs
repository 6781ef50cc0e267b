//! Library surface of the `condsup` binary: scenario files, typed reports
//! and the command implementations, kept separate so integration tests can
//! drive them directly.

pub mod commands;
pub mod report;
pub mod scenario;
