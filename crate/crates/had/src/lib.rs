//! The `.had` definition-file format, entity resolution, and the command
//! layer behind the `had` binary. Exposed as a library so conformance
//! tests can compare command outputs against direct library calls.

pub mod commands;
pub mod format;
pub mod report;
pub mod resolve;
