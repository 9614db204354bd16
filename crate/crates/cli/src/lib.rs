//! Library side of the command-line front end: sweeps, figure panels, float
//! formatting and the verification suite. The binary in `main.rs` is a thin
//! argument-parsing wrapper so everything here stays testable in-process.

pub mod checks;
pub mod figure;
pub mod fmt;
pub mod sweep;
