//! Library half of the `polyvar` command-line tool: argument definitions,
//! input formats, and the command implementations. The binary in
//! `main.rs` only parses and dispatches.
//!
//! Exit code contract (stable for scripting): 0 success, 2 input or
//! validation error, 3 numeric disagreement between methods. Output is
//! plain text with no escape sequences, so `NO_COLOR` is honored
//! trivially.

pub mod commands;
pub mod io;

pub use commands::{run, Cli};

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;
