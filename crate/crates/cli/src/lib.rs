//! Batch front end: catalog listing, sampling to files, test suites,
//! classification, back-and-forth comparison and class checks.

pub mod commands;
pub mod format;
pub mod report;

pub use commands::{CliError, Source, Suite, TestOptions};
pub use format::{parse, serialize, FormatError};
pub use report::{Report, Verdict};
