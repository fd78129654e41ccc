//! Input documents, command runners and reports for the `h1calc` binary.

pub mod document;
pub mod run;

pub use document::{parse, serialize, Body, Document, ParseError, ParseErrorKind};
pub use run::{
    parse_field, run_check, run_formula, run_oracle, run_poset, CliError, RunOptions, RunReport,
    EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, EXIT_UNSUPPORTED,
};
