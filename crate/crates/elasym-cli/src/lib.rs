//! Library side of the `elasym` command: input parsing and report
//! construction, kept apart from argument handling so they can be tested.

pub mod error;
pub mod input;
pub mod report;

pub use error::CliError;
pub use input::{parse_input, read_input, Format, InputDocument};
