//! Expression language, problem files, reports and the command-line driver.

pub mod cli;
pub mod csv;
pub mod input;
pub mod parse;
pub mod print;
pub mod report;

pub use input::{InputError, InputMode, ProblemInput};
pub use parse::{parse, parse_constant, parse_laurent, parse_point, ParseError, ParseMode};
pub use print::print_canonical;
