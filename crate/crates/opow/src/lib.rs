//! Command-line front end for `opow-core`: expansion rendering, coefficient
//! tables in CSV/JSON and the verification suites.

pub mod cli;
pub mod render;

pub use cli::{main_with, run_with_cap, Outcome};
