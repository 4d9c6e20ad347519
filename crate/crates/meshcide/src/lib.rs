//! Command-line front end, JSON formats and pictures for `meshcide-core`.

pub mod cli;
pub mod json;
pub mod render;
pub mod report;

pub use cli::{run, Outcome};
