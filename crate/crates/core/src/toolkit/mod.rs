//! Instance files, example-family generators, and the experiment runner.

pub mod experiment;
pub mod generators;
pub mod io;
