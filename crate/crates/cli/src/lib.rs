//! Command-line surface over `hangnail-core`: compile, verify, bench and
//! render subcommands, plus the fixed file formats they speak.

pub mod bench;
pub mod cli;
pub mod funcspec;
pub mod render;
pub mod report;
pub mod wordfile;

pub use cli::run;
