//! One module per subcommand; each exposes its clap `Args` struct and a
//! `run` returning the process exit code.

pub mod analyze;
pub mod colour;
pub mod gen;
pub mod oracle;
pub mod sample;
pub mod strong;
pub mod sweep;
pub mod verify;
