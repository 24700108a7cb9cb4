//! Command-line harness for the poset endomorphism toolkit: poset files,
//! exact counts, ratio sweeps over families, verification suites and DOT
//! export. The binary is a thin wrapper around [`cli::run`].

pub mod analyze;
pub mod cli;
pub mod dot;
pub mod error;
pub mod io;
pub mod ratio;
pub mod sweep;
pub mod verify;

pub use error::HarnessError;
