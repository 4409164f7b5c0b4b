//! Symbolic and numerical tools for the quantum matrix ball.

pub mod algebra;
pub mod error;
pub mod hopf;
pub mod rep;
pub mod laurent;
pub mod report;
pub mod verify;

pub use error::{AlgebraError, ParseError, RepError};
pub use laurent::LaurentScalar;
pub use report::{CheckRecord, CheckReport, ConfigEcho};
