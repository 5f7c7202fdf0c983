//! Exact graded invariants of the Jacobian ideal of a reduced plane curve.

pub mod analysis;
pub mod catalog;
pub mod classify;
pub mod error;
pub mod exactla;
pub mod graded;
pub mod inverse;
pub mod jacobian;
pub mod parser;
pub mod poly;
pub mod report;
pub mod resolution;
pub mod saturation;
pub mod suite;

pub use error::{Error, ParseError, Result};
