//! Base-size verification workbench for primitive permutation groups.

pub mod actions;
pub mod audit;
pub mod bsgs;
pub mod clgroups;
pub mod error;
pub mod forms;
pub mod gf;
pub mod linalg;
pub mod tables;

pub use error::{Error, Result};
