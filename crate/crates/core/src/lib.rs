//! Exact arithmetic for the super-jordanian deformation of osp(1|2).

pub mod cli;
pub mod error;
pub mod graded;
pub mod io;
pub mod linalg;
pub mod matrices;
pub mod report;
pub mod reps;
pub mod scalar;
pub mod suites;
pub mod twist;

pub use error::{Error, Result};
pub use graded::{GradedMatrix, ParityVector};
pub use report::{Check, Report};
pub use scalar::Scalar;
