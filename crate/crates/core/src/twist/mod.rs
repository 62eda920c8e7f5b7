//! Hopf-level checks in representations and the super-twist solver.

pub mod coproduct;
pub mod frt;
pub mod hopf;
pub mod phi;

pub use coproduct::{CoproductKind, CoproductMap, Generator};
