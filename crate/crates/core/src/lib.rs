//! Twisted dendriform algebras, Jackson q-calculus and the pre-Lie Magnus
//! expansion, computed in exact rational arithmetic.

pub mod algebra;
pub mod dendriform;
pub mod error;
pub mod finitediff;
pub mod magnus;
pub mod qbch;
pub mod qcalc;
pub mod report;
pub mod sample;
pub mod verify;

pub use error::{Error, Result};
