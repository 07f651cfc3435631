//! Finite double groupoids, vacancy, matched pairs of groupoids, the
//! (cocycle-twisted) weak Hopf algebras built on box sets, and the groupoid
//! cohomology around them, all in exact arithmetic.

pub mod cocycle;
pub mod cohomology;
pub mod corpus;
pub mod double;
pub mod error;
pub mod field;
pub mod format;
pub mod groupoid;
pub mod linalg;
pub mod matched_pair;
pub mod relation;
pub mod report;
pub mod wha;

pub use error::{Error, Result};
