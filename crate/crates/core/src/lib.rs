//! Exact computation in Iwahori-Hecke algebras, Kazhdan-Lusztig theory and
//! Lusztig's asymptotic ring J, together with finite-dimensional algebra and
//! cyclic homology tooling for checking spectrum preservation.

pub mod asymptotic;
pub mod error;
pub mod field;
pub mod findim;
pub mod hecke;
pub mod homology;
pub mod coxeter;
pub mod laurent;
pub mod linalg;

pub use error::{Error, Result};
