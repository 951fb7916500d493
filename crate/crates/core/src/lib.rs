pub mod endomorphism;
pub mod equivalence;
pub mod error;
pub mod fractions;
pub mod homology;
pub mod linalg;
pub mod monomial;
pub mod presentations;

pub use error::{Error, Result};
