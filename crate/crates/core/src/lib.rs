//! Exact verification toolkit for the queer Lie superalgebra q(n): Schur
//! Q-functions, graded linear algebra over the rationals, the Sergeev group,
//! and the Sergeev and (q(m), q(n)) Howe dualities.

pub mod cli;
pub mod dualities;
pub mod error;
pub mod exactla;
pub mod partitions;
pub mod qalg;
pub mod spingroup;
pub mod symfunc;

pub use error::{Error, Result};
