//! Brute-force verification of the dualities.

mod center;
mod howe;
mod report;
mod sergeev;
mod zero_weight;

pub use center::{center_check, center_count, CenterCount};
pub use howe::{dimension_table, sym_dim, verify_howe, verify_symmetric_power};
pub use report::{DimRow, Params, ReportBuilder, Status, SubCheck, VerificationReport};
pub use sergeev::{build_irreducible, dim_t, hom_dim, verify_hom_dim, verify_sergeev, HomDim, AMBIENT_BOUND, SERGEEV_BOUND};
pub use zero_weight::{verify_regular, verify_zero_weight};
