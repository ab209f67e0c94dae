//! Exact-arithmetic workbench for twisted Rota-Baxter operators on associative
//! algebras, NS-algebras, and their cohomology and deformation theory.
//!
//! Everything is computed over the rationals with arbitrary-precision integers,
//! so every identity check is exact: a report is either empty or lists concrete
//! basis tuples with nonzero residuals.

pub mod algebra;
pub mod corpus;
pub mod deform;
pub mod error;
pub mod instance;
pub mod linfty;
pub mod multilin;
pub mod nsop;
pub mod qlinalg;
pub mod report;
pub mod sampling;
pub mod trb;

pub use error::Error;
pub use qlinalg::Q;
pub use report::{CheckReport, Violation};
