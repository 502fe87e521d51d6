//! Exact-arithmetic toolkit for Leonard systems.
//!
//! The modules build on one another: [`linalg`] supplies exact fields and
//! matrices, [`leonard`] validates Leonard systems, [`xspace`] computes the
//! space of matrices tridiagonal with respect to both idempotent families,
//! [`awrel`] extracts Askey-Wilson data and the maps it induces on that space,
//! and [`explorer`] runs finite-field censuses over all of the above.

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod awrel;
pub mod error;
pub mod explorer;
pub mod leonard;
pub mod linalg;
pub mod serial;
pub mod xspace;

pub use error::{AwError, Axiom, ExplorerError, LeonardError, LinalgError, XSpaceError};
pub use leonard::{LeonardCandidate, LeonardSystem};
pub use linalg::{FieldSpec, Matrix, Scalar};
