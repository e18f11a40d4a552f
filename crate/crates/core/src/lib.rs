//! Exact sl3 representation matrices in the Gelfand–Tsetlin basis and SO(3) rotation
//! matrix elements computed by independent routes.

pub mod error;
pub mod gt_basis;
pub mod numerics;
pub mod oracle;
pub mod report;
pub mod specfun;
pub mod rep;
pub mod racah_algebra;
pub mod rotations;
pub mod suites;
pub mod cli;

pub use error::{Error, Result};
