//! Photon statistics of a driven cavity holding two Rydberg-interacting atoms.

// `!(x > tol)` style guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod lindblad;
pub mod linalg;
pub mod model;
pub mod quantum;
pub mod sweep;
pub mod weakdrive;

pub use error::{Error, Result};
pub use model::{DriveScheme, SystemParams, Units};
pub use quantum::{DensityMatrix, HilbertSpace, Ket, Operator};
