//! Truncated `atom ⊗ atom ⊗ cavity` Hilbert space, operators and states.

mod operator;
mod space;
mod state;

pub use operator::{
    annihilation, atomic_sigma, creation, embed, expect, local_annihilation, local_sigma, number,
    Operator,
};
pub use space::{AtomLevel, HilbertSpace, Slot};
pub use state::{DensityMatrix, Ket, HERMITICITY_TOL, POSITIVITY_TOL, TRACE_TOL};
