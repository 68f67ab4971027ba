use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Internal level of a two-level atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AtomLevel {
    Ground = 0,
    Rydberg = 1,
}

impl AtomLevel {
    pub const ALL: [AtomLevel; 2] = [AtomLevel::Ground, AtomLevel::Rydberg];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Tensor factor of the composite space, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    Atom1,
    Atom2,
    Cavity,
}

/// `atom ⊗ atom ⊗ cavity` with the cavity truncated at `cutoff` photons.
///
/// Basis ordering is fixed: `index = a1 * 2 * (N + 1) + a2 * (N + 1) + n`
/// with ground = 0 and Rydberg = 1. Every matrix in the crate uses it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HilbertSpace {
    cutoff: usize,
}

impl HilbertSpace {
    pub const ATOM_DIMS: [usize; 2] = [2, 2];
    /// Two photons must be representable.
    pub const MIN_CUTOFF: usize = 2;

    pub fn new(cutoff: usize) -> Result<Self> {
        if cutoff < Self::MIN_CUTOFF {
            return Err(Error::invalid(format!(
                "Fock cutoff must be at least {}, got {cutoff}",
                Self::MIN_CUTOFF
            )));
        }
        Ok(HilbertSpace { cutoff })
    }

    /// Maximum photon number N.
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn atom_dims(&self) -> [usize; 2] {
        Self::ATOM_DIMS
    }

    pub fn fock_dim(&self) -> usize {
        self.cutoff + 1
    }

    pub fn dim(&self) -> usize {
        4 * self.fock_dim()
    }

    pub fn slot_dim(&self, slot: Slot) -> usize {
        match slot {
            Slot::Atom1 | Slot::Atom2 => 2,
            Slot::Cavity => self.fock_dim(),
        }
    }

    /// Panics if `photons` exceeds the cutoff.
    pub fn index(&self, atom1: AtomLevel, atom2: AtomLevel, photons: usize) -> usize {
        assert!(
            photons <= self.cutoff,
            "photon number {photons} above cutoff {}",
            self.cutoff
        );
        let f = self.fock_dim();
        atom1.index() * 2 * f + atom2.index() * f + photons
    }

    pub fn decompose(&self, index: usize) -> (AtomLevel, AtomLevel, usize) {
        assert!(index < self.dim());
        let f = self.fock_dim();
        let level = |bit: usize| if bit == 0 { AtomLevel::Ground } else { AtomLevel::Rydberg };
        (level(index / (2 * f)), level((index / f) % 2), index % f)
    }
}
