//! Computation with finite categorical groups (Gr-categories).
//!
//! The crate works with skeletal models `(Π, A, h)`: a finite group `Π`, a
//! finite `Π`-module `A`, and a normalized 3-cocycle `h`. On top of group
//! cohomology it provides
//!
//! * obstruction theory and classification for Gr-functors of type `(φ, f)`
//!   ([`functors`]),
//! * braided types, abelian 3-cocycles and the trace map onto quadratic maps
//!   ([`braided`]),
//! * the strict Gr-category `Aut_G` of a group, reduction of strict categories
//!   and strictification of skeletal types ([`skeletal`]),
//! * abstract kernels, factor sets and the classification of group extensions
//!   ([`extensions`]).
//!
//! Every finite group is a Cayley table with the identity at index 0. All
//! internal choices (lifts, sticks, representatives) are lexicographic, so
//! results are reproducible.

pub mod abelian;
pub mod braided;
pub mod cohomology;
pub mod error;
pub mod extensions;
pub mod functors;
pub mod group;
pub mod linalg;
pub mod skeletal;

pub use abelian::{AbelianHom, AbelianIso, Elem, FiniteAbelianGroup};
pub use cohomology::{Cochain, CohomologyGroup, PiModule};
pub use error::{Error, GroupError, Result};
pub use group::{AutData, FiniteGroup, GroupHom};

/// Size limits guarding the brute-force parts of the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order accepted for automorphism searches and cochain complexes.
    pub group_order: usize,
    /// Largest extension group materialized as a Cayley table.
    pub extension_order: usize,
    /// Largest number of integer coordinates in a cochain space handed to the linear solver.
    pub cochain_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { group_order: 12, extension_order: 32, cochain_dim: 6000 }
    }
}
