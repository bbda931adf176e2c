//! Exact reconstruction of abelian Galois covers of the projective plane
//! branched over line arrangements: incidence data, smoothness certificates,
//! numerical invariants, character sets, symmetry and real-structure
//! classification, and the topological bound arithmetic for real surfaces.
//!
//! Everything is exact: line coefficients live in `Q(z)` with `z` a primitive
//! sixth root of unity, intersection numbers are rationals, and group data is
//! taken modulo a prime.

pub mod arrangement;
pub mod bounds;
pub mod builtin;
pub mod characters;
pub mod cover;
pub mod cyclotomic;
pub mod error;
pub mod homology;
pub mod intersection;
pub mod io;
pub mod linalg;
pub mod par;
pub mod perm;
pub mod symmetry;
pub mod verify;

pub use cyclotomic::{CycNumber, Rational};
pub use error::{Error, Result};
pub use par::Execution;
pub use perm::Permutation;
