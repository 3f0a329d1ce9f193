//! Exact computations with finite crystallographic root systems: canonical
//! forms of vector tuples under the diagonal Weyl group action, the induced
//! stratification of V^n, and conjugacy classification of root subsystems
//! through Gram/Cartan genera.
//!
//! Layer by layer:
//!
//! * [`exact`] — rational arithmetic, vectors in simple-root coordinates,
//!   exact linear solving.
//! * [`rootsys`] — root systems built from Cartan types, Weyl groups as
//!   root permutations, coset representatives, longest elements.
//! * [`chamber`] — reduction into the closed fundamental chamber of a
//!   (parabolic) reflection group, facets and facet interior points.
//! * [`diagfund`] — the fundamental domain for the diagonal action on
//!   n-tuples: membership, canonicalization, the induced "dot" action of
//!   place permutations.
//! * [`strata`] — the stratification of V^n by chambers-of-stabilizer
//!   chains: labels, closures, the face poset, Euler characteristic checks,
//!   and alternating-sum character identities.
//! * [`genus`] — Gram/Cartan matrices of tuples up to simultaneous
//!   permutation, generalized Cartan matrix classification, fibers of a
//!   genus inside the fundamental domain.
//! * [`classify`] — conjugacy classification of simple subsystems, the
//!   combinatorial model for type-A subsystems, orthogonal A₁^n towers, and
//!   brute-force oracles that certify everything on small systems.

pub mod chamber;
pub mod classify;
pub mod diagfund;
pub mod error;
pub mod exact;
pub mod genus;
pub mod rootsys;
pub mod strata;

pub use error::{Error, Result};
