//! Exact-arithmetic tools for isotrivial elliptic fibrations and the
//! finite group actions behind isotrivial Lagrangian fibrations.
//!
//! Everything is integer or rational arithmetic: SL(2,Z) word problems and
//! conjugate-product searches, the Kodaira fibre table, zero-profile
//! classification of constant-j Weierstrass K3 surfaces, enumeration of
//! admissible singular-fibre configurations, and finite group actions on
//! products of CM elliptic curves (fixed loci, singularity inventories,
//! invariant-form dimensions, symplectic desingularization obstructions).
//!
//! The `parallel` feature (on by default) routes the heavy enumerations
//! through rayon; disabling it leaves a sequential fallback with identical
//! results.

pub mod cm;
pub mod configs;
pub mod kodaira;
pub mod matrix;
pub mod partition;
pub mod poly;
pub mod sl2z;
pub mod torus;
pub mod verify;
pub mod weierstrass;
