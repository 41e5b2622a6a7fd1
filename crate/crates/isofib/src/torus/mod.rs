//! Finite group actions on products of CM elliptic curves, in exact
//! lattice coordinates.
//!
//! A point of E^d is 2d rationals mod 1 and multiplication by tau is an
//! integer 2x2 block, so fixed loci, stabilizers, orbit counts, invariant
//! form dimensions, and transverse slice representations are all integer
//! or rational linear algebra with no rounding anywhere.

pub mod automorphism;
pub mod fixed;
pub mod forms;
pub mod group;
pub mod inventory;
pub mod point;
pub mod strata;
pub mod symplectic;

pub use automorphism::TorusAutomorphism;
pub use fixed::{fixed_locus, fixed_locus_bounded, FixedComponent, FixedLocus};
pub use forms::{base_invariant_form_dimension, invariant_form_dimension};
pub use group::{builtin_action, builtin_sample_set, BuiltinAction, FiniteActionGroup, DEFAULT_ORDER_CAP};
pub use inventory::{singularity_inventory, PointOrbit, SingularityInventory};
pub use point::TorusPoint;
pub use strata::{evaluate_stratum, Stratum};
pub use symplectic::{
    desingularization_obstruction, preserves_symplectic, splitting_test, ObstructionReport,
    ObstructionVerdict,
};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TorusError {
    #[error("linear part has determinant {det}, expected a unit")]
    NotUnimodular { det: BigInt },
    #[error("linear part does not commute with the complex structure")]
    NotHolomorphic,
    #[error("dimension {0} is not usable here")]
    BadDimension(usize),
    #[error("group closure exceeded the cap of {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("the endomorphism field has no unit of order {0}")]
    UnsupportedUnitOrder(u32),
    #[error("automorphisms live on different tori")]
    IncompatibleField,
    #[error("{0} is not a nonzero 2-torsion point")]
    NotTwoTorsion(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("unknown action {0:?}")]
    UnknownAction(String),
    #[error("form degree {p} exceeds the dimension {d}")]
    FormDegreeTooLarge { p: usize, d: usize },
    #[error("complex dimension {0} is odd; coordinates cannot be paired")]
    OddDimension(usize),
    #[error("the action mixes base and fibre coordinates")]
    MixesBaseAndFibre,
    #[error("group average is not a nonnegative integer: {0}")]
    NonIntegralAverage(String),
    #[error("the action does not preserve the symplectic form")]
    NotSymplectic,
    #[error("inventory would collect too many isolated points ({count})")]
    InventoryTooLarge { count: String },
}
