//! fusionkit — a finite-group toolkit for Sylow structure, hyperfocal
//! subgroups, group fusion systems and control-of-fusion checking.
//!
//! Groups are fully enumerated permutation groups with deterministic element
//! order, so every derived object (subgroup bitsets, Hom-set tables,
//! witnesses, reports) is reproducible bit-for-bit. The theorem checkers in
//! [`checkers`] sit behind a common trait and are selected by name at
//! runtime.

pub mod bitset;
pub mod checkers;
pub mod corpus;
pub mod critical;
pub mod error;
pub mod families;
pub mod field;
pub mod fusion;
pub mod group;
pub mod io;
pub mod perm;
pub mod plocal;
pub mod report;
pub mod subgroup;
pub mod suite;

pub use error::{Error, Result};
pub use group::{direct_product, quotient_by_normal, GroupTable, DEFAULT_ENUMERATION_CAP};
pub use perm::Permutation;
pub use subgroup::{
    are_conjugate_in, conjugation_orbit, subgroup_generated, CentralSeries, SubgroupHandle,
};
