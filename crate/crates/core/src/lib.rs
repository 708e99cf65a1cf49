//! Finite quasigroups as Latin squares.
//!
//! The crate computes the six conjugates (parastrophes) of a quasigroup,
//! decides isotopy and anti-isotopy between quasigroups of small order, and
//! sorts every quasigroup into one of six types `A`..`F` according to how its
//! conjugates split into isotopy classes.
//!
//! ```
//! use quasigroup_core::{builtin, classify_type, isotopy_partition, Fixture, TypeClass};
//!
//! let q = builtin(Fixture::PaperDLoop, 6).unwrap();
//! assert_eq!(classify_type(&q).unwrap(), TypeClass::E);
//! assert_eq!(isotopy_partition(&q).unwrap().to_string(), "0|5;1|3;2|4");
//! ```

pub mod census;
pub mod classify;
pub mod fixtures;
pub mod isotopy;
pub mod parastrophe;
pub mod permutation;
pub mod quasigroup;

pub use census::{
    classify_square, enumerate_reduced, random_quasigroup, run_census, run_census_with,
    CensusError, CensusRecord, CensusSummary, ReducedSquares, CSV_HEADER, MAX_ENUMERATION_ORDER,
};
pub use classify::{
    anti_isotopy_relations, classify_type, classify_type_with, is_associative, is_dloop,
    is_group_isotopic, is_ip, isotopy_partition, isotopy_partition_with, plain_identity_class,
    principal_isotope, satisfies_permuted_identity, satisfies_permuted_identity_with,
    ClassifyError, IsotopyPartition, PermutedIdentity, TypeClass,
};
pub use fixtures::{builtin, Fixture, FixtureError};
pub use isotopy::{
    apply_isotopism, find_anti_isotopism, find_anti_isotopism_with, find_isotopism,
    find_isotopism_with, fingerprint, is_anti_isotopic, is_isotopic, Budget, Fingerprint,
    Isotopism, IsotopyError,
};
pub use parastrophe::{
    compose_parastrophes, equality_partition, parastrophe, parastrophes, satisfies_plain_identity,
    EqualityPartition, ParastropheIndex, Partition, PlainIdentity,
};
pub use permutation::{Permutation, PermutationError};
pub use quasigroup::{Quasigroup, TableError};
