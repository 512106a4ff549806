//! Brute-force ground truth: small monoids, censuses of extensions, and the
//! algebraic data they are compared against.

pub mod algebra;
pub mod census;
pub mod check;
pub mod monoids;

/// Largest order [`monoids::enumerate_monoids`] accepts.
pub const MAX_MONOID_ORDER: usize = 5;

/// Largest total size a census accepts.
pub const MAX_TOTAL_SIZE: usize = 16;

pub use algebra::{
    enumerate_actions, enumerate_factor_systems, enumerate_relaxations, enumerate_relaxed_actions,
    enumerate_ws_factor_systems,
};
pub use census::{
    enumerate_extensions, enumerate_extensions_via_catalog, enumerate_weakly_schreier, enumerate_with_fiber_cap, CensusEntry, CensusMode,
    ExtensionCensus,
};
pub use check::{census_check, CensusReport, CountCheck, GammaTally};
pub use monoids::{enumerate_monoids, MonoidCatalog};
