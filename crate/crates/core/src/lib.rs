//! Finite monoid extensions: Schreier and weakly Schreier extensions,
//! semidirect and crossed products, relaxed actions and second cohomology,
//! with brute-force enumeration to check the characterizations.

pub mod catalog;
pub mod cohomology;
pub mod congruence;
pub mod error;
pub mod extension;
pub mod iso;
pub mod monoid;
pub mod oracle;
pub mod relaxed;
pub mod strict;
pub mod violation;

pub use error::{Error, Result};
pub use extension::{classify, ExtensionClass, ExtensionDiagram};
pub use monoid::{FiniteMonoid, MonoidHom, MonoidRef};
pub use violation::Violation;
