//! Exact computation of LMO invariants in the sl(2) reduction, Casson-Walker
//! invariants and Dedekind symbols for lens spaces and Seifert fibered
//! rational homology spheres given by rational surgery.

pub mod dedekind;
pub mod error;
pub mod exact;
pub mod invariants;
pub mod numeric;
pub mod presentation;
pub mod reduced;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{HbarSeries, Rational};
pub use reduced::{ReducedElement, DEFAULT_ORDER};
