//! Finite MV-algebras with product, their variety tower, and the associated
//! lattice-ordered unital rings.

pub mod algebra;
pub mod axioms;
pub mod catalog;
pub mod chain_ring;
pub mod classify;
pub mod coextensive;
pub mod error;
pub mod format;
pub mod ideal;
pub mod lu_ring;
pub mod report;
pub mod ring_side;
pub mod spectrum_ring;

pub use algebra::{Elem, FiniteAlgebra};
pub use classify::{classify, Classification, VarietyLabel};
pub use error::{Error, Result};
pub use report::{Check, Report};
