//! Computations with locally equivalent number fields: Hasse-invariant
//! models of Brauer classes and their transport, orders through level
//! ideals, volume formulas for `SL_n(D)`, and genus bounds.

pub mod brauer;
pub mod equivalence;
pub mod error;
pub mod ffpoly;
pub mod fieldlab;
pub mod genus;
pub mod orders;
pub mod place;
pub mod poly;
pub mod real;
mod serde_bigint;
pub mod volume;

pub use error::{Error, Result};
pub use place::{ArchKind, Place};
