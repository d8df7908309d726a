//! Rational genus bounds for rationally null-homologous knots in connected
//! sums of lens spaces, computed exactly from Heegaard Floer correction terms.

pub mod conelab;
pub mod dinvariant;
pub mod error;
pub mod genusbounds;
pub mod homology;
pub mod lattice;
pub mod rational;
pub mod simpleknot;
pub mod vhprofile;

pub use error::{Error, Result};
