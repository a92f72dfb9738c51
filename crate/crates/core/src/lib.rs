//! Exact computations for hypertoric varieties and hyperpolygon spaces:
//! cohomology presentations, core geometry, volume-polynomial cogenerators,
//! mod-2 Orlik–Solomon algebras and the hyperpolygon rings.

pub mod algebra;
pub mod cogen;
pub mod error;
pub mod fixtures;
pub mod groebner;
pub mod hyperpolygon;
pub mod hypertoric;
pub mod linalg;
pub mod os2;
pub mod polyhedra;
pub mod util;

pub use error::{Error, Result};
