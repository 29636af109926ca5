//! Functorial spectra of small tensor triangulated categories.
//!
//! The crate works with three families of examples: bounded derived
//! categories of representations of finite acyclic quivers, perfect complexes
//! over finite commutative rings, and the orbit categories of graded vector
//! spaces by a shift power. For each it computes the tensor points, supports,
//! thick tensor ideals and prime ideals, structure-sheaf stalks and (for
//! quivers) the algebra of natural transformations between points.
//!
//! Everything is exact: scalars are elements of prime fields, small Galois
//! fields or the rationals, and integer work goes through Smith normal forms.
#![no_std]

extern crate alloc;

pub mod error;
pub mod homalg;
pub mod linalg;
pub mod orbit;
pub mod pathalg;
pub mod quiver;
pub mod ringcat;
pub mod spectrum;

pub use error::{Error, Result};
