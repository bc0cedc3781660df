//! Khovanov homology and its Lee and Bar-Natan deformations for knot
//! diagrams given in planar-diagram notation.
//!
//! The crate builds without `std` (it needs `alloc`). File formats, the
//! bundled corpus and the command line live in the `khovanov` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod complex;
pub mod diagram;
pub mod frobenius;
pub mod homology;
