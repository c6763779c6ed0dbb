//! Numerical laboratory for the Weyl algebra of a free scalar quantum field.
//!
//! The crate provides momentum-space test functions with phase-space norms
//! ([`testfn`]), Poincaré and dilation actions on them ([`symm`]), Gaussian
//! vacuum expectations of Weyl operators ([`vacuum`]), a truncated Fock-space
//! engine with Wick fields and a local operator expansion ([`fock`]),
//! verification of energy/nuclearity norm bounds ([`bounds`]), and a finite
//! model of direct-integral decompositions ([`dirint`]).

pub mod bounds;
pub mod dirint;
pub mod fock;
pub mod quad;
pub mod symm;
pub mod testfn;
pub mod vacuum;

pub use quad::{quad_build, QuadError, QuadratureScheme};

