//! A numerical laboratory for bandlimited functions on the hyperbolic plane.
//!
//! The hyperbolic plane is modeled as the Poincaré disk with curvature −1.
//! Bandlimited ("Paley–Wiener") functions are finite spans of filtered
//! reproducing-kernel translates, synthesized through the radial spherical
//! transform. On top of that core the crate provides:
//!
//! * exact hyperbolic geometry: distances, isometry flows, invariant quadrature
//!   ([`geometry`]);
//! * the spherical function, Plancherel density and kernel calculus
//!   ([`spectral`]);
//! * maximal point lattices with packing/covering/multiplicity certificates
//!   ([`lattice`]);
//! * sampling functionals supported near lattice points ([`functionals`]);
//! * empirical verification harnesses for Bernstein, Nikolskii, interpolation
//!   and Plancherel–Polya inequalities ([`lab`]);
//! * stable least-squares reconstruction from samples ([`reconstruction`]);
//! * an exact Euclidean baseline: the Nikolskii extremal function and
//!   critical-rate Shannon sampling ([`euclid`]).
//!
//! The `hypersample` binary drives the harnesses from JSON configs; see the
//! book under `book/` for a guided tour.

pub mod cli;
pub mod error;
pub mod euclid;
pub mod functionals;
pub mod geometry;
pub mod io;
pub mod lab;
pub mod lattice;
pub mod quadrature;
pub mod reconstruction;
pub mod spectral;

pub use error::{Error, Result};
pub use geometry::{Point, RHO};
