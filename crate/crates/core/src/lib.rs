//! Kinematics of SU(2) spin networks.
//!
//! This crate is the allocation-only (`no_std` + `alloc`) kernel: exact
//! SU(2) representation theory, embedded graphs and their punctures with
//! oriented surfaces, cylindrical functions of connections with the Haar
//! inner product, and the flux, area and volume operators built on top of
//! them. File formats and the command line front end live in the `qgeom`
//! crate.
//!
//! Internal units: the Planck length and the Immirzi parameter are both 1.
//! Area spectra are reported in units of `4πγℓ_P²`, volume spectra in units
//! of `(8πγℓ_P²)^{3/2}`.

#![no_std]

extern crate alloc;

pub mod cyl;
pub mod graph;
pub mod linalg;
pub mod operators;
pub mod su2;

pub use num_complex::Complex64 as C64;

pub use cyl::{CylError, CylFun, EdgeLabel};
pub use graph::{EmbeddedGraph, GraphError, Surface};
pub use linalg::CMatrix;
pub use operators::{OperatorError, Spectrum};
pub use su2::{GroupElement, HalfInt, LieVector};
