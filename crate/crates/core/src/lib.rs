//! Numerical core for two-node ReLU continuous-time recurrent networks.
//!
//! The crate covers the whole chain from the classical network to its
//! quantized spectrum:
//!
//! - [`dynamics`]: the n-node vector field, RK4 integration, regime
//!   classification and the closed form of the decoupled regime.
//! - [`hamiltonian`]: the Hamiltonicity test for the planar active regime,
//!   the quadratic Hamiltonian and contour data.
//! - [`specfun`]: Pochhammer symbols, Kummer's `M(a, b, z)` and Hermite
//!   polynomials.
//! - [`spectrum`]: exponent constants, eigenvalues, eigenfunctions and the
//!   weight admissibility classifier.
//! - [`oracle`]: a finite-difference discretization of the eigenvalue ODE
//!   with its own eigensolvers, used to check the closed forms.
//!
//! Everything here is `no_std` with `alloc`; file formats and the CLI live
//! in the `ctrnn-spectra` crate.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod cmath;
pub mod dynamics;
pub mod error;
pub mod hamiltonian;
pub mod oracle;
pub mod specfun;
pub mod spectrum;

pub use error::{Error, Result};

pub use num_complex::Complex64;
