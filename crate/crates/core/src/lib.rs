//! Spectral analysis of two identical flux qubits coupled to a single
//! harmonic oscillator mode beyond the rotating-wave approximation.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure
//! numerics. Everything that touches files or threads lives in the
//! `usc-spectra` companion crate.
//!
//! Modules:
//!
//! * [`model`]: parameter record, units and the joint qubit / well basis.
//! * [`numerics`]: associated Laguerre polynomials, log-factorials, a dense
//!   symmetric eigensolver and a golden-section line search.
//! * [`displaced_basis`]: adiabatic treatment for a fast oscillator
//!   (displaced Fock states, 4x4 effective qubit Hamiltonian).
//! * [`exact_diag`]: the full Hamiltonian in a truncated Fock basis.
//! * [`hf_qubit`]: adiabatic treatment for fast qubits (effective
//!   potentials, renormalised frequencies, double-well geometry).
//!
//! Units: `hbar = 1` throughout. [`model::make_params`] additionally sets
//! `m = omega0 = 1`, so energies come out in units of `hbar * omega0`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod displaced_basis;
pub mod error;
pub mod exact_diag;
pub mod hf_qubit;
mod math;
pub mod model;
pub mod numerics;

pub use error::{Error, Result};
pub use model::{make_params, ModelParams, QubitJointState, WellLabel};
