//! Electrodynamics with an upper particle-momentum limit at the Planck scale.
//!
//! The momentum cutoff `p ≤ P*` turns the otherwise divergent pieces of the
//! electromagnetic Hamiltonian into finite, computable quantities. This crate
//! implements the corresponding numerics:
//!
//! * [`units`] — the Planck scale and the internal natural-unit convention
//!   (ħ = c = k_B = E* = L* = 1).
//! * [`specfun`] — the sine integral Si(x) and the adaptive quadrature engine
//!   that backs every brute-force oracle.
//! * [`coulomb`] — the regularized Coulomb kernel (2/π)·Si(r/L*)/r, pairwise
//!   configuration energies, and the finite self-energy (α/π)·E*.
//! * [`modesum`] — independent oracles for the kernel (1-D quadrature and
//!   seeded Monte-Carlo direction averaging), the zero-point energy of the
//!   radiation field, state counting, and volume quantization.
//! * [`fieldmodes`] — classical integration of the sourced Fourier-mode
//!   oscillator equations with Lorenz-constraint monitoring.
//! * [`photongas`] — the cutoff-modified photon-gas spectral law and equation
//!   of state, with classical Planck-gas limits as oracles.
//! * [`cli`] — JSON run configurations, sweep tables, and CSV/JSON emission
//!   for the `planck-cutoff` binary.

pub mod cli;
pub mod coulomb;
mod error;
pub mod fieldmodes;
pub mod modesum;
pub mod photongas;
pub mod specfun;
pub mod units;

pub use error::{Error, Result};
