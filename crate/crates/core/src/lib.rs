//! Exact solver for the open spin-1/2 XX chain in a transverse field.
//!
//! The chain `H = -sum_i (s^x_i s^x_{i+1} + s^y_i s^y_{i+1})/2 - B sum_i s^z_i`
//! (Pauli matrices, open ends, exchange coupling as the energy unit) maps onto
//! free fermions. Its ground state changes only at the `n` crossing fields
//! `B_k = cos(k pi/(n+1))`; between them every observable is constant.
//!
//! - [`spectrum`]: mode energies, crossing fields, region index, ground energy.
//! - [`kernel`]: the two-point kernel and spin correlators.
//! - [`pairstate`]: one-tangle, concurrence, sweeps over regions.
//! - [`fidelity`]: single-spin partial fidelity and its susceptibility.
//! - [`thermo`]: bulk closed forms of the infinite chain.
//! - [`oracle`]: brute-force state vectors for `n <= 14`, used to check all of the above.
//! - [`validation`]: the analytic-vs-oracle comparison suite.

pub mod error;
pub mod fidelity;
pub mod kernel;
pub mod linalg;
pub mod oracle;
pub mod pairstate;
pub mod spectrum;
pub mod thermo;
pub mod validation;

pub use error::{Error, Result};
pub use kernel::{CorrelationKernel, TwoSpinDensity};
pub use spectrum::{ChainSpec, GroundStateData};
