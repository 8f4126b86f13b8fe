//! Geometry, phases, speed limits and entanglement of `N` spin-`s`
//! particles evolving under the all-to-all Ising Hamiltonian
//! `H = 2J Σ_{k<l} S_k^z S_l^z` from an SU(2) coherent product state.

pub mod coherent;
pub mod config;
pub mod density;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod geometry;
pub mod phases;
pub mod quadrature;
pub mod spin;
pub mod state;

pub use config::{ParamPoint, SystemConfig};
pub use error::{Error, Result};
pub use spin::SpinValue;
pub use state::{build_initial_state, evolve, overlap, PureState};
