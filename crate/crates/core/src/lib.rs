//! Quantum correlations and teleportation fidelity of a two-qubit Heisenberg
//! XY model, at thermal equilibrium and under a local PT-symmetric evolution.
//!
//! Every closed-form quantity is paired with an independent numerical route;
//! [`validate::validate_suite`] runs all of these cross-checks.

pub mod correlations;
pub mod error;
pub mod ptdyn;
pub mod qmat;
pub mod random;
pub mod recipes;
pub mod sweep;
pub mod teleport;
pub mod tolerances;
pub mod validate;
pub mod xymodel;

pub use error::{Error, Result};
