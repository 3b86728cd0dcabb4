//! Exactly solvable deformed Jaynes-Cummings dynamics.
//!
//! A two-level atom coupled to one or two cavity modes through deformed
//! ladder operators `K = sqrt(1 + k a†a) a`. The dynamics splits into 2x2
//! blocks per photon number and is evolved in closed form; a brute-force
//! propagator on the truncated Hamiltonian is kept alongside as an oracle.

mod block;
pub mod error;
pub mod grid;
pub mod model;
pub mod oracle;
pub mod output;
pub mod scenario;
pub mod single;
pub mod spectral;
pub mod states;
pub mod tables;
pub mod two;
pub mod validate;

pub use error::{Error, Result};
pub use num_complex::Complex64;
