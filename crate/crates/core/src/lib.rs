//! Mechanics of a particle coupled to its emitted excitation cloud:
//! closed-form trajectories, numerically integrated equations of motion
//! checked against them, Hamiltonian and action-angle analysis with the
//! recovered quantization relations, the pulsation oscillator in a
//! magnetic field, the linearized 4x4 energy operator, and the harmonic
//! lattice surrounding the particle.
//!
//! Everything is a pure function over immutable value types; the crate
//! is safe to use from any number of threads.

pub mod action;
pub mod crystallite;
pub mod dirac;
pub mod dynamics;
pub mod error;
pub mod quadrature;
pub mod scales;
pub mod spinfield;
pub mod trajectory;
pub mod tridiag;
pub mod verification;

pub use error::{Error, Result};
pub use scales::{derive_scales, relativistic_mass, DerivedScales, ParticleParams};
pub use trajectory::SpinPolarization;
