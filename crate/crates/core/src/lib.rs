//! Numerical core for the driven dispersive qubit–magnon model.
//!
//! The joint Hilbert space is a qubit (`|g⟩`, `|e⟩`) tensored with a truncated
//! magnon Fock space. Everything here is dense complex linear algebra on that
//! space: the rotating-frame Hamiltonian, the Lindblad dissipators, the
//! column-stacked Liouvillian, steady-state solvers, and the observables
//! derived from a steady state (`g²(0)`, `Pₙ`, occupations).
//!
//! All rates and detunings are dimensionless multiples of a reference rate γ.
//!
//! The crate is `no_std` and needs only `alloc`. IO, parallel execution and
//! the command-line front end live in the `magblock` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod fockspace;
pub mod linalg;
pub mod liouvillian;
pub mod matrix;
pub mod observables;
pub mod params;
pub mod resonance;
pub mod steadystate;
pub mod sweep;

pub use error::{Error, Result};
pub use fockspace::HilbertLayout;
pub use liouvillian::LindbladTerm;
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;
pub use params::SystemParams;
pub use steadystate::{SolveMethod, SteadyStateResult};
pub use sweep::{AxisSpec, SweepParameter, SweepRecord, SweepResult};
