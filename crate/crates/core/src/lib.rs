//! Quantum dynamics of large spins in static plus rotating magnetic fields.
//!
//! The library covers, at desk scale, the exact dynamics of a single spin-J
//! driven by a static longitudinal field and a transverse field rotating at
//! frequency Ω, and of a pair of such spins coupled by magnetic dipole-dipole
//! interactions. Closed-form results (populations, survival probabilities,
//! dipole-moment trajectories, resonance conditions, kink dynamics, averaged
//! dipolar potentials) are paired throughout with an independent numerical
//! propagator so that every formula can be validated against direct time
//! evolution.
//!
//! Units: ħ = 1, all frequencies in a common angular-frequency unit for the
//! single-spin modules; the two-spin modules use the dipolar strength g_d as
//! the energy unit with dimensionless fields β_z, β_⊥ and rotation Ω/g_d.

pub mod error;
pub mod halfspin;
pub mod kink;
pub mod numeric;
pub mod output;
pub mod resonance;
pub mod selftest;
pub mod single_analytic;
pub mod spin;
pub mod spin_algebra;
pub mod sweeps;
pub mod two_spin;
pub mod weak_ddi;

pub use error::Error;
pub use halfspin::{FieldConfig, HalfSpinAmplitudes};
pub use spin::SpinJ;
pub use spin_algebra::{CMatrix, StateVector};
pub use two_spin::TwoSpinConfig;

/// Crate result alias.
pub type Result<T> = std::result::Result<T, Error>;
