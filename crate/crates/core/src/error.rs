//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid spin: {0}")]
    InvalidSpin(String),

    #[error("matrix is not Hermitian (max asymmetry {max_asymmetry:.3e} exceeds {tolerance:.1e})")]
    NotHermitian { max_asymmetry: f64, tolerance: f64 },

    #[error("eigendecomposition failed: {0}")]
    Eig(String),

    #[error("RK4 step dt = {dt:.3e} exceeds the allowed maximum {max_dt:.3e}")]
    StepTooLarge { dt: f64, max_dt: f64 },

    #[error("spectral propagation requires the rotating frame (the lab Hamiltonian is time-dependent)")]
    SpectralInLabFrame,

    #[error("B_z = 0 puts the initial field in the xy-plane (phi0 = pi/2); the tilted-frame coefficients diverge")]
    ZeroBz,

    #[error("rotation frequency is commensurate with the precession frequency (Omega/omega' = {ratio}); the time average is not defined there")]
    CommensurateFrequency { ratio: f64 },

    #[error("kink criterion cannot be met: beta_perp^2 = 2*Delta^2 - 1/2 = {radicand:.6e} < 0 (residual {residual:.6e})")]
    KinkCriterionViolated { radicand: f64, residual: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid sweep spec:\n{}", .0.join("\n"))]
    InvalidSweep(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
