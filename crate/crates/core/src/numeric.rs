//! Independent numerical time evolution for a single spin-J.
//!
//! Two routes: a spectral propagator built on the time-independent
//! rotating-frame Hamiltonian H' = (omega_z - Omega) J_z + omega_perp J_x,
//! and a fixed-step RK4 integrator that also handles the time-dependent lab
//! Hamiltonian H(t) = omega_z J_z + omega_perp (cos(Omega t) J_x +
//! sin(Omega t) J_y). Everything analytic in the crate is validated against
//! this module.

use crate::error::Error;
use crate::halfspin::FieldConfig;
use crate::spin::SpinJ;
use crate::spin_algebra::{build_jx, build_jy, build_jz, eig_hermitian, CMatrix, StateVector};
use num_complex::Complex64 as C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Rotating,
    Lab,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Hermitian eigendecomposition of H'; unitary to round-off. Rotating
    /// frame only, where the Hamiltonian is time-independent.
    Spectral,
    /// Fixed-step fourth-order Runge-Kutta; exists to validate the frame
    /// transformation independently of the spectral route.
    Rk4,
}

/// How to evolve: frame, method, and the RK4 step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorPlan {
    pub frame: Frame,
    pub method: Method,
    /// RK4 step; ignored by the spectral method.
    pub dt: Option<f64>,
}

impl PropagatorPlan {
    pub fn spectral() -> Self {
        Self {
            frame: Frame::Rotating,
            method: Method::Spectral,
            dt: None,
        }
    }

    pub fn rk4(frame: Frame, dt: f64) -> Self {
        Self {
            frame,
            method: Method::Rk4,
            dt: Some(dt),
        }
    }
}

/// Largest RK4 step the plan accepts: 2 pi / (100 max(omega', Omega, omega_z, omega_perp)).
pub fn max_rk4_dt(f: &FieldConfig) -> f64 {
    let fastest = f
        .omega_prime()
        .max(f.omega_rot.abs())
        .max(f.omega_z.abs())
        .max(f.omega_perp.abs());
    if fastest == 0.0 {
        f64::INFINITY
    } else {
        2.0 * std::f64::consts::PI / (100.0 * fastest)
    }
}

/// Rotating-frame Hamiltonian H' = (omega_z - Omega) J_z + omega_perp J_x.
pub fn rotating_hamiltonian(j: SpinJ, f: &FieldConfig) -> CMatrix {
    let detuning = C64::new(f.omega_z - f.omega_rot, 0.0);
    let perp = C64::new(f.omega_perp, 0.0);
    build_jz(j).mapv(|c| c * detuning) + build_jx(j).mapv(|c| c * perp)
}

/// Lab-frame Hamiltonian at time t:
/// omega_z J_z + omega_perp (cos(Omega t) J_x + sin(Omega t) J_y).
pub fn lab_hamiltonian(j: SpinJ, f: &FieldConfig, t: f64) -> CMatrix {
    let (s, c) = (f.omega_rot * t).sin_cos();
    build_jz(j).mapv(|x| x * f.omega_z)
        + build_jx(j).mapv(|x| x * (f.omega_perp * c))
        + build_jy(j).mapv(|x| x * (f.omega_perp * s))
}

/// Evolves `init` for time t under the plan. The state is interpreted in the
/// plan's frame (lab and rotating frames coincide at t = 0).
pub fn evolve(
    j: SpinJ,
    f: &FieldConfig,
    init: &StateVector,
    plan: &PropagatorPlan,
    t: f64,
) -> Result<StateVector, Error> {
    match (plan.frame, plan.method) {
        (Frame::Lab, Method::Spectral) => Err(Error::SpectralInLabFrame),
        (Frame::Rotating, Method::Spectral) => {
            let eig = eig_hermitian(&rotating_hamiltonian(j, f))?;
            Ok(eig.propagate(init, t))
        }
        (frame, Method::Rk4) => {
            let dt = plan.dt.ok_or_else(|| {
                Error::InvalidConfig("RK4 plan needs an explicit dt".into())
            })?;
            let max_dt = max_rk4_dt(f);
            if dt > max_dt {
                return Err(Error::StepTooLarge { dt, max_dt });
            }
            if t == 0.0 {
                return Ok(init.clone());
            }
            let steps = (t / dt).ceil().max(1.0) as usize;
            let h = t / steps as f64;
            match frame {
                Frame::Rotating => {
                    let ham = rotating_hamiltonian(j, f);
                    let deriv = |_t: f64, psi: &StateVector| {
                        ham.dot(psi).mapv(|c| c * C64::new(0.0, -1.0))
                    };
                    Ok(rk4_run(init, h, steps, deriv))
                }
                Frame::Lab => {
                    let jz = build_jz(j);
                    let jx = build_jx(j);
                    let jy = build_jy(j);
                    let deriv = |time: f64, psi: &StateVector| {
                        let (s, c) = (f.omega_rot * time).sin_cos();
                        let hpsi = jz.dot(psi).mapv(|x| x * f.omega_z)
                            + jx.dot(psi).mapv(|x| x * (f.omega_perp * c))
                            + jy.dot(psi).mapv(|x| x * (f.omega_perp * s));
                        hpsi.mapv(|x| x * C64::new(0.0, -1.0))
                    };
                    Ok(rk4_run(init, h, steps, deriv))
                }
            }
        }
    }
}

fn rk4_run<F>(init: &StateVector, h: f64, steps: usize, deriv: F) -> StateVector
where
    F: Fn(f64, &StateVector) -> StateVector,
{
    let mut psi = init.clone();
    let mut t = 0.0;
    for _ in 0..steps {
        let k1 = deriv(t, &psi);
        let k2 = deriv(t + h / 2.0, &(&psi + &k1.mapv(|c| c * (h / 2.0))));
        let k3 = deriv(t + h / 2.0, &(&psi + &k2.mapv(|c| c * (h / 2.0))));
        let k4 = deriv(t + h, &(&psi + &k3.mapv(|c| c * h)));
        psi = &psi
            + &(k1 + k2.mapv(|c| c * 2.0) + k3.mapv(|c| c * 2.0) + k4).mapv(|c| c * (h / 6.0));
        t += h;
    }
    psi
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameDirection {
    /// |Psi> = e^{-i Omega t J_z} |Psi'>: multiply c_m by e^{-i Omega t m}.
    ToLab,
    /// The inverse map.
    ToRotating,
}

/// Diagonal frame change; populations |c_m|^2 are untouched.
pub fn frame_transform(
    state: &StateVector,
    j: SpinJ,
    omega_rot: f64,
    t: f64,
    direction: FrameDirection,
) -> StateVector {
    let sign = match direction {
        FrameDirection::ToLab => -1.0,
        FrameDirection::ToRotating => 1.0,
    };
    let mut out = state.clone();
    for (n, c) in out.iter_mut().enumerate() {
        *c *= C64::from_polar(1.0, sign * omega_rot * t * j.m(n));
    }
    out
}

/// Populations |c_n|^2 of a state.
pub fn populations(state: &StateVector) -> Vec<f64> {
    state.iter().map(|c| c.norm_sqr()).collect()
}
