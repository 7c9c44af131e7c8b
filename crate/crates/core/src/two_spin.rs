//! A pair of dipolar-coupled spin-J particles separated along z.
//!
//! In the frame rotating at Omega the Hamiltonian, in units of the dipolar
//! strength g_d, is
//!
//!   H_rot/g_d = (beta_z - Omega/g_d)(J_1z + J_2z) + beta_perp (J_1x + J_2x)
//!             + (-2 J_1z J_2z + J_1x J_2x + J_1y J_2y),
//!
//! acting on the product basis |m1, m2>. Ground states, time evolution,
//! reduced density matrices and the entanglement entropy
//! S_A = -Tr(rho_A log_{2J+1} rho_A) live here.

use crate::error::Error;
use crate::spin::SpinJ;
use crate::spin_algebra::{
    basis_state, build_jx, build_jy, build_jz, eig_hermitian, identity, kron, CMatrix,
    Eigensystem, StateVector, DEGENERACY_GAP,
};
use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Dimensionless two-spin parameters; g_d = 1 is the energy unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoSpinConfig {
    pub j: SpinJ,
    /// g_J mu_B B_z / g_d
    pub beta_z: f64,
    /// g_J mu_B B_perp / g_d, >= 0
    pub beta_perp: f64,
    /// Omega / g_d
    pub omega_over_gd: f64,
}

impl TwoSpinConfig {
    pub fn new(j: SpinJ, beta_z: f64, beta_perp: f64, omega_over_gd: f64) -> Self {
        Self {
            j,
            beta_z,
            beta_perp,
            omega_over_gd,
        }
    }

    /// Detuning Delta = beta_z - Omega/g_d.
    pub fn delta(&self) -> f64 {
        self.beta_z - self.omega_over_gd
    }
}

/// Product state |m1, m2> at index (m1+J)(2J+1) + (m2+J).
pub fn product_state(j: SpinJ, n1: usize, n2: usize) -> StateVector {
    basis_state(j.pair_dim(), n1 * j.dim() + n2)
}

/// The initial state of the dynamics sections, |-J, -J>.
pub fn stretched_down_pair(j: SpinJ) -> StateVector {
    product_state(j, 0, 0)
}

/// Normalized symmetric combination (|n1, n2> + |n2, n1>)/sqrt(2), n1 != n2.
pub fn symmetric_pair(j: SpinJ, n1: usize, n2: usize) -> StateVector {
    let mut v: StateVector = Array1::zeros(j.pair_dim());
    let w = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v[n1 * j.dim() + n2] = w;
    v[n2 * j.dim() + n1] = w;
    v
}

/// Rotating-frame two-spin Hamiltonian in g_d units.
pub fn build_hrot(cfg: &TwoSpinConfig) -> CMatrix {
    let j = cfg.j;
    let id = identity(j.dim());
    let jx = build_jx(j);
    let jy = build_jy(j);
    let jz = build_jz(j);
    let detuning = C64::new(cfg.delta(), 0.0);
    let perp = C64::new(cfg.beta_perp, 0.0);

    let zeeman = (kron(&jz, &id) + kron(&id, &jz)).mapv(|c| c * detuning);
    let transverse = (kron(&jx, &id) + kron(&id, &jx)).mapv(|c| c * perp);
    let dipolar = kron(&jz, &jz).mapv(|c| c * (-2.0)) + kron(&jx, &jx) + kron(&jy, &jy);
    zeeman + transverse + dipolar
}

/// Exchange-swap operator |m1, m2> -> |m2, m1>.
pub fn swap_operator(j: SpinJ) -> CMatrix {
    let d = j.dim();
    let mut s: CMatrix = Array2::zeros((d * d, d * d));
    for a in 0..d {
        for b in 0..d {
            s[(a * d + b, b * d + a)] = C64::new(1.0, 0.0);
        }
    }
    s
}

/// Norm of the antisymmetric component of a two-spin state.
pub fn antisymmetric_overlap(state: &StateVector, j: SpinJ) -> f64 {
    let d = j.dim();
    let mut acc = 0.0;
    for a in 0..d {
        for b in 0..d {
            let anti = 0.5 * (state[a * d + b] - state[b * d + a]);
            acc += anti.norm_sqr();
        }
    }
    acc.sqrt()
}

#[derive(Debug, Clone)]
pub struct GroundState {
    pub energy: f64,
    pub state: StateVector,
    /// Gap to the first excited level, in g_d units.
    pub gap: f64,
    /// True when the gap is below the degeneracy threshold; the returned
    /// eigenvector is then an arbitrary member of the ground manifold.
    pub degenerate: bool,
}

/// Ground state of the static (Omega = 0) Hamiltonian.
pub fn ground_state(cfg: &TwoSpinConfig) -> Result<GroundState, Error> {
    if cfg.omega_over_gd != 0.0 {
        return Err(Error::InvalidConfig(
            "ground_state is defined for the static Hamiltonian; set omega_over_gd = 0".into(),
        ));
    }
    let eig = eig_hermitian(&build_hrot(cfg))?;
    let gap = eig.values[1] - eig.values[0];
    Ok(GroundState {
        energy: eig.values[0],
        state: eig.eigenvector(0),
        gap,
        degenerate: gap < DEGENERACY_GAP,
    })
}

/// Reduced density matrix of spin 1 (the first tensor factor).
pub fn reduced_density(state: &StateVector, j: SpinJ) -> CMatrix {
    let d = j.dim();
    let mut rho: CMatrix = Array2::zeros((d, d));
    for i in 0..d {
        for k in 0..d {
            let mut acc = C64::new(0.0, 0.0);
            for b in 0..d {
                acc += state[i * d + b] * state[k * d + b].conj();
            }
            rho[(i, k)] = acc;
        }
    }
    rho
}

/// Entropy eigenvalue floor: weights below this are treated as exact zeros
/// before taking the logarithm.
const ENTROPY_EIGENVALUE_FLOOR: f64 = 1e-14;

fn entropy_from_weights(weights: &[f64], dim: usize) -> f64 {
    let log_base = (dim as f64).ln();
    let mut s = 0.0;
    for &w in weights {
        if w > ENTROPY_EIGENVALUE_FLOOR {
            s -= w * w.ln();
        }
    }
    (s / log_base).clamp(0.0, 1.0)
}

/// Partial trace over spin 2 plus the von Neumann entropy with logarithm
/// base 2J+1, so S_A lands in [0, 1] for every J.
pub fn reduce_and_entropy(state: &StateVector, j: SpinJ) -> Result<(CMatrix, f64), Error> {
    let rho = reduced_density(state, j);
    let eig = eig_hermitian(&rho)?;
    let s = entropy_from_weights(&eig.values, j.dim());
    Ok((rho, s))
}

/// Entanglement entropy of one spin of a pure two-spin state.
pub fn entanglement_entropy(state: &StateVector, j: SpinJ) -> Result<f64, Error> {
    use ndarray_linalg::{EigValshInto, UPLO};
    let rho = reduced_density(state, j);
    let vals = rho
        .eigvalsh_into(UPLO::Lower)
        .map_err(|e| Error::Eig(e.to_string()))?;
    Ok(entropy_from_weights(vals.as_slice().unwrap(), j.dim()))
}

/// Time evolution record over a sample grid.
#[derive(Debug, Clone)]
pub struct TwoSpinDynamics {
    pub times: Vec<f64>,
    /// Rotating-frame states at the sample times.
    pub states: Vec<StateVector>,
    /// Product-basis populations |<m1,m2|psi>|^2 per sample; frame-independent.
    pub populations: Vec<Vec<f64>>,
    /// Entanglement entropy S_A per sample; frame-independent.
    pub entropy: Vec<f64>,
}

impl TwoSpinDynamics {
    /// Population of the product state |m1, m2> over time.
    pub fn population_of(&self, j: SpinJ, n1: usize, n2: usize) -> Vec<f64> {
        let idx = n1 * j.dim() + n2;
        self.populations.iter().map(|p| p[idx]).collect()
    }

    /// |<target|psi(t)>|^2 for an arbitrary (rotating-frame) target state.
    pub fn overlap_population(&self, target: &StateVector) -> Vec<f64> {
        self.states
            .iter()
            .map(|s| crate::spin_algebra::inner(target, s).norm_sqr())
            .collect()
    }
}

/// Spectral evolution of the pair from `init` through every time in `t_grid`.
pub fn evolve_two_spin(
    cfg: &TwoSpinConfig,
    init: &StateVector,
    t_grid: &[f64],
) -> Result<TwoSpinDynamics, Error> {
    let eig = eig_hermitian(&build_hrot(cfg))?;
    evolve_with_eigensystem(cfg.j, &eig, init, t_grid)
}

/// Same as [`evolve_two_spin`] with a pre-computed eigensystem, for scans
/// that reuse one diagonalization across many sample times.
pub fn evolve_with_eigensystem(
    j: SpinJ,
    eig: &Eigensystem,
    init: &StateVector,
    t_grid: &[f64],
) -> Result<TwoSpinDynamics, Error> {
    let dim = j.pair_dim();
    let vdag_init: Array1<C64> = {
        let mut c = Array1::zeros(dim);
        for k in 0..dim {
            let col = eig.vectors.column(k);
            c[k] = col
                .iter()
                .zip(init.iter())
                .map(|(v, s)| v.conj() * s)
                .sum();
        }
        c
    };
    let mut states = Vec::with_capacity(t_grid.len());
    let mut populations = Vec::with_capacity(t_grid.len());
    let mut entropy = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let mut coeffs = vdag_init.clone();
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c *= C64::from_polar(1.0, -eig.values[k] * t);
        }
        let psi = eig.vectors.dot(&coeffs);
        populations.push(psi.iter().map(|c| c.norm_sqr()).collect());
        entropy.push(entanglement_entropy(&psi, j)?);
        states.push(psi);
    }
    Ok(TwoSpinDynamics {
        times: t_grid.to_vec(),
        states,
        populations,
        entropy,
    })
}

/// Ground-state maps over (beta_z, beta_perp): <J_x>/2J, S_A and a
/// degeneracy mask, row-major [beta_z index][beta_perp index].
#[derive(Debug, Clone)]
pub struct PhaseMaps {
    pub beta_z: Vec<f64>,
    pub beta_perp: Vec<f64>,
    pub jx_over_2j: Vec<Vec<f64>>,
    pub entropy: Vec<Vec<f64>>,
    pub degenerate: Vec<Vec<bool>>,
}

/// Computes the ground-state phase maps cell by cell (data-parallel; output
/// ordering is fixed by the input grids, not the schedule).
pub fn gs_phase_maps(
    j: SpinJ,
    beta_z_grid: &[f64],
    beta_perp_grid: &[f64],
) -> Result<PhaseMaps, Error> {
    let id = identity(j.dim());
    let jx = build_jx(j);
    let jx_total = kron(&jx, &id) + kron(&id, &jx);
    let cells: Vec<(f64, f64, bool)> = beta_z_grid
        .par_iter()
        .flat_map(|&bz| {
            let jx_total = &jx_total;
            beta_perp_grid.par_iter().map(move |&bp| {
                let cfg = TwoSpinConfig::new(j, bz, bp, 0.0);
                let gs = ground_state(&cfg)?;
                let jx_val = crate::spin_algebra::expectation(jx_total, &gs.state)
                    / f64::from(j.two_j());
                let s = entanglement_entropy(&gs.state, j)?;
                Ok::<_, Error>((jx_val, s, gs.degenerate))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let np = beta_perp_grid.len();
    let mut jx_over_2j = Vec::with_capacity(beta_z_grid.len());
    let mut entropy = Vec::with_capacity(beta_z_grid.len());
    let mut degenerate = Vec::with_capacity(beta_z_grid.len());
    for (iz, _) in beta_z_grid.iter().enumerate() {
        let row = &cells[iz * np..(iz + 1) * np];
        jx_over_2j.push(row.iter().map(|c| c.0).collect());
        entropy.push(row.iter().map(|c| c.1).collect());
        degenerate.push(row.iter().map(|c| c.2).collect());
    }
    Ok(PhaseMaps {
        beta_z: beta_z_grid.to_vec(),
        beta_perp: beta_perp_grid.to_vec(),
        jx_over_2j,
        entropy,
        degenerate,
    })
}
