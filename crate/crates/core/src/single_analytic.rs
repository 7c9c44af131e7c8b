//! Closed-form single-spin results: sublevel populations, survival
//! probabilities and their extrema, the projection onto the instantaneous
//! ground state, dipole-moment trajectories and the sublevel spread.
//!
//! All of these follow from the spin-1/2 gas picture: the spin-J state stays
//! a symmetric product of 2J identical spin-1/2 states, each precessing at
//! omega' about the rotating-frame effective field (tilt theta_B). The
//! binomial structure P_n = C(2J,n) p^n q^(2J-n) and the (J-n)-scaled dipole
//! precession all reduce to one single-particle calculation.

use crate::error::Error;
use crate::halfspin::{binomial, FieldConfig};
use crate::spin::SpinJ;

/// Initial state selector for the single-spin results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialSpec {
    /// Zeeman sublevel |m_j = -J + n> along z.
    ZSublevel(usize),
    /// Sublevel n along a quantization axis tilted by theta0 from z
    /// (axis in the xz-plane).
    TiltedSublevel { theta0: f64, n: usize },
    /// Ground state of the t = 0 Hamiltonian; identical to
    /// TiltedSublevel(phi0, 0).
    GroundOfInitialH,
}

impl InitialSpec {
    /// Resolves to the tilt angle and sublevel index.
    pub fn angle_and_level(&self, f: &FieldConfig) -> (f64, usize) {
        match *self {
            InitialSpec::ZSublevel(n) => (0.0, n),
            InitialSpec::TiltedSublevel { theta0, n } => (theta0, n),
            InitialSpec::GroundOfInitialH => (f.phi0(), 0),
        }
    }
}

/// Single-particle flip probability p(t) and its complement q(t) for the
/// lowest stretched state along a theta0-tilted axis; p + q = 1 identically.
pub fn flip_probabilities(theta0: f64, f: &FieldConfig, t: f64) -> (f64, f64) {
    let wp = f.omega_prime();
    let theta_b = f.theta_b();
    let half = theta0 / 2.0;
    let (s_half, c_half) = (half.sin(), half.cos());
    if wp == 0.0 {
        return (s_half * s_half, c_half * c_half);
    }
    let osc = (wp * t / 2.0).sin().powi(2);
    let stay = 1.0 - osc;
    let p = s_half * s_half * stay + osc * (theta_b - half).sin().powi(2);
    let q = c_half * c_half * stay + osc * (theta_b - half).cos().powi(2);
    (p, q)
}

/// Populations P_n(t) = C(2J,n) p^n q^(2J-n) for the initial state |m_j = -J>.
pub fn populations_stretched(j: SpinJ, f: &FieldConfig, t: f64) -> Vec<f64> {
    populations_tilted(j, 0.0, f, t)
}

/// Populations for the lowest stretched state along a theta0-tilted axis.
pub fn populations_tilted(j: SpinJ, theta0: f64, f: &FieldConfig, t: f64) -> Vec<f64> {
    let (p, q) = flip_probabilities(theta0, f, t);
    let two_j = j.two_j();
    (0..=two_j)
        .map(|n| binomial(two_j, n) as f64 * pow_count(p, n) * pow_count(q, two_j - n))
        .collect()
}

/// x^k with the 0^0 = 1 convention, exact for k = 0.
fn pow_count(x: f64, k: u32) -> f64 {
    if k == 0 {
        1.0
    } else {
        x.powi(k as i32)
    }
}

/// Transverse-to-total frequency ratio omega_perp^2/omega'^2, with the
/// omega' = 0 point resolved to 0 (no transverse drive).
fn transverse_ratio(f: &FieldConfig) -> f64 {
    let wp = f.omega_prime();
    if wp == 0.0 {
        0.0
    } else {
        (f.omega_perp / wp).powi(2)
    }
}

/// Minimum over time of the survival probability of |m_j = -J>:
/// S_min = (1 - omega_perp^2 / ((omega_z-Omega)^2 + omega_perp^2))^2J.
pub fn survival_min_stretched(j: SpinJ, f: &FieldConfig) -> f64 {
    (1.0 - transverse_ratio(f)).powi(j.two_j() as i32)
}

/// Maximum over time of the top-sublevel population from |m_j = -J>:
/// a Lorentzian-like peak raised to the power 2J.
pub fn p2j_max(j: SpinJ, f: &FieldConfig) -> f64 {
    transverse_ratio(f).powi(j.two_j() as i32)
}

/// Maximum over time of P_n from |m_j = -J>. The binomial kernel
/// p^n q^(2J-n) peaks at p = n/2J; when the drive cannot reach that value
/// the maximum sits at the turning point p = omega_perp^2/omega'^2.
pub fn pn_max(j: SpinJ, n: usize, f: &FieldConfig) -> Result<f64, Error> {
    let two_j = j.two_j();
    if n > two_j as usize {
        return Err(Error::InvalidConfig(format!(
            "sublevel index {n} exceeds 2J = {two_j}"
        )));
    }
    let n = n as u32;
    let r = transverse_ratio(f);
    let c = binomial(two_j, n) as f64;
    let frac = n as f64 / two_j as f64;
    if r <= frac {
        Ok(c * pow_count(r, n) * pow_count(1.0 - r, two_j - n))
    } else {
        Ok(c * pow_count(frac, n) * pow_count(1.0 - frac, two_j - n))
    }
}

/// Lab-frame survival probability of the lowest stretched state along a
/// theta0-tilted axis (azimuth 0), for any drive.
pub fn survival_general(j: SpinJ, theta0: f64, f: &FieldConfig, t: f64) -> f64 {
    let wp = f.omega_prime();
    let theta_b = f.theta_b();
    let omega_t = f.omega_rot * t;
    let (sin_wpt, cos_wpt) = (wp * t).sin_cos();
    let sin2_wpt_half = 0.5 * (1.0 - cos_wpt);
    let cos2_wpt_half = 0.5 * (1.0 + cos_wpt);
    let sin2_om_half = 0.5 * (1.0 - omega_t.cos());
    let cos2_om_half = 0.5 * (1.0 + omega_t.cos());
    let bracket = 1.0
        + 0.5 * (theta0.cos() * (theta0 - theta_b).cos() - theta_b.cos())
            * sin_wpt
            * omega_t.sin()
        - theta0.sin().powi(2) * cos2_wpt_half * sin2_om_half
        - sin2_wpt_half
            * (theta_b.sin().powi(2) * sin2_om_half
                + (theta0 - theta_b).sin().powi(2) * cos2_om_half);
    bracket.clamp(0.0, 1.0).powi(j.two_j() as i32)
}

/// Rotating-frame survival probability, [1 - sin^2(theta0 - theta_B)
/// sin^2(omega' t / 2)]^2J.
pub fn survival_rotating_frame(j: SpinJ, theta0: f64, f: &FieldConfig, t: f64) -> f64 {
    let wp = f.omega_prime();
    let osc = (wp * t / 2.0).sin().powi(2);
    let bracket = 1.0 - (theta0 - f.theta_b()).sin().powi(2) * osc;
    bracket.clamp(0.0, 1.0).powi(j.two_j() as i32)
}

/// Projection of the evolved ground-of-initial-Hamiltonian state onto the
/// instantaneous ground state; equals the rotating-frame survival at
/// theta0 = phi0.
pub fn pgs(j: SpinJ, f: &FieldConfig, t: f64) -> f64 {
    survival_rotating_frame(j, f.phi0(), f, t)
}

/// Minimum over time of [`pgs`].
pub fn pgs_min(j: SpinJ, f: &FieldConfig) -> f64 {
    let bracket = 1.0 - (f.phi0() - f.theta_b()).sin().powi(2);
    bracket.clamp(0.0, 1.0).powi(j.two_j() as i32)
}

/// Population of |m_j = +J> when starting from the ground state of the
/// initial Hamiltonian: [sin^2(phi0/2) + (Omega omega sin^2 phi0 / omega'^2)
/// sin^2(omega' t / 2)]^2J.
pub fn p2j_ground_init(j: SpinJ, f: &FieldConfig, t: f64) -> f64 {
    let (p, _) = flip_probabilities(f.phi0(), f, t);
    p.clamp(0.0, 1.0).powi(j.two_j() as i32)
}

/// Maximum over time of [`p2j_ground_init`]; reaches 1 when Omega = omega.
pub fn p2j_ground_init_max(j: SpinJ, f: &FieldConfig) -> f64 {
    let phi0 = f.phi0();
    let theta_b = f.theta_b();
    let a = (phi0 / 2.0).sin().powi(2);
    let b = (theta_b - phi0 / 2.0).sin().powi(2);
    a.max(b).clamp(0.0, 1.0).powi(j.two_j() as i32)
}

/// One point of the lab-frame dipole trajectory; mu is in units of
/// g_J mu_B and keeps the constant magnitude |J - n|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleTrajectoryPoint {
    pub t: f64,
    pub mu: [f64; 3],
}

/// Spherical unit vectors of the instantaneous effective field direction:
/// e(t), theta_hat(t) = de/d(theta_B), phi_hat(t) = de/d(Omega t) normalized.
fn field_frame(theta_b: f64, omega_t: f64) -> ([f64; 3], [f64; 3], [f64; 3]) {
    let (s_b, c_b) = (theta_b.sin(), theta_b.cos());
    let (s_o, c_o) = (omega_t.sin(), omega_t.cos());
    (
        [s_b * c_o, s_b * s_o, c_b],
        [c_b * c_o, c_b * s_o, -s_b],
        [-s_o, c_o, 0.0],
    )
}

/// Expectation value <J>(t) for the sublevel n along a theta0-tilted axis:
/// -(J-n) [cos(theta0-theta_B) e(t) + sin(theta0-theta_B)(cos(omega' t)
/// theta_hat + sin(omega' t) phi_hat)].
pub fn j_expectation(j: SpinJ, theta0: f64, n: usize, f: &FieldConfig, t: f64) -> [f64; 3] {
    let theta_b = f.theta_b();
    let delta = theta0 - theta_b;
    let (e, th, ph) = field_frame(theta_b, f.omega_rot * t);
    let (s_wpt, c_wpt) = (f.omega_prime() * t).sin_cos();
    let scale = -(j.j() - n as f64);
    let mut out = [0.0; 3];
    for a in 0..3 {
        out[a] = scale
            * (delta.cos() * e[a] + delta.sin() * (c_wpt * th[a] + s_wpt * ph[a]));
    }
    out
}

/// Lab-frame dipole moment trajectory, mu(t) = -g_J mu_B <J>(t) in units of
/// g_J mu_B, sampled over `t_grid`. The magnitude g_J mu_B |J - n| is a
/// constant of the motion (pure precession).
pub fn dipole_trajectory(
    j: SpinJ,
    init: &InitialSpec,
    f: &FieldConfig,
    t_grid: &[f64],
) -> Result<Vec<DipoleTrajectoryPoint>, Error> {
    let (theta0, n) = init.angle_and_level(f);
    if n > j.two_j() as usize {
        return Err(Error::InvalidConfig(format!(
            "sublevel index {n} exceeds 2J = {}",
            j.two_j()
        )));
    }
    Ok(t_grid
        .iter()
        .map(|&t| {
            let jvec = j_expectation(j, theta0, n, f, t);
            DipoleTrajectoryPoint {
                t,
                mu: [-jvec[0], -jvec[1], -jvec[2]],
            }
        })
        .collect())
}

/// Single-particle <sigma_z> for the tilted down state; the building block
/// of the sublevel spread.
fn sigma_z_tilted(theta0: f64, f: &FieldConfig, t: f64) -> f64 {
    let theta_b = f.theta_b();
    let delta = theta0 - theta_b;
    -delta.cos() * theta_b.cos() + delta.sin() * theta_b.sin() * (f.omega_prime() * t).cos()
}

/// Spread Delta m_j = sqrt((J/2)(1 - <sigma_z>^2)) of the ground-init state
/// over the z-basis sublevels; starts at sqrt(J/2) sin(phi0) = sqrt(J/2) B_perp/B.
pub fn spread_mj(j: SpinJ, f: &FieldConfig, t: f64) -> f64 {
    let sz = sigma_z_tilted(f.phi0(), f, t);
    (j.j() / 2.0 * (1.0 - sz * sz)).max(0.0).sqrt()
}

/// Coefficients of the Hamiltonian rewritten in the basis quantized along
/// the initial field direction: H = coeff_z' J_z' + coeff_x' J_x' with
/// coeff_z' = (omega_z - Omega) cos(phi0) + omega_z sin^2(phi0)/cos(phi0)
/// and coeff_x' = Omega sin(phi0). coeff_z' vanishes exactly at
/// Omega/omega_z = (B/B_z)^2.
pub fn rotated_frame_hamiltonian_coeffs(f: &FieldConfig) -> Result<(f64, f64), Error> {
    if f.omega_z == 0.0 {
        return Err(Error::ZeroBz);
    }
    let phi0 = f.phi0();
    let coeff_z = (f.omega_z - f.omega_rot) * phi0.cos()
        + f.omega_z * phi0.sin().powi(2) / phi0.cos();
    let coeff_x = f.omega_rot * phi0.sin();
    Ok((coeff_z, coeff_x))
}
