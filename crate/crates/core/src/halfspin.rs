//! Decomposition of a spin-J into 2J non-interacting spin-1/2 particles.
//!
//! In the frame co-rotating with the transverse field the single-particle
//! Hamiltonian is (omega_perp/2) sigma_x + ((omega_z - Omega)/2) sigma_z, so
//! each spin-1/2 precesses at omega' = sqrt((omega_z-Omega)^2 + omega_perp^2)
//! about an axis tilted by theta_B from z. Symmetric products of 2J identical
//! spin-1/2 states reproduce the full spin-J dynamics, which is what makes
//! the closed forms in [`crate::single_analytic`] possible.

use crate::spin::SpinJ;
use crate::spin_algebra::StateVector;
use ndarray::Array1;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// Amplitudes of a single spin-1/2, |psi> = c_up |up> + c_down |down>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSpinAmplitudes {
    pub up: C64,
    pub down: C64,
}

impl HalfSpinAmplitudes {
    /// Normalizes the pair so |up|^2 + |down|^2 = 1.
    pub fn new(up: C64, down: C64) -> Self {
        let norm = (up.norm_sqr() + down.norm_sqr()).sqrt();
        Self {
            up: up / norm,
            down: down / norm,
        }
    }

    pub fn down() -> Self {
        Self {
            up: C64::new(0.0, 0.0),
            down: C64::new(1.0, 0.0),
        }
    }

    pub fn up() -> Self {
        Self {
            up: C64::new(1.0, 0.0),
            down: C64::new(0.0, 0.0),
        }
    }

    /// Spin-1/2 state along an axis tilted by theta0 from z (in the xz-plane):
    /// the time-zero "down-prime" state -sin(theta0/2)|up> + cos(theta0/2)|down>.
    pub fn tilted_down(theta0: f64) -> Self {
        Self {
            up: C64::new(-(theta0 / 2.0).sin(), 0.0),
            down: C64::new((theta0 / 2.0).cos(), 0.0),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.up.norm_sqr() + self.down.norm_sqr()
    }
}

/// Single-spin drive parameters in a common angular-frequency unit (hbar = 1):
/// omega_z = g_J mu_B B_z, omega_perp = g_J mu_B B_perp, and the rotation
/// frequency Omega of the transverse field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub omega_z: f64,
    pub omega_perp: f64,
    pub omega_rot: f64,
}

impl FieldConfig {
    pub fn new(omega_z: f64, omega_perp: f64, omega_rot: f64) -> Self {
        Self {
            omega_z,
            omega_perp,
            omega_rot,
        }
    }

    /// Generalized Rabi frequency omega' = sqrt((omega_z - Omega)^2 + omega_perp^2).
    pub fn omega_prime(&self) -> f64 {
        (self.omega_z - self.omega_rot).hypot(self.omega_perp)
    }

    /// Total field frequency omega = g_J mu_B B = sqrt(omega_z^2 + omega_perp^2).
    pub fn omega_total(&self) -> f64 {
        self.omega_z.hypot(self.omega_perp)
    }

    /// Tilt phi0 = atan(B_perp/B_z) of the t = 0 field from the z-axis.
    pub fn phi0(&self) -> f64 {
        self.omega_perp.atan2(self.omega_z)
    }

    /// Polar angle theta_B of the rotating-frame effective field, taken as
    /// atan2(omega_perp, omega_z - Omega) so Omega > omega_z lands in the
    /// correct quadrant.
    pub fn theta_b(&self) -> f64 {
        self.omega_perp.atan2(self.omega_z - self.omega_rot)
    }
}

/// Rotating-frame evolution of one spin-1/2 over time t. The omega' = 0
/// point (resonant with no transverse field) is the identity, the removable
/// limit of the closed form.
pub fn propagate_halfspin(init: HalfSpinAmplitudes, f: &FieldConfig, t: f64) -> HalfSpinAmplitudes {
    let wp = f.omega_prime();
    if wp == 0.0 {
        return init;
    }
    let (s, c) = (wp * t / 2.0).sin_cos();
    let cos_b = (f.omega_z - f.omega_rot) / wp;
    let sin_b = f.omega_perp / wp;
    let i = C64::new(0.0, 1.0);
    HalfSpinAmplitudes {
        up: init.up * c - i * s * (cos_b * init.up + sin_b * init.down),
        down: init.down * c + i * s * (cos_b * init.down - sin_b * init.up),
    }
}

/// Back to the lab frame: the up component picks up e^{-i Omega t / 2}, the
/// down component e^{+i Omega t / 2}.
pub fn to_lab_frame(amp: HalfSpinAmplitudes, omega_rot: f64, t: f64) -> HalfSpinAmplitudes {
    let phase = C64::from_polar(1.0, omega_rot * t / 2.0);
    HalfSpinAmplitudes {
        up: amp.up * phase.conj(),
        down: amp.down * phase,
    }
}

/// Binomial coefficient in exact integer arithmetic (n <= 32 here).
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u64 = 1;
    for i in 0..k as u64 {
        out = out * (n as u64 - i) / (i + 1);
    }
    out
}

/// Symmetric product of 2J copies of one spin-1/2 state, projected onto the
/// spin-J sublevels: c_{-J+n} = sqrt(C(2J,n)) c_up^n c_down^(2J-n).
pub fn assemble_spin_j_state(single: HalfSpinAmplitudes, j: SpinJ) -> StateVector {
    let two_j = j.two_j();
    let mut out: StateVector = Array1::zeros(j.dim());
    // Build the powers incrementally; 2J <= 32 keeps this well conditioned.
    let mut up_pow = vec![C64::new(1.0, 0.0); two_j as usize + 1];
    let mut down_pow = vec![C64::new(1.0, 0.0); two_j as usize + 1];
    for k in 1..=two_j as usize {
        up_pow[k] = up_pow[k - 1] * single.up;
        down_pow[k] = down_pow[k - 1] * single.down;
    }
    for n in 0..=two_j {
        let coeff = (binomial(two_j, n) as f64).sqrt();
        out[n as usize] = up_pow[n as usize] * down_pow[(two_j - n) as usize] * coeff;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::SpinJ;
    use ndarray::{array, Array2};
    use proptest::prelude::*;

    /// Independent 2x2 matrix exponential by scaling and squaring of the
    /// Taylor series; the oracle for the closed-form propagator.
    fn expm2(h: &Array2<C64>, t: f64) -> Array2<C64> {
        let a = h.mapv(|c| c * C64::new(0.0, -t));
        let norm: f64 = a.iter().map(|c| c.norm()).sum();
        let squarings = (norm.log2().ceil().max(0.0) as u32) + 6;
        let scaled = a.mapv(|c| c / 2f64.powi(squarings as i32));
        let mut term = Array2::from_diag_elem(2, C64::new(1.0, 0.0));
        let mut sum = term.clone();
        for k in 1..24 {
            term = term.dot(&scaled).mapv(|c| c / k as f64);
            sum += &term;
        }
        let mut out = sum;
        for _ in 0..squarings {
            out = out.dot(&out);
        }
        out
    }

    fn apply2(u: &Array2<C64>, amp: HalfSpinAmplitudes) -> HalfSpinAmplitudes {
        // basis order (up, down) to match the sigma matrices below
        HalfSpinAmplitudes {
            up: u[(0, 0)] * amp.up + u[(0, 1)] * amp.down,
            down: u[(1, 0)] * amp.up + u[(1, 1)] * amp.down,
        }
    }

    fn rotating_h(f: &FieldConfig) -> Array2<C64> {
        let z = (f.omega_z - f.omega_rot) / 2.0;
        let x = f.omega_perp / 2.0;
        array![
            [C64::new(z, 0.0), C64::new(x, 0.0)],
            [C64::new(x, 0.0), C64::new(-z, 0.0)],
        ]
    }

    #[test]
    fn zero_time_is_identity() {
        let f = FieldConfig::new(1.0, 0.4, 0.7);
        let init = HalfSpinAmplitudes::new(C64::new(0.6, 0.1), C64::new(-0.3, 0.7));
        let out = propagate_halfspin(init, &f, 0.0);
        assert!((out.up - init.up).norm() < 1e-15);
        assert!((out.down - init.down).norm() < 1e-15);
    }

    #[test]
    fn resonant_pi_pulse_flips_down_to_up() {
        // Omega = omega_z: Rabi oscillation at omega_perp; t = pi/omega_perp
        // takes |down> to -i|up>.
        let f = FieldConfig::new(1.0, 0.25, 1.0);
        let t = std::f64::consts::PI / f.omega_perp;
        let out = propagate_halfspin(HalfSpinAmplitudes::down(), &f, t);
        assert!(out.down.norm() < 1e-12);
        assert!((out.up - C64::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn generic_field_matches_matrix_exponential() {
        let cases = [
            FieldConfig::new(1.0, 0.3, 0.0),
            FieldConfig::new(1.0, 0.8, 0.5),
            FieldConfig::new(0.0, 1.3, 2.1),
            FieldConfig::new(2.0, 0.0, 0.4),
            FieldConfig::new(1.0, 0.5, 1.0),
        ];
        let init = HalfSpinAmplitudes::new(C64::new(0.36, -0.2), C64::new(0.8, 0.44));
        for f in cases {
            for t in [0.17, 1.0, 5.3, 22.0] {
                let direct = propagate_halfspin(init, &f, t);
                let oracle = apply2(&expm2(&rotating_h(&f), t), init);
                assert!(
                    (direct.up - oracle.up).norm() < 1e-12
                        && (direct.down - oracle.down).norm() < 1e-12,
                    "mismatch at {f:?}, t={t}"
                );
                assert!((direct.norm_sqr() - 1.0).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn degenerate_omega_prime_returns_input() {
        let f = FieldConfig::new(1.0, 0.0, 1.0);
        assert_eq!(f.omega_prime(), 0.0);
        let init = HalfSpinAmplitudes::new(C64::new(0.6, 0.0), C64::new(0.8, 0.0));
        assert_eq!(propagate_halfspin(init, &f, 3.7), init);
    }

    #[test]
    fn lab_frame_transform_is_pure_phase() {
        let amp = HalfSpinAmplitudes::new(C64::new(0.3, 0.5), C64::new(-0.2, 0.78));
        let t0 = to_lab_frame(amp, 1.3, 0.0);
        assert_eq!(t0, amp);
        let still = to_lab_frame(amp, 0.0, 9.4);
        assert_eq!(still, amp);
        let moved = to_lab_frame(amp, 1.3, 2.2);
        assert!((moved.up.norm_sqr() - amp.up.norm_sqr()).abs() < 1e-15);
        assert!((moved.down.norm_sqr() - amp.down.norm_sqr()).abs() < 1e-15);
        let expect = amp.up * C64::from_polar(1.0, -1.3 * 2.2 / 2.0);
        assert!((moved.up - expect).norm() < 1e-15);
    }

    #[test]
    fn binomials_are_exact() {
        assert_eq!(binomial(2, 1), 2);
        assert_eq!(binomial(32, 16), 601_080_390);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!((0..=16u32).map(|k| binomial(16, k)).sum::<u64>(), 1 << 16);
    }

    #[test]
    fn assembles_stretched_and_balanced_states() {
        let j = SpinJ::from_two_j(2).unwrap(); // J = 1
        let down = assemble_spin_j_state(HalfSpinAmplitudes::down(), j);
        assert!((down[0] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(down[1].norm() < 1e-15 && down[2].norm() < 1e-15);

        let balanced = HalfSpinAmplitudes::new(C64::new(1.0, 0.0), C64::new(1.0, 0.0));
        let state = assemble_spin_j_state(balanced, j);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert!((state[0].re - 0.5).abs() < 1e-15);
        assert!((state[1].re - inv_sqrt2).abs() < 1e-15);
        assert!((state[2].re - 0.5).abs() < 1e-15);
    }

    proptest! {
        /// Populations of the assembled state sum to one (binomial theorem).
        #[test]
        fn assembled_state_is_normalized(
            re_up in -1.0f64..1.0, im_up in -1.0f64..1.0,
            re_dn in -1.0f64..1.0, im_dn in -1.0f64..1.0,
            two_j in 1u32..=20,
        ) {
            prop_assume!(re_up.abs() + im_up.abs() + re_dn.abs() + im_dn.abs() > 1e-3);
            let single = HalfSpinAmplitudes::new(
                C64::new(re_up, im_up),
                C64::new(re_dn, im_dn),
            );
            let j = SpinJ::from_two_j(two_j).unwrap();
            let state = assemble_spin_j_state(single, j);
            let total: f64 = state.iter().map(|c| c.norm_sqr()).sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
        }

        /// The rotating frame is time-independent, so propagation composes:
        /// U(t1 + t2) = U(t2) U(t1).
        #[test]
        fn propagation_composes(
            t1 in 0.0f64..10.0,
            t2 in 0.0f64..10.0,
            omega_z in 0.1f64..2.0,
            omega_perp in 0.0f64..2.0,
            omega_rot in 0.0f64..3.0,
        ) {
            let f = FieldConfig::new(omega_z, omega_perp, omega_rot);
            let init = HalfSpinAmplitudes::new(C64::new(0.3, -0.1), C64::new(0.9, 0.27));
            let direct = propagate_halfspin(init, &f, t1 + t2);
            let stepped = propagate_halfspin(propagate_halfspin(init, &f, t1), &f, t2);
            prop_assert!((direct.up - stepped.up).norm() < 1e-12);
            prop_assert!((direct.down - stepped.down).norm() < 1e-12);
        }
    }
}
