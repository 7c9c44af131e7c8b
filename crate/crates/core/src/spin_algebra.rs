//! Angular-momentum operators, rotations and product-basis machinery for
//! arbitrary spin J.
//!
//! Basis convention: ascending m_j, index 0 <-> m_j = -J, matching the
//! sublevel labeling n = m_j + J. Two-spin product states |m1, m2> live at
//! index (m1+J)*(2J+1) + (m2+J).

use crate::error::Error;
use crate::spin::SpinJ;
use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64 as C64;

/// Dense complex operator over the m_j (product) basis.
pub type CMatrix = Array2<C64>;
/// Pure-state amplitudes over the m_j (product) basis.
pub type StateVector = Array1<C64>;

/// Hermiticity tolerance accepted by [`eig_hermitian`].
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Eigenvalue gap below which a cluster is treated as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-9;

pub fn identity(dim: usize) -> CMatrix {
    Array2::from_diag_elem(dim, C64::new(1.0, 0.0))
}

/// Basis state |index> of the given dimension.
pub fn basis_state(dim: usize, index: usize) -> StateVector {
    let mut v = Array1::zeros(dim);
    v[index] = C64::new(1.0, 0.0);
    v
}

pub fn state_norm(state: &StateVector) -> f64 {
    state.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

pub fn inner(a: &StateVector, b: &StateVector) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Real expectation value <state|op|state> of a Hermitian operator.
pub fn expectation(op: &CMatrix, state: &StateVector) -> f64 {
    inner(state, &op.dot(state)).re
}

/// Ladder element sqrt(J(J+1) - m(m+1)), the <m+1|J+|m> matrix element.
fn ladder(j: f64, m: f64) -> f64 {
    (j * (j + 1.0) - m * (m + 1.0)).sqrt()
}

/// J_z: diagonal with entries m_j = -J .. +J ascending.
pub fn build_jz(j: SpinJ) -> CMatrix {
    let dim = j.dim();
    let mut out = Array2::zeros((dim, dim));
    for n in 0..dim {
        out[(n, n)] = C64::new(j.m(n), 0.0);
    }
    out
}

/// J_x: real symmetric tridiagonal with off-diagonal sqrt(J(J+1)-m(m+1))/2.
pub fn build_jx(j: SpinJ) -> CMatrix {
    let dim = j.dim();
    let mut out = Array2::zeros((dim, dim));
    for n in 0..dim - 1 {
        let half = 0.5 * ladder(j.j(), j.m(n));
        out[(n + 1, n)] = C64::new(half, 0.0);
        out[(n, n + 1)] = C64::new(half, 0.0);
    }
    out
}

/// J_y: anti-symmetric imaginary tridiagonal, (J+ - J-)/(2i).
pub fn build_jy(j: SpinJ) -> CMatrix {
    let dim = j.dim();
    let mut out = Array2::zeros((dim, dim));
    for n in 0..dim - 1 {
        let half = 0.5 * ladder(j.j(), j.m(n));
        out[(n + 1, n)] = C64::new(0.0, -half);
        out[(n, n + 1)] = C64::new(0.0, half);
    }
    out
}

/// Kronecker product with the first factor on the slow index:
/// (a ⊗ b)[(i1*d2+i2),(k1*d2+k2)] = a[i1,k1] b[i2,k2].
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    ndarray::linalg::kron(a, b)
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Eigenvectors as columns, same order as `values`.
    pub vectors: CMatrix,
}

impl Eigensystem {
    pub fn eigenvector(&self, k: usize) -> StateVector {
        self.vectors.column(k).to_owned()
    }

    /// exp(-i H t) |state> reconstructed from the spectrum.
    pub fn propagate(&self, state: &StateVector, t: f64) -> StateVector {
        let dim = self.values.len();
        let mut coeffs = Array1::zeros(dim);
        for k in 0..dim {
            let col = self.vectors.column(k);
            let overlap: C64 = col.iter().zip(state.iter()).map(|(v, s)| v.conj() * s).sum();
            coeffs[k] = overlap * C64::from_polar(1.0, -self.values[k] * t);
        }
        self.vectors.dot(&coeffs)
    }
}

/// Largest |H[i,j] - conj(H[j,i])| over all entries.
pub fn max_asymmetry(h: &CMatrix) -> f64 {
    let n = h.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for k in i..n {
            worst = worst.max((h[(i, k)] - h[(k, i)].conj()).norm());
        }
    }
    worst
}

/// Diagonalizes a Hermitian matrix. Eigenvalues come back ascending;
/// each eigenvector's phase is fixed so its largest-magnitude component is
/// real positive, which keeps golden outputs deterministic even inside
/// degenerate clusters. Rejects non-Hermitian input.
pub fn eig_hermitian(h: &CMatrix) -> Result<Eigensystem, Error> {
    if h.nrows() != h.ncols() {
        return Err(Error::Eig(format!(
            "matrix is {}x{}, expected square",
            h.nrows(),
            h.ncols()
        )));
    }
    let asym = max_asymmetry(h);
    if asym > HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            max_asymmetry: asym,
            tolerance: HERMITICITY_TOL,
        });
    }
    let (values, raw) = h
        .eigh(UPLO::Lower)
        .map_err(|e| Error::Eig(e.to_string()))?;
    // LAPACK sees the row-major buffer as the transposed (= conjugated)
    // matrix, so the returned columns diagonalize conj(H); undo that.
    let mut vectors = raw.mapv(|c| c.conj());
    for mut col in vectors.columns_mut() {
        let mut best = 0usize;
        let mut best_mag = 0.0f64;
        for (i, c) in col.iter().enumerate() {
            let mag = c.norm();
            if mag > best_mag + 1e-15 {
                best_mag = mag;
                best = i;
            }
        }
        if best_mag > 0.0 {
            let phase = col[best] / best_mag;
            let fix = phase.conj();
            col.mapv_inplace(|c| c * fix);
        }
    }
    Ok(Eigensystem {
        values: values.to_vec(),
        vectors,
    })
}

/// exp(-i angle J_y) |state>, computed through the spectrum of J_y so the
/// rotation is unitary to round-off.
pub fn rotate_about_y(state: &StateVector, angle: f64, j: SpinJ) -> StateVector {
    let eig = eig_hermitian(&build_jy(j)).expect("J_y is Hermitian by construction");
    eig.propagate(state, angle)
}
