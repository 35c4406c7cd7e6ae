//! Two-qubit concurrence. Basis order is `|EE⟩, |EG⟩, |GE⟩, |GG⟩`.

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type DensityMatrix = Matrix4<Complex64>;

/// Eigenvalues of ρ below this (after trace normalization) are roundoff.
const PSD_SLACK: f64 = 1e-12;
/// Eigenvalues of ρ this small are set to zero before taking `√ρ`, so that
/// roundoff in the null space of a pure state does not leak in as `√ε`.
const NULL_EIGENVALUE: f64 = 32.0 * f64::EPSILON;

#[derive(Debug, Clone, PartialEq)]
pub enum TwoQubitState {
    /// Unnormalized coefficients `(c_EE, c_EG, c_GE, c_GG)`.
    Pure([Complex64; 4]),
    /// Hermitian matrix with positive trace, normalized on use.
    Mixed(DensityMatrix),
}

impl TwoQubitState {
    pub fn pure(coeffs: [Complex64; 4]) -> Result<Self> {
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude"));
        }
        if coeffs.iter().all(|c| c.norm_sqr() == 0.0) {
            return Err(Error::UndefinedState);
        }
        Ok(Self::Pure(coeffs))
    }

    /// `amp1 |EE⟩ + amp2 |GG⟩`.
    pub fn ee_gg(amp1: Complex64, amp2: Complex64) -> Result<Self> {
        let zero = Complex64::new(0.0, 0.0);
        Self::pure([amp1, zero, zero, amp2])
    }

    pub fn mixed(rho: DensityMatrix) -> Result<Self> {
        let state = Self::Mixed(rho);
        state.density_matrix()?;
        Ok(state)
    }

    /// Normalized density matrix, validated.
    pub fn density_matrix(&self) -> Result<DensityMatrix> {
        match self {
            TwoQubitState::Pure(c) => {
                let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
                let v: [Complex64; 4] = core::array::from_fn(|i| c[i] / scale);
                let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
                Ok(Matrix4::from_fn(|i, j| v[i] * v[j].conj() / norm2))
            }
            TwoQubitState::Mixed(m) => {
                if m.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                    return Err(Error::InvalidState("non-finite entry"));
                }
                let size = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
                let skew = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
                if size == 0.0 || skew > 1e-10 * size {
                    return Err(Error::InvalidState("matrix is not Hermitian"));
                }
                let trace = m.trace().re;
                if trace.is_nan() || trace <= 0.0 {
                    return Err(Error::InvalidState("trace is not positive"));
                }
                let rho = (m + m.adjoint()).map(|z| z * (0.5 / trace));
                let eig = rho.symmetric_eigen();
                if eig.eigenvalues.iter().any(|&l| l < -PSD_SLACK) {
                    return Err(Error::InvalidState("matrix is not positive semidefinite"));
                }
                Ok(rho)
            }
        }
    }
}

/// Spin-flip `σ_y ⊗ σ_y`.
pub fn spin_flip() -> DensityMatrix {
    let mut y = Matrix4::zeros();
    y[(0, 3)] = Complex64::new(-1.0, 0.0);
    y[(1, 2)] = Complex64::new(1.0, 0.0);
    y[(2, 1)] = Complex64::new(1.0, 0.0);
    y[(3, 0)] = Complex64::new(-1.0, 0.0);
    y
}

fn hermitian_sqrt(rho: &DensityMatrix) -> DensityMatrix {
    let eig = rho.symmetric_eigen();
    let roots = eig.eigenvalues.map(|l| if l > NULL_EIGENVALUE { libm::sqrt(l) } else { 0.0 });
    let v = &eig.eigenvectors;
    let mut out = Matrix4::zeros();
    for k in 0..4 {
        if roots[k] == 0.0 {
            continue;
        }
        let col = v.column(k);
        out += (col * col.adjoint()).map(|z| z * roots[k]);
    }
    out
}

/// Wootters concurrence `max(0, √λ₁ − √λ₂ − √λ₃ − √λ₄)`.
///
/// The `√λ` are the eigenvalues of `R = √(√ρ ρ̃ √ρ)`, obtained here as the
/// singular values of `√ρ (σ_y⊗σ_y) √ρ*`, which keeps zero eigenvalues at
/// roundoff level instead of `√roundoff`.
pub fn wootters_concurrence(state: &TwoQubitState) -> Result<f64> {
    let rho = state.density_matrix()?;
    let root = hermitian_sqrt(&rho);
    let a = root * spin_flip() * root.map(|z| z.conj());
    let mut s: [f64; 4] = a.singular_values().into();
    s.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let c = s[0] - s[1] - s[2] - s[3];
    Ok(c.clamp(0.0, 1.0))
}

/// `2|amp1||amp2| / (|amp1|² + |amp2|²)`: the concurrence of
/// `amp1|EE⟩ + amp2|GG⟩` (or of `amp1|EG⟩ + amp2|GE⟩`).
pub fn concurrence_two_component(amp1: Complex64, amp2: Complex64) -> Result<f64> {
    let (m1, m2) = (amp1.norm(), amp2.norm());
    if !m1.is_finite() || !m2.is_finite() {
        return Err(Error::InvalidState("non-finite amplitude"));
    }
    let (hi, lo) = if m1 >= m2 { (m1, m2) } else { (m2, m1) };
    if hi == 0.0 {
        return Err(Error::UndefinedState);
    }
    let r = lo / hi;
    Ok((2.0 * r / (1.0 + r * r)).clamp(0.0, 1.0))
}

/// Same ratio from mode-summed quantities: `2|fg| / (f2 + g2)`.
pub fn concurrence_from_sums(fg: Complex64, f2: f64, g2: f64) -> Result<f64> {
    let denom = f2 + g2;
    if !(denom.is_finite() && fg.norm().is_finite()) {
        return Err(Error::InvalidState("non-finite mode sum"));
    }
    if f2 < 0.0 || g2 < 0.0 {
        return Err(Error::InvalidState("negative norm"));
    }
    if denom == 0.0 {
        return Err(Error::UndefinedState);
    }
    Ok((2.0 * fg.norm() / denom).clamp(0.0, 1.0))
}
