//! Hermitian eigendecomposition, Boltzmann weights and Gibbs states,
//! including the degenerate zero-temperature limit.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Relative threshold deciding which levels belong to the ground eigenspace
/// when forming the T = 0 projector.
const GROUND_DEGENERACY_REL_TOL: f64 = 1e-9;

/// Ascending eigenvalues with an orthonormal set of eigenvectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    /// Unitary matrix whose column i is the eigenvector of eigenvalue i.
    eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub(crate) fn new(eigenvalues: Vec<f64>, eigenvectors: ComplexMatrix) -> Self {
        Self {
            eigenvalues,
            eigenvectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    /// Copy of the i-th eigenvector.
    pub fn eigenvector(&self, i: usize) -> Vec<Complex64> {
        self.eigenvectors.column(i)
    }

    /// Energy gap between the two lowest levels.
    pub fn gap(&self) -> f64 {
        self.eigenvalues[1] - self.eigenvalues[0]
    }

    /// Number of levels within the degeneracy threshold of the ground state.
    pub fn ground_degeneracy(&self) -> usize {
        let e0 = self.eigenvalues[0];
        let tol = GROUND_DEGENERACY_REL_TOL * e0.abs().max(1.0);
        self.eigenvalues
            .iter()
            .take_while(|e| *e - e0 < tol)
            .count()
    }

    /// Replace eigenvectors `range` by new linear combinations (columns of
    /// `rotation` in the old sub-basis). Used to pick a deterministic basis
    /// inside degenerate subspaces.
    pub(crate) fn rotate_subspace(&mut self, start: usize, rotation: &ComplexMatrix) {
        let k = rotation.dim();
        let n = self.dim();
        let old: Vec<Vec<Complex64>> = (0..k)
            .map(|j| self.eigenvectors.column(start + j))
            .collect();
        for j in 0..k {
            for row in 0..n {
                let mut acc = Complex64::ZERO;
                for (a, old_col) in old.iter().enumerate() {
                    acc += old_col[row] * rotation[(a, j)];
                }
                self.eigenvectors.set(row, start + j, acc);
            }
        }
    }
}

/// Full eigendecomposition of a Hermitian operator.
///
/// Rejects non-Hermitian input; degenerate subspaces come back with an
/// arbitrary orthonormal basis.
pub fn diagonalize(h: &ComplexMatrix) -> Result<Spectrum> {
    let tol = 1e-12 * h.max_abs().max(1.0);
    let deviation = h.hermitian_deviation();
    if deviation > tol {
        return Err(Error::NotHermitian {
            max_deviation: deviation,
        });
    }
    let (vals, vecs) = h.hermitian_eigen()?;
    Ok(Spectrum::new(vals, vecs))
}

/// Gibbs state rho = e^(-H/T) / Z together with its (shifted) partition sum.
#[derive(Debug, Clone)]
pub struct ThermalState {
    pub density: ComplexMatrix,
    pub temperature: f64,
    /// Partition function of the shifted spectrum, Z' = sum_i e^(-(e_i - e_0)/T);
    /// the physical ln Z is -e_0/T + ln Z'. At T = 0 this is the ground
    /// degeneracy, the T -> 0+ limit of Z'.
    pub partition_z: f64,
    /// The applied shift, i.e. the ground-state energy.
    pub energy_shift: f64,
}

/// Boltzmann weights over a truncated set of lowest levels, normalized to 1.
#[derive(Debug, Clone, Serialize)]
pub struct LevelWeights {
    weights: Vec<f64>,
}

impl LevelWeights {
    /// Explicit weights; must be nonnegative and sum to 1 within 1e-10.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|w| *w < 0.0 || !w.is_finite()) {
            return Err(Error::domain("weights must be nonnegative and finite"));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::domain(format!("weights must sum to 1, got {sum}")));
        }
        Ok(Self { weights })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Thermal density matrix at temperature T >= 0 (k_B = 1).
///
/// Energies are shifted by the ground energy before exponentiation so that
/// T << J cannot overflow; the state itself is invariant under the shift.
/// At exactly T = 0 the state is the uniform mixture over the (possibly
/// degenerate) ground eigenspace, which is also the T -> 0+ limit.
pub fn gibbs_state(spectrum: &Spectrum, temperature: f64) -> Result<ThermalState> {
    if !temperature.is_finite() || temperature < 0.0 {
        return Err(Error::domain(format!(
            "temperature must be >= 0, got {temperature}"
        )));
    }
    let n = spectrum.dim();
    let e0 = spectrum.eigenvalues()[0];
    let mut density = ComplexMatrix::zeros(n);
    let partition_z;
    if temperature == 0.0 {
        let g = spectrum.ground_degeneracy();
        partition_z = g as f64;
        for i in 0..g {
            accumulate_projector(&mut density, spectrum, i, 1.0 / g as f64);
        }
    } else {
        let weights: Vec<f64> = spectrum
            .eigenvalues()
            .iter()
            .map(|e| (-(e - e0) / temperature).exp())
            .collect();
        let z: f64 = weights.iter().sum();
        partition_z = z;
        for (i, w) in weights.iter().enumerate() {
            if *w > 0.0 {
                accumulate_projector(&mut density, spectrum, i, w / z);
            }
        }
    }
    Ok(ThermalState {
        density,
        temperature,
        partition_z,
        energy_shift: e0,
    })
}

/// density += weight * |v_i><v_i|
fn accumulate_projector(density: &mut ComplexMatrix, spectrum: &Spectrum, i: usize, weight: f64) {
    let n = spectrum.dim();
    let v = spectrum.eigenvector(i);
    for r in 0..n {
        let vr = v[r] * weight;
        for c in 0..n {
            let add = vr * v[c].conj();
            let cur = density[(r, c)];
            density.set(r, c, cur + add);
        }
    }
}

/// Boltzmann weights over the lowest `n_levels` eigenstates, renormalized
/// to sum to 1 (the truncated-level approximation).
pub fn boltzmann_weights(
    spectrum: &Spectrum,
    temperature: f64,
    n_levels: usize,
) -> Result<LevelWeights> {
    if !temperature.is_finite() || temperature <= 0.0 {
        return Err(Error::domain(format!(
            "boltzmann_weights requires T > 0, got {temperature}"
        )));
    }
    if n_levels == 0 || n_levels > spectrum.dim() {
        return Err(Error::domain(format!(
            "n_levels must be in 1..={}, got {n_levels}",
            spectrum.dim()
        )));
    }
    let e0 = spectrum.eigenvalues()[0];
    let raw: Vec<f64> = spectrum.eigenvalues()[..n_levels]
        .iter()
        .map(|e| (-(e - e0) / temperature).exp())
        .collect();
    let z: f64 = raw.iter().sum();
    LevelWeights::new(raw.into_iter().map(|w| w / z).collect())
}
