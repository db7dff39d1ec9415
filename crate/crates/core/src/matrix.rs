//! Dense complex square matrices sized for few-qubit work (dim <= 128),
//! plus a cyclic-Jacobi eigensolver for Hermitian matrices.
//!
//! Storage is row-major `Vec<Complex64>`. No sparsity: at these dimensions
//! dense arithmetic is both simpler and faster.

use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum number of cyclic Jacobi sweeps before giving up.
const MAX_JACOBI_SWEEPS: usize = 64;

/// Convergence target for the off-diagonal Frobenius norm, relative to the
/// Frobenius norm of the input. Sits well below every residual tolerance
/// promised by consumers of the spectrum.
const JACOBI_REL_TOL: f64 = 1e-13;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex64::ONE;
        }
        m
    }

    /// Build from a closure over (row, column).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    /// Build from row-major data; `data.len()` must be a perfect square.
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim, "row-major data must be dim x dim");
        Self { dim, entries: data }
    }

    /// Diagonal matrix from real entries.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let dim = diag.len();
        let mut m = Self::zeros(dim);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * dim + i] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Outer product |u><v|.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        assert_eq!(u.len(), v.len());
        Self::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matmul");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.entries[i * n + k];
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += aik * rhs.entries[k * n + j];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.dim, v.len(), "dimension mismatch in matvec");
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[i * n + j] * v[j]).sum())
            .collect()
    }

    /// Kronecker (tensor) product; `self` is the more significant factor.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (na, nb) = (self.dim, rhs.dim);
        let n = na * nb;
        let mut out = Self::zeros(n);
        for ia in 0..na {
            for ja in 0..na {
                let a = self.entries[ia * na + ja];
                if a == Complex64::ZERO {
                    continue;
                }
                for ib in 0..nb {
                    for jb in 0..nb {
                        out.entries[(ia * nb + ib) * n + (ja * nb + jb)] =
                            a * rhs.entries[ib * nb + jb];
                    }
                }
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest |A_ij - conj(A_ji)| over all entries.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.entries[i * n + j] - self.entries[j * n + i].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Returns eigenvalues in ascending order and a unitary matrix whose
    /// columns are the matching eigenvectors. Hermiticity is the caller's
    /// responsibility; use [`crate::thermal::diagonalize`] for a checked entry
    /// point. Each eigenvector is phase-fixed so its largest-modulus component
    /// is real and positive, which makes the output deterministic outside of
    /// degenerate subspaces.
    pub fn hermitian_eigen(&self) -> Result<(Vec<f64>, ComplexMatrix)> {
        let n = self.dim;
        if n == 0 {
            return Ok((Vec::new(), ComplexMatrix::zeros(0)));
        }
        // Real symmetric inputs (every Hamiltonian and density matrix in this
        // crate with By = 0) take a pure-real path: ~4x fewer flops, and it is
        // the hot loop of the sweep engine.
        let (mut vals, mut vecs) = if self.entries.iter().all(|z| z.im == 0.0) {
            jacobi_real(self)?
        } else {
            jacobi_complex(self)?
        };
        sort_and_fix_phases(&mut vals, &mut vecs);
        Ok((vals, vecs))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Jacobi rotation parameters annihilating the (p, q) element of the
/// Hermitian 2x2 block [[app, |apq|], [|apq|, aqq]].
fn rotation(app: f64, aqq: f64, abs_apq: f64) -> (f64, f64) {
    let tau = (aqq - app) / (2.0 * abs_apq);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c)
}

fn jacobi_real(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = m.dim;
    let mut a: Vec<f64> = m.entries.iter().map(|z| z.re).collect();
    let mut v = vec![0.0f64; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let fro = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if fro == 0.0 {
        return Ok((vec![0.0; n], ComplexMatrix::identity(n)));
    }
    let target = JACOBI_REL_TOL * fro;
    // Elements this small contribute < target to the off-norm even if every
    // off-diagonal slot held one; rotating on them is wasted work.
    let skip = target / (n as f64 * 10.0);

    for _sweep in 0..MAX_JACOBI_SWEEPS {
        let mut off2 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off2 += 2.0 * a[p * n + q] * a[p * n + q];
            }
        }
        if off2.sqrt() <= target {
            let vals = (0..n).map(|i| a[i * n + i]).collect();
            let vecs = ComplexMatrix::from_fn(n, |i, j| Complex64::new(v[i * n + j], 0.0));
            return Ok((vals, vecs));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let abs_apq = apq.abs();
                if abs_apq <= skip {
                    continue;
                }
                let ph = apq.signum();
                let (c, s) = rotation(a[p * n + p], a[q * n + q], abs_apq);
                let sp = s * ph;
                // A <- A J  (columns p, q)
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - sp * akq;
                    a[k * n + q] = sp * akp + c * akq;
                }
                // A <- J' A  (rows p, q)
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - sp * aqk;
                    a[q * n + k] = sp * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                // V <- V J
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - sp * vkq;
                    v[k * n + q] = sp * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::NumericalFailure(format!(
        "Jacobi eigensolver did not converge in {MAX_JACOBI_SWEEPS} sweeps (dim {n})"
    )))
}

fn jacobi_complex(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = m.dim;
    let mut a = m.entries.clone();
    let mut v = ComplexMatrix::identity(n).entries;
    let fro = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if fro == 0.0 {
        return Ok((vec![0.0; n], ComplexMatrix::identity(n)));
    }
    let target = JACOBI_REL_TOL * fro;
    let skip = target / (n as f64 * 10.0);

    for _sweep in 0..MAX_JACOBI_SWEEPS {
        let mut off2 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off2 += 2.0 * a[p * n + q].norm_sqr();
            }
        }
        if off2.sqrt() <= target {
            let vals = (0..n).map(|i| a[i * n + i].re).collect();
            return Ok((vals, ComplexMatrix { dim: n, entries: v }));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let abs_apq = apq.norm();
                if abs_apq <= skip {
                    continue;
                }
                let ph = apq / abs_apq;
                let (c, s) = rotation(a[p * n + p].re, a[q * n + q].re, abs_apq);
                let sp = ph * s;
                let sp_conj = sp.conj();
                // A <- A J  (columns p, q)
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c - akq * sp_conj;
                    a[k * n + q] = akp * sp + akq * c;
                }
                // A <- J\u{2020} A  (rows p, q)
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c - aqk * sp;
                    a[q * n + k] = apk * sp_conj + aqk * c;
                }
                a[p * n + q] = Complex64::ZERO;
                a[q * n + p] = Complex64::ZERO;
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
                // V <- V J
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * c - vkq * sp_conj;
                    v[k * n + q] = vkp * sp + vkq * c;
                }
            }
        }
    }
    Err(Error::NumericalFailure(format!(
        "Jacobi eigensolver did not converge in {MAX_JACOBI_SWEEPS} sweeps (dim {n})"
    )))
}

fn sort_and_fix_phases(vals: &mut Vec<f64>, vecs: &mut ComplexMatrix) {
    let n = vals.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).expect("finite eigenvalues"));
    let sorted_vals: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
    let mut sorted = ComplexMatrix::zeros(n);
    for (new_j, &old_j) in order.iter().enumerate() {
        // Phase-fix: rotate the column so its largest-modulus entry is real
        // and positive.
        let mut best_k = 0;
        let mut best = -1.0;
        for k in 0..n {
            let mag = vecs[(k, old_j)].norm();
            if mag > best {
                best = mag;
                best_k = k;
            }
        }
        let pivot = vecs[(best_k, old_j)];
        let factor = if best > 0.0 {
            pivot.conj() / best
        } else {
            Complex64::ONE
        };
        for k in 0..n {
            sorted.set(k, new_j, vecs[(k, old_j)] * factor);
        }
    }
    *vals = sorted_vals;
    *vecs = sorted;
}
