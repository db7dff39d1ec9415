//! Reduction of an N-qubit state to a chosen qubit pair and the Wootters
//! concurrence / tangle of the resulting two-qubit state.
//!
//! The concurrence of rho is computed from the square roots of the
//! eigenvalues of R = rho * rho~, where rho~ is the spin-flipped matrix
//! (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y) and conjugation is taken
//! entrywise in the standard basis {|00>, |01>, |10>, |11>}.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::spin_algebra::sigma_yy;

/// Density-matrix eigenvalues below this are a sign of an invalid input
/// state rather than rounding noise.
const R_EIGENVALUE_FAILURE: f64 = -1e-8;

/// Negative eigenvalues above the failure threshold are clamped to zero so
/// the concurrence is deterministic on zero-entanglement boundaries.
const PSD_CLAMP: f64 = -1e-10;

/// Density-matrix eigenvalues whose magnitude is below this are treated as
/// exact zeros before taking matrix square roots. Without the clamp, noise
/// of order 1e-17 on an exactly-zero weight turns into sqrt(1e-17) ~ 3e-9
/// in sqrt(rho) and poisons the small lambdas.
const RANK_CLAMP: f64 = 1e-14;

/// A qubit pair on a ring: explicit sites plus their ring separation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairSelector {
    pub site_i: usize,
    pub site_j: usize,
    /// Ring distance between the sites (1 = nearest neighbors).
    pub separation: usize,
}

impl PairSelector {
    pub fn new(site_i: usize, site_j: usize, n_qubits: usize) -> Result<Self> {
        if site_i == site_j {
            return Err(Error::domain("pair sites must be distinct"));
        }
        if site_i >= n_qubits || site_j >= n_qubits {
            return Err(Error::domain(format!(
                "pair ({site_i}, {site_j}) out of range for {n_qubits} qubits"
            )));
        }
        let d = site_i.abs_diff(site_j);
        Ok(Self {
            site_i,
            site_j,
            separation: d.min(n_qubits - d),
        })
    }

    /// The canonical pair (0, a) at ring separation `a`.
    pub fn from_separation(separation: usize, n_qubits: usize) -> Result<Self> {
        if separation == 0 || separation >= n_qubits {
            return Err(Error::domain(format!(
                "pair separation must be in 1..{n_qubits}, got {separation}"
            )));
        }
        Self::new(0, separation, n_qubits)
    }
}

/// Validated 4x4 density matrix of a qubit pair in the standard basis.
#[derive(Debug, Clone)]
pub struct TwoQubitState {
    rho: ComplexMatrix,
}

impl TwoQubitState {
    /// Checks dimension, Hermiticity, unit trace and positive
    /// semidefiniteness (within numerical tolerances).
    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::domain(format!(
                "two-qubit state must be 4x4, got {}x{}",
                rho.dim(),
                rho.dim()
            )));
        }
        let dev = rho.hermitian_deviation();
        if dev > 1e-12 * rho.max_abs().max(1.0) {
            return Err(Error::NotHermitian { max_deviation: dev });
        }
        let trace = rho.trace();
        if (trace - Complex64::ONE).norm() > 1e-10 {
            return Err(Error::domain(format!(
                "density matrix trace must be 1, got {trace}"
            )));
        }
        let (vals, _) = rho.hermitian_eigen()?;
        if vals.iter().any(|v| *v < PSD_CLAMP) {
            return Err(Error::domain(format!(
                "density matrix is not positive semidefinite (min eigenvalue {:.3e})",
                vals[0]
            )));
        }
        Ok(Self { rho })
    }

    /// Pure state |psi><psi| from amplitudes (a, b, c, d) over the standard
    /// basis; amplitudes must be normalized within 1e-10.
    pub fn from_pure(amplitudes: &[Complex64; 4]) -> Result<Self> {
        check_normalized(amplitudes)?;
        Ok(Self {
            rho: ComplexMatrix::outer(amplitudes, amplitudes),
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }
}

/// The four sorted lambda values and the concurrence / tangle they yield.
#[derive(Debug, Clone, Serialize)]
pub struct ConcurrenceResult {
    /// Square roots of the eigenvalues of R = rho * rho~, descending.
    pub lambdas: [f64; 4],
    /// max(lambda1 - lambda2 - lambda3 - lambda4, 0)
    pub concurrence: f64,
    /// Squared concurrence.
    pub tangle: f64,
}

/// Reduced density matrix of the pair, with `site_i` as the first tensor
/// factor and `site_j` as the second.
pub fn partial_trace_pair(
    rho_full: &ComplexMatrix,
    n_qubits: usize,
    pair: &PairSelector,
) -> Result<TwoQubitState> {
    let dim = 1usize << n_qubits;
    if rho_full.dim() != dim {
        return Err(Error::domain(format!(
            "density matrix dimension {} does not match {n_qubits} qubits",
            rho_full.dim()
        )));
    }
    if pair.site_i >= n_qubits || pair.site_j >= n_qubits || pair.site_i == pair.site_j {
        return Err(Error::domain("invalid pair for this register"));
    }
    if (rho_full.trace() - Complex64::ONE).norm() > 1e-10 {
        return Err(Error::domain("input density matrix must have trace 1"));
    }

    // Qubit k occupies bit (n-1-k); enumerate the traced-out qubits once.
    let bit_of = |site: usize| n_qubits - 1 - site;
    let kept = [bit_of(pair.site_i), bit_of(pair.site_j)];
    let rest: Vec<usize> = (0..n_qubits)
        .map(bit_of)
        .filter(|b| !kept.contains(b))
        .collect();

    let assemble = |pair_bits: usize, rest_bits: usize| -> usize {
        let mut idx = 0usize;
        if pair_bits & 0b10 != 0 {
            idx |= 1 << kept[0];
        }
        if pair_bits & 0b01 != 0 {
            idx |= 1 << kept[1];
        }
        for (pos, bit) in rest.iter().enumerate() {
            if rest_bits >> pos & 1 != 0 {
                idx |= 1 << bit;
            }
        }
        idx
    };

    let mut reduced = ComplexMatrix::zeros(4);
    for row in 0..4 {
        for col in 0..4 {
            let mut acc = Complex64::ZERO;
            for rest_bits in 0..(1usize << rest.len()) {
                acc += rho_full[(assemble(row, rest_bits), assemble(col, rest_bits))];
            }
            reduced.set(row, col, acc);
        }
    }
    TwoQubitState::new(reduced)
}

/// Spin-flipped matrix rho~ = (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y).
pub fn spin_flip(state: &TwoQubitState) -> ComplexMatrix {
    let syy = sigma_yy();
    &(&syy * &state.matrix().conj()) * &syy
}

/// Wootters concurrence of a two-qubit density matrix.
///
/// The lambdas are the square roots of the eigenvalues of the non-Hermitian
/// product R = rho * rho~, which equal the singular values of
/// A = sqrt(rho~) * sqrt(rho): A'A = sqrt(rho) rho~ sqrt(rho) is similar to R
/// wherever rho is invertible and shares its nonzero spectrum in general.
/// The singular values come from the Hermitian embedding [[0, A'], [A, 0]],
/// whose eigenvalues are (+/-) sigma_i: this keeps everything inside the
/// Hermitian solver and, unlike taking sqrt of eigenvalues of A'A, does not
/// blow eigenvalue rounding noise up through a square root near zero.
pub fn concurrence(state: &TwoQubitState) -> Result<ConcurrenceResult> {
    let rho = state.matrix();
    let (vals, vecs) = rho.hermitian_eigen()?;
    if let Some(bad) = vals.iter().find(|v| **v < R_EIGENVALUE_FAILURE) {
        return Err(Error::NumericalFailure(format!(
            "density-matrix eigenvalue {bad:.3e} is too negative; not a valid state"
        )));
    }
    let sqrt_diag: Vec<f64> = vals
        .iter()
        .map(|v| if *v < RANK_CLAMP { 0.0 } else { v.sqrt() })
        .collect();
    let sqrt_rho = &(&vecs * &ComplexMatrix::from_real_diag(&sqrt_diag)) * &vecs.dagger();
    // sqrt(rho~) = (sigma_y x sigma_y) conj(sqrt(rho)) (sigma_y x sigma_y).
    let syy = sigma_yy();
    let sqrt_flip = &(&syy * &sqrt_rho.conj()) * &syy;

    let a = &sqrt_flip * &sqrt_rho;
    let mut embedding = ComplexMatrix::zeros(8);
    for i in 0..4 {
        for j in 0..4 {
            embedding.set(4 + i, j, a[(i, j)]);
            embedding.set(j, 4 + i, a[(i, j)].conj());
        }
    }
    let (sigma, _) = embedding.hermitian_eigen()?;
    let lambdas = [
        sigma[7].max(0.0),
        sigma[6].max(0.0),
        sigma[5].max(0.0),
        sigma[4].max(0.0),
    ];
    let concurrence = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0);
    Ok(ConcurrenceResult {
        lambdas,
        concurrence,
        tangle: concurrence * concurrence,
    })
}

/// Concurrence of a pure two-qubit state (a, b, c, d): C = 2 |ad - bc|.
pub fn pure_concurrence(amplitudes: &[Complex64; 4]) -> Result<f64> {
    check_normalized(amplitudes)?;
    let [a, b, c, d] = amplitudes;
    Ok(2.0 * (a * d - b * c).norm())
}

/// Concurrence of a pure two-qubit state from its Schmidt coefficients,
/// C = 2 c0 c1, with c_i^2 the eigenvalues of the single-qubit reduced
/// density matrix. Assumes a normalized state.
pub fn schmidt_concurrence(amplitudes: &[Complex64; 4]) -> f64 {
    // rho_A entries by tracing out the second qubit.
    let [a, b, c, d] = amplitudes;
    let r00 = a.norm_sqr() + b.norm_sqr();
    let r11 = c.norm_sqr() + d.norm_sqr();
    let r01 = a * c.conj() + b * d.conj();
    // Closed-form 2x2 Hermitian eigenvalues.
    let mean = 0.5 * (r00 + r11);
    let radius = (0.25 * (r00 - r11) * (r00 - r11) + r01.norm_sqr()).sqrt();
    let p0 = (mean + radius).max(0.0);
    let p1 = (mean - radius).max(0.0);
    2.0 * p0.sqrt() * p1.sqrt()
}

fn check_normalized(amplitudes: &[Complex64; 4]) -> Result<()> {
    let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(Error::domain(format!(
            "state must be normalized, got |psi|^2 = {norm_sq}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::RingConfig;
    use crate::thermal::{diagonalize, gibbs_state};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bell_phi_plus() -> [Complex64; 4] {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        [c(s, 0.), c(0., 0.), c(0., 0.), c(s, 0.)]
    }

    fn bell_psi_minus() -> [Complex64; 4] {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        [c(0., 0.), c(s, 0.), c(-s, 0.), c(0., 0.)]
    }

    #[test]
    fn pair_selector_ring_distance() {
        let p = PairSelector::new(0, 4, 5).unwrap();
        assert_eq!(p.separation, 1);
        let q = PairSelector::new(1, 3, 5).unwrap();
        assert_eq!(q.separation, 2);
        assert!(PairSelector::new(2, 2, 5).is_err());
        assert!(PairSelector::new(0, 5, 5).is_err());
    }

    #[test]
    fn partial_trace_of_two_qubits_is_identity_operation() {
        let rho = TwoQubitState::from_pure(&bell_phi_plus()).unwrap();
        let pair = PairSelector::new(0, 1, 2).unwrap();
        let out = partial_trace_pair(rho.matrix(), 2, &pair).unwrap();
        assert!((out.matrix() - rho.matrix()).max_abs() < 1e-14);
    }

    #[test]
    fn partial_trace_product_state() {
        // |000><000| reduced over (0, 2) is |00><00|.
        let mut rho = ComplexMatrix::zeros(8);
        rho.set(0, 0, c(1.0, 0.0));
        let pair = PairSelector::new(0, 2, 3).unwrap();
        let out = partial_trace_pair(&rho, 3, &pair).unwrap();
        let mut want = ComplexMatrix::zeros(4);
        want.set(0, 0, c(1.0, 0.0));
        assert!((out.matrix() - &want).max_abs() < 1e-14);
    }

    #[test]
    fn partial_trace_ghz_pair() {
        // GHZ_3 reduced to any pair is (|00><00| + |11><11|)/2.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut ghz = vec![Complex64::ZERO; 8];
        ghz[0] = c(s, 0.);
        ghz[7] = c(s, 0.);
        let rho = ComplexMatrix::outer(&ghz, &ghz);
        let pair = PairSelector::new(0, 1, 3).unwrap();
        let out = partial_trace_pair(&rho, 3, &pair).unwrap();
        let mut want = ComplexMatrix::zeros(4);
        want.set(0, 0, c(0.5, 0.));
        want.set(3, 3, c(0.5, 0.));
        assert!((out.matrix() - &want).max_abs() < 1e-14);
    }

    #[test]
    fn partial_trace_orders_sites_as_requested() {
        // |01><01| on qubits (0,1): reading the pair as (1,0) must give |10><10|.
        let mut rho = ComplexMatrix::zeros(4);
        rho.set(1, 1, c(1.0, 0.0));
        let swapped = PairSelector::new(1, 0, 2).unwrap();
        let out = partial_trace_pair(&rho, 2, &swapped).unwrap();
        assert!((out.matrix()[(2, 2)] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn spin_flip_examples() {
        // Maximally mixed state is invariant.
        let mixed = TwoQubitState::new(ComplexMatrix::identity(4).scale(0.25)).unwrap();
        assert!((&spin_flip(&mixed) - mixed.matrix()).max_abs() < 1e-14);

        // |Psi-><Psi-| is invariant: oracle by direct 4x4 conjugation with the
        // hand-written antidiagonal sigma_y(x)sigma_y.
        let psi = TwoQubitState::from_pure(&bell_psi_minus()).unwrap();
        let syy = ComplexMatrix::from_fn(4, |i, j| match (i, j) {
            (0, 3) | (3, 0) => c(-1., 0.),
            (1, 2) | (2, 1) => c(1., 0.),
            _ => c(0., 0.),
        });
        let oracle = &(&syy * &psi.matrix().conj()) * &syy;
        assert!((&spin_flip(&psi) - &oracle).max_abs() < 1e-14);
        assert!((&spin_flip(&psi) - psi.matrix()).max_abs() < 1e-14);

        // |00><00| flips to |11><11|.
        let zero = TwoQubitState::from_pure(&[c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        let flipped = spin_flip(&zero);
        assert!((flipped[(3, 3)] - c(1., 0.)).norm() < 1e-14);
        assert!(flipped[(0, 0)].norm() < 1e-14);
    }

    #[test]
    fn concurrence_of_bell_state_is_one() {
        let psi = TwoQubitState::from_pure(&bell_psi_minus()).unwrap();
        let res = concurrence(&psi).unwrap();
        assert!((res.concurrence - 1.0).abs() < 1e-10);
        assert!((res.tangle - 1.0).abs() < 1e-10);
    }

    #[test]
    fn concurrence_of_maximally_mixed_is_zero() {
        let mixed = TwoQubitState::new(ComplexMatrix::identity(4).scale(0.25)).unwrap();
        let res = concurrence(&mixed).unwrap();
        for l in res.lambdas {
            assert!((l - 0.25).abs() < 1e-10);
        }
        assert_eq!(res.concurrence, 0.0);
    }

    #[test]
    fn concurrence_of_bell_mixture() {
        // rho = w |Phi+><Phi+| + (1-w) |Psi-><Psi-|, w = 0.7.
        //
        // Oracle: in the Bell basis R = rho * rho~ is diagonal. Verify that
        // numerically with independent matrix arithmetic, then read off
        // lambda = {w, 1-w, 0, 0} and C = 2w - 1 = 0.4.
        let w = 0.7;
        let phi = bell_phi_plus();
        let psi = bell_psi_minus();
        let rho = &ComplexMatrix::outer(&phi, &phi).scale(w)
            + &ComplexMatrix::outer(&psi, &psi).scale(1.0 - w);
        let syy = ComplexMatrix::from_fn(4, |i, j| match (i, j) {
            (0, 3) | (3, 0) => c(-1., 0.),
            (1, 2) | (2, 1) => c(1., 0.),
            _ => c(0., 0.),
        });
        let r = &rho * &(&(&syy * &rho.conj()) * &syy);
        // R |Phi+> = w^2 |Phi+>, R |Psi-> = (1-w)^2 |Psi->.
        let r_phi = r.matvec(&phi);
        let r_psi = r.matvec(&psi);
        for k in 0..4 {
            assert!((r_phi[k] - phi[k] * (w * w)).norm() < 1e-12);
            assert!((r_psi[k] - psi[k] * ((1.0 - w) * (1.0 - w))).norm() < 1e-12);
        }
        let expected_c = 0.4;

        let state = TwoQubitState::new(rho).unwrap();
        let res = concurrence(&state).unwrap();
        assert!((res.concurrence - expected_c).abs() < 1e-10);
        assert!((res.lambdas[0] - w).abs() < 1e-10);
        assert!((res.lambdas[1] - (1.0 - w)).abs() < 1e-10);
    }

    #[test]
    fn pure_concurrence_examples() {
        let product = [c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)];
        assert_eq!(pure_concurrence(&product).unwrap(), 0.0);
        assert!((pure_concurrence(&bell_phi_plus()).unwrap() - 1.0).abs() < 1e-12);

        // Ground state of the two-qubit orthogonal-field ring at J = B = 1
        // has C = 1/sqrt(2), i.e. tangle 1/2.
        let h = RingConfig::new(2, 1.0, 1.0, 0.0).unwrap().hamiltonian();
        let spec = diagonalize(&h).unwrap();
        let v0 = spec.eigenvector(0);
        let amps = [v0[0], v0[1], v0[2], v0[3]];
        let cval = pure_concurrence(&amps).unwrap();
        assert!((cval - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-10);
        assert!((cval * cval - 0.5).abs() < 1e-10);
    }

    #[test]
    fn pure_concurrence_rejects_unnormalized() {
        let bad = [c(1., 0.), c(1., 0.), c(0., 0.), c(0., 0.)];
        assert!(pure_concurrence(&bad).is_err());
    }

    #[test]
    fn schmidt_route_agrees_with_determinant_route() {
        let product = [c(0.6, 0.), c(0.8, 0.), c(0., 0.), c(0., 0.)];
        assert!(schmidt_concurrence(&product).abs() < 1e-12);
        assert!((schmidt_concurrence(&bell_phi_plus()) - 1.0).abs() < 1e-12);

        // Deterministic pseudo-random states: both Lemma-style formulas agree.
        let mut seed = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for _ in 0..200 {
            let mut amps = [c(0., 0.); 4];
            for a in &mut amps {
                *a = c(next(), next());
            }
            let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for a in &mut amps {
                *a /= norm;
            }
            let direct = pure_concurrence(&amps).unwrap();
            let schmidt = schmidt_concurrence(&amps);
            assert!((direct - schmidt).abs() < 1e-10);
        }
    }

    #[test]
    fn concurrence_invariant_under_pair_swap() {
        let h = RingConfig::new(2, 1.0, 0.8, 0.3).unwrap().hamiltonian();
        let spec = diagonalize(&h).unwrap();
        let rho = gibbs_state(&spec, 0.4).unwrap().density;
        let a = partial_trace_pair(&rho, 2, &PairSelector::new(0, 1, 2).unwrap()).unwrap();
        let b = partial_trace_pair(&rho, 2, &PairSelector::new(1, 0, 2).unwrap()).unwrap();
        let ca = concurrence(&a).unwrap().concurrence;
        let cb = concurrence(&b).unwrap().concurrence;
        assert!((ca - cb).abs() < 1e-12);
    }

    #[test]
    fn concurrence_invariant_under_local_unitaries() {
        // Random single-qubit unitaries applied to each qubit leave C fixed.
        let mut seed = 0xda3e39cb94b95bdbu64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut random_su2 = || loop {
            let mut a = c(next(), next());
            let mut b = c(next(), next());
            let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
            if n > 0.1 {
                a /= n;
                b /= n;
                return ComplexMatrix::from_vec(2, vec![a, -b.conj(), b, a.conj()]);
            }
        };

        let h = RingConfig::new(2, 1.0, 0.6, 0.2).unwrap().hamiltonian();
        let spec = diagonalize(&h).unwrap();
        let rho = gibbs_state(&spec, 0.15).unwrap().density;
        let state = TwoQubitState::new(rho.clone()).unwrap();
        let reference = concurrence(&state).unwrap().concurrence;
        for _ in 0..25 {
            let u = random_su2().kron(&random_su2());
            let rotated = &(&u * &rho) * &u.dagger();
            let rotated = TwoQubitState::new(rotated).unwrap();
            let cval = concurrence(&rotated).unwrap().concurrence;
            assert!((cval - reference).abs() < 1e-9);
        }
    }

    #[test]
    fn thermal_ring_concurrence_is_translation_invariant() {
        let n = 5;
        let h = RingConfig::new(n, 1.0, 0.9, 0.3).unwrap().hamiltonian();
        let spec = diagonalize(&h).unwrap();
        let rho = gibbs_state(&spec, 0.3).unwrap().density;
        let reference = {
            let pair = PairSelector::new(0, 1, n).unwrap();
            concurrence(&partial_trace_pair(&rho, n, &pair).unwrap())
                .unwrap()
                .concurrence
        };
        for i in 1..n {
            let pair = PairSelector::new(i, (i + 1) % n, n).unwrap();
            let cval = concurrence(&partial_trace_pair(&rho, n, &pair).unwrap())
                .unwrap()
                .concurrence;
            assert!((cval - reference).abs() < 1e-10, "site {i}");
        }
    }
}
