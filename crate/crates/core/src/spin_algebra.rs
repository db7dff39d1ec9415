//! Pauli matrices and their embeddings into multi-qubit registers.
//!
//! Basis convention used throughout the crate: a basis index of dimension
//! 2^N carries qubit 0 in its most significant bit, so the two-qubit basis
//! reads {|00>, |01>, |10>, |11>} and |0> is spin up.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Largest register this crate is sized for (dense 2^N x 2^N storage).
pub const MAX_QUBITS: usize = 10;

/// The four single-qubit generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PauliAxis {
    I,
    X,
    Y,
    Z,
}

/// The 2x2 Pauli matrix for `axis`.
///
/// Conventions: sigma_z = diag(1, -1) with |0> spin up; sigma_y |0> = i |1>
/// and sigma_y |1> = -i |0>.
pub fn pauli(axis: PauliAxis) -> ComplexMatrix {
    let z = Complex64::ZERO;
    let one = Complex64::ONE;
    let i = Complex64::I;
    let entries = match axis {
        PauliAxis::I => vec![one, z, z, one],
        PauliAxis::X => vec![z, one, one, z],
        PauliAxis::Y => vec![z, -i, i, z],
        PauliAxis::Z => vec![one, z, z, -one],
    };
    ComplexMatrix::from_vec(2, entries)
}

/// The 2^n x 2^n operator acting as `axis` on `site` and as identity on
/// every other qubit. Site 0 is the leftmost (most significant) factor.
pub fn embed(axis: PauliAxis, site: usize, n_qubits: usize) -> Result<ComplexMatrix> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::domain(format!(
            "n_qubits must be in 1..={MAX_QUBITS}, got {n_qubits}"
        )));
    }
    if site >= n_qubits {
        return Err(Error::domain(format!(
            "site {site} out of range for {n_qubits} qubits"
        )));
    }
    let mut op = if site == 0 {
        pauli(axis)
    } else {
        ComplexMatrix::identity(2)
    };
    for k in 1..n_qubits {
        let factor = if k == site {
            pauli(axis)
        } else {
            ComplexMatrix::identity(2)
        };
        op = op.kron(&factor);
    }
    Ok(op)
}

/// Product of the same Pauli embedded on two distinct sites,
/// e.g. `two_site(Z, i, j, n)` = sigma_z^i sigma_z^j.
pub fn two_site(axis: PauliAxis, i: usize, j: usize, n_qubits: usize) -> Result<ComplexMatrix> {
    if i == j {
        return Err(Error::domain(format!("two_site requires i != j, got {i}")));
    }
    Ok(embed(axis, i, n_qubits)?.matmul(&embed(axis, j, n_qubits)?))
}

/// sigma_y (x) sigma_y on two qubits; the spin-flip operator of the
/// concurrence construction.
pub fn sigma_yy() -> ComplexMatrix {
    two_site(PauliAxis::Y, 0, 1, 2).expect("fixed valid arguments")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_z_is_diag_one_minus_one() {
        let z = pauli(PauliAxis::Z);
        assert_eq!(z[(0, 0)], c(1., 0.));
        assert_eq!(z[(1, 1)], c(-1., 0.));
        assert_eq!(z[(0, 1)], c(0., 0.));
    }

    #[test]
    fn pauli_x_flips_spin_up() {
        let x = pauli(PauliAxis::X);
        let flipped = x.matvec(&[c(1., 0.), c(0., 0.)]);
        assert_eq!(flipped, vec![c(0., 0.), c(1., 0.)]);
    }

    #[test]
    fn pauli_y_convention() {
        let y = pauli(PauliAxis::Y);
        assert_eq!(
            y.matvec(&[c(1., 0.), c(0., 0.)]),
            vec![c(0., 0.), c(0., 1.)]
        );
        assert_eq!(
            y.matvec(&[c(0., 0.), c(1., 0.)]),
            vec![c(0., -1.), c(0., 0.)]
        );
    }

    #[test]
    fn paulis_are_involutions() {
        for axis in [PauliAxis::I, PauliAxis::X, PauliAxis::Y, PauliAxis::Z] {
            let p = pauli(axis);
            let sq = &p * &p;
            assert!((&sq - &ComplexMatrix::identity(2)).max_abs() < 1e-15);
        }
    }

    #[test]
    fn embed_z_examples() {
        let z0 = embed(PauliAxis::Z, 0, 2).unwrap();
        for (i, want) in [1.0, 1.0, -1.0, -1.0].into_iter().enumerate() {
            assert_eq!(z0[(i, i)], c(want, 0.));
        }
        let z1 = embed(PauliAxis::Z, 1, 2).unwrap();
        for (i, want) in [1.0, -1.0, 1.0, -1.0].into_iter().enumerate() {
            assert_eq!(z1[(i, i)], c(want, 0.));
        }
    }

    #[test]
    fn embed_single_qubit_is_pauli() {
        let x = embed(PauliAxis::X, 0, 1).unwrap();
        assert_eq!(x, pauli(PauliAxis::X));
    }

    #[test]
    fn embed_rejects_out_of_range_site() {
        assert!(matches!(embed(PauliAxis::X, 2, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn embedded_paulis_are_hermitian_unitary_and_commute() {
        let n = 3;
        for axis in [PauliAxis::X, PauliAxis::Y, PauliAxis::Z] {
            for site in 0..n {
                let m = embed(axis, site, n).unwrap();
                assert!(m.hermitian_deviation() < 1e-12);
                let sq = &m * &m;
                assert!((&sq - &ComplexMatrix::identity(1 << n)).max_abs() < 1e-12);
            }
        }
        let a = embed(PauliAxis::Y, 0, 3).unwrap();
        let b = embed(PauliAxis::X, 2, 3).unwrap();
        assert!((&(&a * &b) - &(&b * &a)).max_abs() < 1e-12);
    }

    #[test]
    fn two_site_zz() {
        let zz = two_site(PauliAxis::Z, 0, 1, 2).unwrap();
        for (i, want) in [1.0, -1.0, -1.0, 1.0].into_iter().enumerate() {
            assert_eq!(zz[(i, i)], c(want, 0.));
        }
        assert_eq!(zz, two_site(PauliAxis::Z, 1, 0, 2).unwrap());
    }

    #[test]
    fn two_site_rejects_equal_sites() {
        assert!(matches!(
            two_site(PauliAxis::Z, 1, 1, 2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sigma_yy_matches_hand_expansion() {
        // Direct 4x4 tensor arithmetic: sigma_y (x) sigma_y is the real
        // antidiagonal matrix (-1, 1, 1, -1).
        let expect = ComplexMatrix::from_fn(4, |i, j| match (i, j) {
            (0, 3) | (3, 0) => c(-1., 0.),
            (1, 2) | (2, 1) => c(1., 0.),
            _ => c(0., 0.),
        });
        assert!((&sigma_yy() - &expect).max_abs() < 1e-15);
    }

    #[test]
    fn sigma_yy_negates_the_singlet() {
        // (|01> - |10>)/sqrt(2) is an eigenvector with eigenvalue -1.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = [c(0., 0.), c(s, 0.), c(-s, 0.), c(0., 0.)];
        let out = sigma_yy().matvec(&singlet);
        for (got, want) in out.iter().zip(&singlet) {
            assert!((got + want).norm() < 1e-15);
        }
    }
}
