use num_complex::Complex;

use super::{check_oracle_qubits, lit, CMatrix, CVector, OracleReal};
use crate::error::Result;
use crate::pauli::PauliLabel;

/// `i^k` for `k mod 4`.
pub(crate) fn i_pow<T: OracleReal>(k: u32) -> Complex<T> {
    let (o, z) = (T::one(), T::zero());
    match k % 4 {
        0 => Complex::new(o, z),
        1 => Complex::new(z, o),
        2 => Complex::new(-o, z),
        _ => Complex::new(z, -o),
    }
}

/// Action of the Pauli matrix with masks `(x, z)` on basis state `|m⟩`:
/// returns `(m ⊕ x, phase)` with `P|m⟩ = phase · |m ⊕ x⟩`.
///
/// Per qubit `X|b⟩ = |b⊕1⟩`, `Z|b⟩ = (−1)^b |b⟩` and `Y|b⟩ = i(−1)^b |b⊕1⟩`.
pub(crate) fn pauli_action<T: OracleReal>(x: u32, z: u32, m: usize) -> (usize, Complex<T>) {
    let k = (x & z).count_ones() + 2 * (z & m as u32).count_ones();
    (m ^ x as usize, i_pow(k))
}

fn single<T: OracleReal>(c: char) -> CMatrix<T> {
    let (o, z) = (T::one(), T::zero());
    let c0 = Complex::new(z, z);
    let c1 = Complex::new(o, z);
    let ci = Complex::new(z, o);
    match c {
        'X' => CMatrix::from_row_slice(2, 2, &[c0, c1, c1, c0]),
        'Y' => CMatrix::from_row_slice(2, 2, &[c0, -ci, ci, c0]),
        'Z' => CMatrix::from_row_slice(2, 2, &[c1, c0, c0, -c1]),
        _ => CMatrix::identity(2, 2),
    }
}

/// Explicit tensor product, qubit 1 leftmost.
pub fn pauli_matrix<T: OracleReal>(p: &PauliLabel) -> Result<CMatrix<T>> {
    check_oracle_qubits(p.n_qubits())?;
    let mut m = single::<T>(p.component(0));
    for q in 1..p.n_qubits() {
        m = m.kronecker(&single(p.component(q)));
    }
    Ok(m)
}

/// `|X_k⟩ = 2^{−N/2} Σ_m (−1)^{parity(k & m)} |m⟩`.
pub fn hadamard_state<T: OracleReal>(k: usize, n_qubits: usize) -> Result<CVector<T>> {
    let d = check_oracle_qubits(n_qubits)?;
    let amp: T = lit::<T>(1.0 / (d as f64).sqrt());
    Ok(CVector::from_fn(d, |m, _| {
        let s = if (k & m).count_ones().is_multiple_of(2) { amp } else { -amp };
        Complex::new(s, T::zero())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{pauli_of_index, ErrorIndex};

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn single_qubit_y() {
        let y: CMatrix<f64> = pauli_matrix(&"Y".parse().unwrap()).unwrap();
        assert_eq!(y, CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]));
    }

    #[test]
    fn xz_is_minus_i_y() {
        let x: CMatrix<f64> = pauli_matrix(&"X".parse().unwrap()).unwrap();
        let z: CMatrix<f64> = pauli_matrix(&"Z".parse().unwrap()).unwrap();
        let y: CMatrix<f64> = pauli_matrix(&"Y".parse().unwrap()).unwrap();
        assert_eq!(&x * &z, y * c(0., -1.));
    }

    #[test]
    fn orthogonality_two_qubits() {
        let mats: Vec<CMatrix<f64>> =
            ErrorIndex::all(2).map(|i| pauli_matrix(&pauli_of_index(i, 2).unwrap()).unwrap()).collect();
        for (a, ma) in mats.iter().enumerate() {
            assert_eq!(ma, &ma.adjoint());
            assert!((ma * ma - CMatrix::identity(4, 4)).norm() < 1e-15);
            for (b, mb) in mats.iter().enumerate() {
                let tr = (ma * mb).trace();
                let want = if a == b { 4.0 } else { 0.0 };
                assert!((tr - c(want, 0.)).norm() < 1e-12, "{a} {b}");
            }
        }
    }

    #[test]
    fn action_matches_matrix() {
        for n in 1..=3 {
            let d = 1 << n;
            for idx in ErrorIndex::all(n) {
                let p = pauli_of_index(idx, n).unwrap();
                let m: CMatrix<f64> = pauli_matrix(&p).unwrap();
                for col in 0..d {
                    let (row, phase) = pauli_action::<f64>(p.x_mask(), p.z_mask(), col);
                    for r in 0..d {
                        let want = if r == row { phase } else { c(0., 0.) };
                        assert_eq!(m[(r, col)], want);
                    }
                }
            }
        }
    }

    #[test]
    fn commutator_of_xx_and_zz() {
        let xx: CMatrix<f64> = pauli_matrix(&"XX".parse().unwrap()).unwrap();
        let zz: CMatrix<f64> = pauli_matrix(&"ZZ".parse().unwrap()).unwrap();
        assert!((&xx * &zz - &zz * &xx).norm() < 1e-15);
        assert!(ErrorIndex::new(3, 0).commutes_with(ErrorIndex::new(0, 3)));
        // exhaustive agreement of the symplectic test with matrix commutators
        for a in ErrorIndex::all(2) {
            for b in ErrorIndex::all(2) {
                let ma: CMatrix<f64> = pauli_matrix(&pauli_of_index(a, 2).unwrap()).unwrap();
                let mb: CMatrix<f64> = pauli_matrix(&pauli_of_index(b, 2).unwrap()).unwrap();
                let commute = (&ma * &mb - &mb * &ma).norm() < 1e-12;
                assert_eq!(commute, a.commutes_with(b));
            }
        }
    }

    #[test]
    fn hadamard_states_are_orthonormal() {
        let states: Vec<CVector<f64>> = (0..4).map(|k| hadamard_state(k, 2).unwrap()).collect();
        for (a, sa) in states.iter().enumerate() {
            for (b, sb) in states.iter().enumerate() {
                let ip = sa.dotc(sb);
                assert!((ip - c(if a == b { 1. } else { 0. }, 0.)).norm() < 1e-12);
            }
        }
    }
}
