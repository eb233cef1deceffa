use std::collections::HashSet;

use num_complex::Complex;

use super::matrix::pauli_matrix;
use super::{check_oracle_qubits, lit, CMatrix, CVector, DensityMatrix, GateSpec, OracleReal};
use crate::error::{Error, Result};
use crate::pauli::{pauli_of_index, validate_target, ErrorIndex, StabilizerTarget};

/// `n_qubits` independent members that generate the whole group.
fn generators(t: &StabilizerTarget) -> Vec<ErrorIndex> {
    let mut span: HashSet<ErrorIndex> = HashSet::from([ErrorIndex::IDENTITY]);
    let mut gens = Vec::new();
    for &m in &t.members {
        if span.contains(&m) {
            continue;
        }
        let shifted: Vec<_> = span.iter().map(|&s| s.product(m)).collect();
        span.extend(shifted);
        gens.push(m);
    }
    gens
}

/// The `d` joint eigenstates of the group, one per sign pattern of the
/// generators. These are the ideal outputs of the target operation.
pub fn stabilizer_states<T: OracleReal>(t: &StabilizerTarget) -> Result<Vec<CVector<T>>> {
    let d = check_oracle_qubits(t.n_qubits)?;
    let violations = validate_target(t);
    if !violations.is_empty() {
        return Err(Error::InvalidTarget { name: t.name.clone(), violations });
    }
    let gens = generators(t)
        .into_iter()
        .map(|g| pauli_matrix::<T>(&pauli_of_index(g, t.n_qubits)?))
        .collect::<Result<Vec<_>>>()?;
    let id = CMatrix::<T>::identity(d, d);
    let half = Complex::new(lit::<T>(0.5), T::zero());

    let mut states = Vec::with_capacity(d);
    for signs in 0..(1usize << gens.len()) {
        let mut proj = id.clone();
        for (bit, g) in gens.iter().enumerate() {
            let factor = if signs >> bit & 1 == 0 { &id + g } else { &id - g };
            proj = proj * factor * half;
        }
        let col = (0..d)
            .max_by(|&a, &b| {
                let na = proj.column(a).norm();
                let nb = proj.column(b).norm();
                na.partial_cmp(&nb).unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(0);
        let v = proj.column(col).clone_owned();
        let norm = v.norm();
        states.push(v.map(|c| c / Complex::new(norm, T::zero())));
    }
    Ok(states)
}

/// `(U₀†|s⟩⟨s|U₀, |s⟩)` for every stabilizer state `|s⟩` of the target.
pub fn stabilized_inputs<T: OracleReal>(
    t: &StabilizerTarget,
    gate: &GateSpec<T>,
) -> Result<Vec<(DensityMatrix<T>, CVector<T>)>> {
    let u_dag = gate.unitary(t.n_qubits)?.adjoint();
    Ok(stabilizer_states(t)?.into_iter().map(|s| (DensityMatrix::pure(&(&u_dag * &s)), s)).collect())
}
