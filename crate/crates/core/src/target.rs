//! Fidelities of operations that were never measured directly.
//!
//! If the ideal outputs of an operation are the joint eigenstates of a
//! stabilizer group, an error operator either acts as (±) identity on every
//! output or moves it to an orthogonal one. The fidelity is therefore the χ
//! diagonal mass on the `d` group members.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measurement::ComplementarySummary;
use crate::noise::{statistical_chi, worst_case_chi, DiagonalChi};
use crate::pauli::{pauli_of_index, validate_target, ErrorIndex, StabilizerTarget};
use crate::scalar::Real;

/// Σ of `chi` over the target's members.
pub fn target_fidelity<T: Real>(chi: &DiagonalChi<T>, t: &StabilizerTarget) -> Result<T> {
    if chi.n_qubits != t.n_qubits {
        return Err(Error::DimensionMismatch { expected: chi.n_qubits, found: t.n_qubits });
    }
    let violations = validate_target(t);
    if !violations.is_empty() {
        return Err(Error::InvalidTarget { name: t.name.clone(), violations });
    }
    Ok(T::sum_of(t.members.iter().map(|&i| chi.get(i))))
}

fn preset(name: &str, members: [(u32, u32); 4]) -> StabilizerTarget {
    StabilizerTarget::new(name, 2, members.iter().map(|&(z, x)| ErrorIndex::new(z, x)).collect())
        .expect("preset targets are valid stabilizer groups")
}

/// Two-qubit targets for a controlled-NOT with control on qubit 1:
///
/// * `zx_eigenstates`: Z⊗X eigenstates, which the gate leaves unchanged
/// * `bell_from_xz`: X⊗Z product inputs mapped to Bell states
/// * `xz_from_bell`: the reverse, Bell states mapped to X⊗Z products
/// * `entangle_from_yy`: Y⊗Y product inputs mapped to entangled states
pub fn preset_targets() -> Vec<StabilizerTarget> {
    vec![
        preset("zx_eigenstates", [(0, 0), (1, 0), (0, 2), (1, 2)]),
        preset("bell_from_xz", [(0, 0), (3, 0), (0, 3), (3, 3)]),
        preset("xz_from_bell", [(0, 0), (2, 0), (0, 1), (2, 1)]),
        preset("entangle_from_yy", [(0, 0), (1, 3), (3, 2), (2, 1)]),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Contribution<T> {
    pub index: ErrorIndex,
    pub pauli: String,
    pub worst_case: T,
    pub statistical: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TargetFidelityReport<T> {
    pub target: StabilizerTarget,
    /// Value under the worst-case model; a lower bound for the data.
    pub worst_case_value: T,
    /// Value under the uncorrelated-error model.
    pub statistical_value: T,
    pub contributions: Vec<Contribution<T>>,
}

impl<T: Real> TargetFidelityReport<T> {
    /// Gap between the likely and the minimal value.
    pub fn spread(&self) -> T {
        self.statistical_value - self.worst_case_value
    }
}

/// Evaluates targets against already-built models.
pub fn evaluate_with_models<T: Real>(
    worst: &DiagonalChi<T>,
    statistical: &DiagonalChi<T>,
    targets: &[StabilizerTarget],
) -> Result<Vec<TargetFidelityReport<T>>> {
    targets
        .iter()
        .map(|t| {
            let worst_case_value = target_fidelity(worst, t)?;
            let statistical_value = target_fidelity(statistical, t)?;
            let contributions = t
                .members
                .iter()
                .map(|&index| Contribution {
                    index,
                    pauli: pauli_of_index(index, t.n_qubits).map(|p| p.to_string()).unwrap_or_default(),
                    worst_case: worst.get(index),
                    statistical: statistical.get(index),
                })
                .collect();
            Ok(TargetFidelityReport { target: t.clone(), worst_case_value, statistical_value, contributions })
        })
        .collect()
}

/// Builds both noise models once and evaluates every target under each.
pub fn evaluate_all<T: Real>(
    s: &ComplementarySummary<T>,
    targets: &[StabilizerTarget],
) -> Result<Vec<TargetFidelityReport<T>>> {
    let worst = worst_case_chi(s)?;
    let statistical = statistical_chi(s);
    evaluate_with_models(&worst, &statistical, targets)
}

/// Target file: `{"name": "...", "paulis": ["II", "XX", "YY", "ZZ"]}`, or a
/// list of such objects.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetFile {
    pub name: String,
    pub paulis: Vec<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TargetDocument {
    One(TargetFile),
    Many(Vec<TargetFile>),
}

pub fn parse_targets(document: &str) -> Result<Vec<StabilizerTarget>> {
    let files = match serde_json::from_str(document)? {
        TargetDocument::One(f) => vec![f],
        TargetDocument::Many(v) => v,
    };
    files.into_iter().map(|f| StabilizerTarget::from_paulis(f.name, &f.paulis)).collect()
}
