use thiserror::Error;

use crate::pauli::TargetViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {0} outside supported range 1..={1}")]
    QubitCount(usize, usize),

    #[error("invalid Pauli string {0:?}: {1}")]
    InvalidPauli(String, String),

    #[error("error index ({f_z}, {f_x}) does not fit in {n_qubits} qubits")]
    InvalidIndex { f_z: u32, f_x: u32, n_qubits: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("malformed input: {0}")]
    Schema(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{table} table row {row}: entry {col} = {value} is outside [0, 1]")]
    EntryOutOfRange { table: &'static str, row: String, col: usize, value: f64 },

    #[error("{table} table row {row} sums to {sum} (deviation {deviation:e} exceeds tolerance {tolerance:e})")]
    RowSum { table: &'static str, row: String, sum: f64, deviation: f64, tolerance: f64 },

    #[error("{table} table row {row} sums to zero and cannot be renormalized")]
    ZeroRow { table: &'static str, row: String },

    #[error("infeasible summary for the worst-case model: F_Z + F_X = {0} < 1")]
    Infeasible(f64),

    #[error("invalid stabilizer target {name:?}: {}", format_violations(.violations))]
    InvalidTarget { name: String, violations: Vec<TargetViolation> },

    #[error("invalid process matrix: {0}")]
    InvalidChi(String),

    #[error("gate is not unitary (max deviation of U U^dagger from identity: {0:e})")]
    NonUnitary(f64),

    #[error("oracle supports at most {max} qubits, got {found}")]
    OracleSizeCap { max: usize, found: usize },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

fn format_violations(v: &[TargetViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
