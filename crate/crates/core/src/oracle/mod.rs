//! Dense simulation of the process-matrix channel
//!
//! `ρ_out = Σ_ij χ_ij Λ_i U₀ ρ_in U₀† Λ_j`
//!
//! with `Λ_i` the honest N-qubit Pauli matrices. Everything here is brute
//! force on `d × d` complex matrices and is meant as an independent check of
//! the closed-form analysis, not as a fast simulator.

mod channel;
mod matrix;
mod sampling;
mod states;

use nalgebra::{DMatrix, DVector, RealField};
use num_complex::Complex;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noise::{DiagonalChi, DiagonalChiFile};
use crate::pauli::ErrorIndex;
use crate::scalar::Real;

pub use channel::{apply_process, generate_tables, haar_average_fidelity, state_fidelity_oracle, MonteCarloEstimate};
pub use matrix::{hadamard_state, pauli_matrix};
pub use sampling::sample_tables;
pub use states::{stabilized_inputs, stabilizer_states};

pub const MAX_ORACLE_QUBITS: usize = 5;

/// Hermiticity, trace and positivity tolerance.
pub const ORACLE_TOLERANCE: f64 = 1e-10;

/// Float scalar the oracle runs on.
pub trait OracleReal: Real + RealField {
    fn sample_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Row-sum tolerance for simulated tables at this precision.
    fn table_tolerance() -> f64;
}

impl OracleReal for f64 {
    fn sample_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }

    fn table_tolerance() -> f64 {
        1e-9
    }
}

impl OracleReal for f32 {
    fn sample_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }

    fn table_tolerance() -> f64 {
        1e-4
    }
}

pub type CMatrix<T> = DMatrix<Complex<T>>;
pub type CVector<T> = DVector<Complex<T>>;

pub(crate) fn lit<T: OracleReal>(x: f64) -> T {
    <T as Real>::from_f64(x)
}

pub(crate) fn as_f64<T: OracleReal>(x: T) -> f64 {
    <T as Real>::to_f64(x)
}

pub(crate) fn check_oracle_qubits(n_qubits: usize) -> Result<usize> {
    if n_qubits == 0 {
        return Err(Error::QubitCount(0, MAX_ORACLE_QUBITS));
    }
    if n_qubits > MAX_ORACLE_QUBITS {
        return Err(Error::OracleSizeCap { max: MAX_ORACLE_QUBITS, found: n_qubits });
    }
    Ok(1 << n_qubits)
}

fn max_abs<T: OracleReal>(m: &CMatrix<T>) -> f64 {
    m.iter().map(|c| as_f64(c.re).abs().max(as_f64(c.im).abs())).fold(0.0, f64::max)
}

/// Real and imaginary parts of a square complex matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexMatrixFile {
    pub n_qubits: usize,
    pub entries_re: Vec<Vec<f64>>,
    pub entries_im: Vec<Vec<f64>>,
}

impl ComplexMatrixFile {
    fn to_matrix<T: OracleReal>(&self, dim: usize) -> Result<CMatrix<T>> {
        for part in [&self.entries_re, &self.entries_im] {
            if part.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: part.len() });
            }
            if let Some(r) = part.iter().find(|r| r.len() != dim) {
                return Err(Error::DimensionMismatch { expected: dim, found: r.len() });
            }
            if part.iter().flatten().any(|v| !v.is_finite()) {
                return Err(Error::Schema("non-finite matrix entry".into()));
            }
        }
        Ok(CMatrix::from_fn(dim, dim, |r, c| Complex::new(lit(self.entries_re[r][c]), lit(self.entries_im[r][c]))))
    }

    fn from_matrix<T: OracleReal>(n_qubits: usize, m: &CMatrix<T>) -> Self {
        let part = |f: &dyn Fn(&Complex<T>) -> T| {
            (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| as_f64(f(&m[(r, c)]))).collect()).collect()
        };
        Self { n_qubits, entries_re: part(&|c| c.re), entries_im: part(&|c| c.im) }
    }
}

/// `max |Σ_ij χ_ij Λ_j Λ_i − I|`. Zero for every diagonal χ of unit trace.
fn trace_preservation_defect<T: OracleReal>(entries: &CMatrix<T>, d: usize) -> f64 {
    let zero = Complex::new(T::zero(), T::zero());
    let mut sum = CMatrix::<T>::zeros(d, d);
    for i in 0..d * d {
        let li = ErrorIndex::from_linear(i, d);
        for j in 0..d * d {
            let c = entries[(i, j)];
            if c == zero {
                continue;
            }
            let lj = ErrorIndex::from_linear(j, d);
            for m in 0..d {
                let (m1, p1) = matrix::pauli_action::<T>(li.f_z, li.f_x, m);
                let (m2, p2) = matrix::pauli_action::<T>(lj.f_z, lj.f_x, m1);
                sum[(m2, m)] += c * p2 * p1;
            }
        }
    }
    max_abs(&(sum - CMatrix::identity(d, d)))
}

/// Full `d² × d²` process matrix. Row/column `i` is the linearized error
/// index `f_z·d + f_x`.
#[derive(Clone, Debug, PartialEq)]
pub struct FullProcessMatrix<T: OracleReal> {
    n_qubits: usize,
    entries: CMatrix<T>,
    diagonal: bool,
}

impl<T: OracleReal> FullProcessMatrix<T> {
    /// Validates Hermiticity, unit trace, positive semidefiniteness and
    /// trace preservation.
    pub fn new(n_qubits: usize, entries: CMatrix<T>) -> Result<Self> {
        let d = check_oracle_qubits(n_qubits)?;
        let dd = d * d;
        if entries.nrows() != dd || entries.ncols() != dd {
            return Err(Error::DimensionMismatch { expected: dd, found: entries.nrows().max(entries.ncols()) });
        }
        let herm = max_abs(&(&entries - entries.adjoint()));
        if herm > ORACLE_TOLERANCE {
            return Err(Error::InvalidChi(format!("not Hermitian (max |χ − χ†| = {herm:e})")));
        }
        let trace = as_f64(entries.trace().re);
        if (trace - 1.0).abs() > ORACLE_TOLERANCE {
            return Err(Error::InvalidChi(format!("trace {trace} differs from 1")));
        }
        let diagonal =
            (0..dd).all(|r| (0..dd).all(|c| r == c || entries[(r, c)] == Complex::new(T::zero(), T::zero())));
        let min_eig = if diagonal {
            (0..dd).map(|i| as_f64(entries[(i, i)].re)).fold(f64::INFINITY, f64::min)
        } else {
            let herm_part = (&entries + entries.adjoint()) * Complex::new(lit::<T>(0.5), T::zero());
            herm_part.symmetric_eigenvalues().iter().map(|&e| as_f64(e)).fold(f64::INFINITY, f64::min)
        };
        if min_eig < -ORACLE_TOLERANCE {
            return Err(Error::InvalidChi(format!("not positive semidefinite (eigenvalue {min_eig:e})")));
        }
        if !diagonal {
            let dev = trace_preservation_defect(&entries, d);
            if dev > ORACLE_TOLERANCE {
                return Err(Error::InvalidChi(format!("not trace preserving (max |Σ χ_ij Λ_j Λ_i − I| = {dev:e})")));
            }
        }
        Ok(Self { n_qubits, entries, diagonal })
    }

    /// Embeds a diagonal χ with zero off-diagonal elements.
    pub fn from_diagonal(chi: &DiagonalChi<T>) -> Result<Self> {
        let d = check_oracle_qubits(chi.n_qubits)?;
        let mut entries = CMatrix::zeros(d * d, d * d);
        for idx in ErrorIndex::all(chi.n_qubits) {
            let i = idx.linear(d);
            entries[(i, i)] = Complex::new(chi.get(idx), T::zero());
        }
        Self::new(chi.n_qubits, entries)
    }

    /// Point mass on one error index.
    pub fn point(n_qubits: usize, idx: ErrorIndex) -> Result<Self> {
        let d = check_oracle_qubits(n_qubits)?;
        if !idx.fits(n_qubits) {
            return Err(Error::InvalidIndex { f_z: idx.f_z, f_x: idx.f_x, n_qubits });
        }
        let mut entries = CMatrix::zeros(d * d, d * d);
        let i = idx.linear(d);
        entries[(i, i)] = Complex::new(T::one(), T::zero());
        Self::new(n_qubits, entries)
    }

    pub fn ideal(n_qubits: usize) -> Result<Self> {
        Self::point(n_qubits, ErrorIndex::IDENTITY)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn entries(&self) -> &CMatrix<T> {
        &self.entries
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    pub fn element(&self, i: ErrorIndex, j: ErrorIndex) -> Complex<T> {
        let d = self.dim();
        self.entries[(i.linear(d), j.linear(d))]
    }

    /// Real diagonal as a [`DiagonalChi`] table.
    pub fn diagonal_part(&self) -> Vec<Vec<T>> {
        let d = self.dim();
        (0..d).map(|z| (0..d).map(|x| self.entries[(z * d + x, z * d + x)].re).collect()).collect()
    }

    pub fn to_file(&self) -> ComplexMatrixFile {
        ComplexMatrixFile::from_matrix(self.n_qubits, &self.entries)
    }
}

/// Reads a χ document: the diagonal form (`values`) or the full complex form
/// (`entries_re`, `entries_im`).
pub fn parse_chi<T: OracleReal>(document: &str) -> Result<FullProcessMatrix<T>> {
    let value: serde_json::Value = serde_json::from_str(document)?;
    if value.get("values").is_some() {
        let doc: DiagonalChiFile = serde_json::from_value(value)?;
        FullProcessMatrix::from_diagonal(&DiagonalChi::from_file(doc)?)
    } else if value.get("entries_re").is_some() {
        let doc: ComplexMatrixFile = serde_json::from_value(value)?;
        let d = check_oracle_qubits(doc.n_qubits)?;
        FullProcessMatrix::new(doc.n_qubits, doc.to_matrix(d * d)?)
    } else {
        Err(Error::Schema("χ document needs either `values` or `entries_re`/`entries_im`".into()))
    }
}

/// Intended operation `U₀`.
#[derive(Clone, Debug, PartialEq)]
pub enum GateSpec<T: OracleReal> {
    Identity,
    /// Control on qubit 1 (most significant bit), target on qubit 2.
    Cnot,
    Custom(CMatrix<T>),
}

impl<T: OracleReal> GateSpec<T> {
    /// Checks unitarity within [`ORACLE_TOLERANCE`].
    pub fn custom(u: CMatrix<T>) -> Result<Self> {
        if u.nrows() != u.ncols() {
            return Err(Error::DimensionMismatch { expected: u.nrows(), found: u.ncols() });
        }
        let dev = max_abs(&(&u * u.adjoint() - CMatrix::identity(u.nrows(), u.nrows())));
        if dev > ORACLE_TOLERANCE {
            return Err(Error::NonUnitary(dev));
        }
        Ok(GateSpec::Custom(u))
    }

    pub fn parse_custom(document: &str) -> Result<Self> {
        let doc: ComplexMatrixFile = serde_json::from_str(document)?;
        let d = check_oracle_qubits(doc.n_qubits)?;
        Self::custom(doc.to_matrix(d)?)
    }

    /// The `d × d` unitary for `n_qubits`.
    pub fn unitary(&self, n_qubits: usize) -> Result<CMatrix<T>> {
        let d = check_oracle_qubits(n_qubits)?;
        match self {
            GateSpec::Identity => Ok(CMatrix::identity(d, d)),
            GateSpec::Cnot => {
                if n_qubits < 2 {
                    return Err(Error::DimensionMismatch { expected: 2, found: n_qubits });
                }
                let control = 1 << (n_qubits - 1);
                let target = 1 << (n_qubits - 2);
                let mut u = CMatrix::zeros(d, d);
                for m in 0..d {
                    let out = if m & control != 0 { m ^ target } else { m };
                    u[(out, m)] = Complex::new(T::one(), T::zero());
                }
                Ok(u)
            }
            GateSpec::Custom(u) => {
                if u.nrows() != d {
                    return Err(Error::DimensionMismatch { expected: d, found: u.nrows() });
                }
                Ok(u.clone())
            }
        }
    }
}

/// Validated density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T: OracleReal>(CMatrix<T>);

impl<T: OracleReal> DensityMatrix<T> {
    pub fn new(m: CMatrix<T>) -> Result<Self> {
        if m.nrows() != m.ncols() || !m.nrows().is_power_of_two() {
            return Err(Error::DimensionMismatch { expected: m.nrows(), found: m.ncols() });
        }
        let herm = max_abs(&(&m - m.adjoint()));
        let trace = as_f64(m.trace().re);
        if herm > ORACLE_TOLERANCE || (trace - 1.0).abs() > ORACLE_TOLERANCE {
            return Err(Error::Schema(format!("not a density matrix (hermiticity {herm:e}, trace {trace})")));
        }
        let min_eig = m.clone().symmetric_eigenvalues().iter().map(|&e| as_f64(e)).fold(f64::INFINITY, f64::min);
        if min_eig < -ORACLE_TOLERANCE {
            return Err(Error::Schema(format!("density matrix has eigenvalue {min_eig:e}")));
        }
        Ok(Self(m))
    }

    /// `|ψ⟩⟨ψ|` for a vector normalized by this call.
    pub fn pure(psi: &CVector<T>) -> Self {
        let norm = psi.norm();
        let v = psi.map(|c| c / Complex::new(norm, T::zero()));
        Self(&v * v.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.0
    }

    pub fn trace(&self) -> T {
        self.0.trace().re
    }

    pub fn population(&self, basis_state: usize) -> T {
        self.0[(basis_state, basis_state)].re
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn expectation(&self, psi: &CVector<T>) -> T {
        (psi.adjoint() * &self.0 * psi)[(0, 0)].re
    }
}
