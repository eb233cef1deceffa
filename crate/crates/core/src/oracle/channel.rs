use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::{hadamard_state, pauli_action};
use super::{as_f64, lit, CMatrix, CVector, DensityMatrix, FullProcessMatrix, GateSpec, OracleReal};
use crate::error::{Error, Result};
use crate::measurement::ErrorTableSet;
use crate::pauli::ErrorIndex;
use crate::scalar::Real;

/// `Σ_ij χ_ij Λ_i U ρ U† Λ_j`.
///
/// Pauli matrices act as signed permutations, so each χ element costs `d²`
/// operations and zero elements are skipped.
pub fn apply_process<T: OracleReal>(
    chi: &FullProcessMatrix<T>,
    gate: &GateSpec<T>,
    rho: &DensityMatrix<T>,
) -> Result<DensityMatrix<T>> {
    let n = chi.n_qubits();
    let d = chi.dim();
    if rho.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: rho.dim() });
    }
    let u = gate.unitary(n)?;
    let v = &u * rho.matrix() * u.adjoint();
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = CMatrix::zeros(d, d);
    let e = chi.entries();
    let dd = d * d;
    for i in 0..dd {
        let li = ErrorIndex::from_linear(i, d);
        for j in 0..dd {
            if chi.is_diagonal() && i != j {
                continue;
            }
            let c = e[(i, j)];
            if c == zero {
                continue;
            }
            let lj = ErrorIndex::from_linear(j, d);
            for a in 0..d {
                let src_a = a ^ li.f_z as usize;
                let (_, ph_a) = pauli_action::<T>(li.f_z, li.f_x, src_a);
                let left = c * ph_a;
                for b in 0..d {
                    let (src_b, ph_b) = pauli_action::<T>(lj.f_z, lj.f_x, b);
                    out[(a, b)] += left * v[(src_a, src_b)] * ph_b;
                }
            }
        }
    }
    Ok(DensityMatrix(out))
}

fn basis_state<T: OracleReal>(m: usize, d: usize) -> CVector<T> {
    let mut v = CVector::zeros(d);
    v[m] = Complex::new(T::one(), T::zero());
    v
}

fn probability<T: OracleReal>(x: T) -> T {
    // roundoff can leave populations a hair outside [0, 1]
    Real::min_of(Real::max_of(x, T::zero()), T::one())
}

/// Runs the complementary experiments on the simulated channel.
///
/// Inputs are `U₀†|Z_n⟩` and `U₀†|X_k⟩`, so the ideal outputs are the Z and X
/// basis states for any gate.
pub fn generate_tables<T: OracleReal>(chi: &FullProcessMatrix<T>, gate: &GateSpec<T>) -> Result<ErrorTableSet<T>> {
    let n = chi.n_qubits();
    let d = chi.dim();
    let u_dag = gate.unitary(n)?.adjoint();

    let mut z_table = Vec::with_capacity(d);
    for m in 0..d {
        let input = DensityMatrix::pure(&(&u_dag * basis_state::<T>(m, d)));
        let out = apply_process(chi, gate, &input)?;
        z_table.push((0..d).map(|f| probability(out.population(m ^ f))).collect());
    }

    let x_states = (0..d).map(|k| hadamard_state::<T>(k, n)).collect::<Result<Vec<_>>>()?;
    let mut x_table = Vec::with_capacity(d);
    for k in 0..d {
        let input = DensityMatrix::pure(&(&u_dag * &x_states[k]));
        let out = apply_process(chi, gate, &input)?;
        x_table.push((0..d).map(|f| probability(out.expectation(&x_states[k ^ f]))).collect());
    }

    ErrorTableSet::new(n, z_table, x_table, "simulated", T::table_tolerance())
}

/// `⟨ideal| E(input) |ideal⟩` with `E` the χ channel around `gate`.
pub fn state_fidelity_oracle<T: OracleReal>(
    chi: &FullProcessMatrix<T>,
    gate: &GateSpec<T>,
    input: &DensityMatrix<T>,
    ideal_output: &CVector<T>,
) -> Result<T> {
    if ideal_output.len() != chi.dim() {
        return Err(Error::DimensionMismatch { expected: chi.dim(), found: ideal_output.len() });
    }
    Ok(apply_process(chi, gate, input)?.expectation(ideal_output))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MonteCarloEstimate<T> {
    pub mean: T,
    pub std_error: T,
    pub samples: usize,
}

/// Mean state fidelity over Haar-random pure inputs, with its standard error.
pub fn haar_average_fidelity<T: OracleReal>(
    chi: &FullProcessMatrix<T>,
    gate: &GateSpec<T>,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloEstimate<T>> {
    if samples == 0 {
        return Err(Error::Schema("at least one Monte Carlo sample is required".into()));
    }
    let d = chi.dim();
    let u = gate.unitary(chi.n_qubits())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let psi = CVector::from_fn(d, |_, _| {
            Complex::new(T::sample_standard_normal(&mut rng), T::sample_standard_normal(&mut rng))
        });
        let norm = psi.norm();
        let psi = psi.map(|c| c / Complex::new(norm, T::zero()));
        let input = DensityMatrix::pure(&psi);
        let ideal = &u * &psi;
        let f = as_f64(state_fidelity_oracle(chi, gate, &input, &ideal)?);
        sum += f;
        sum_sq += f * f;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = if samples > 1 { ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0) } else { 0.0 };
    Ok(MonteCarloEstimate { mean: lit(mean), std_error: lit((var / n).sqrt()), samples })
}
