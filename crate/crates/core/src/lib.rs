//! Characterization of a noisy N-qubit gate from the error statistics of
//! two complementary classical operations: the Z-basis run and the X-basis
//! run.
//!
//! The pipeline is
//!
//! 1. [`measurement`]: parse the two `d × d` error tables and average them
//!    into a [`ComplementarySummary`] (`F_Z`, `F_X`, `η_Z(f)`, `η_X(f)`).
//! 2. [`noise`]: bound the process fidelity and build the worst-case and
//!    uncorrelated diagonal process-matrix models.
//! 3. [`target`]: turn a diagonal χ into fidelities of unmeasured operations
//!    described by their output-stabilizer groups.
//!
//! [`oracle`] simulates the full process-matrix channel densely and is used
//! to check every closed-form relation above.
//!
//! The analysis modules are generic over [`Real`], implemented for `f32`,
//! `f64` and the exact [`Rational`]. The oracle needs a float
//! ([`oracle::OracleReal`]).

pub mod datasets;
pub mod error;
pub mod measurement;
pub mod noise;
pub mod oracle;
pub mod pauli;
pub mod report;
pub mod scalar;
pub mod target;

pub use error::{Error, Result};
pub use measurement::{parse_tables, renormalize_rows, summarize};
pub use noise::{
    average_fidelity_from_process, process_fidelity_bounds, process_fidelity_estimate, statistical_chi, worst_case_chi,
    ModelTag,
};
pub use pauli::{error_index_of, pauli_of_index, validate_target, ErrorIndex, PauliLabel, StabilizerTarget};
pub use scalar::{Rational, Real};
pub use target::{evaluate_all, preset_targets, target_fidelity};

pub type ErrorTableSet = measurement::ErrorTableSet<f64>;
pub type ComplementarySummary = measurement::ComplementarySummary<f64>;
pub type DiagonalChi = noise::DiagonalChi<f64>;
pub type FidelityBounds = noise::FidelityBounds<f64>;
pub type TargetFidelityReport = target::TargetFidelityReport<f64>;
pub type FullProcessMatrix = oracle::FullProcessMatrix<f64>;
pub type GateSpec = oracle::GateSpec<f64>;
pub type DensityMatrix = oracle::DensityMatrix<f64>;

pub type ExactTableSet = measurement::ErrorTableSet<Rational>;
pub type ExactSummary = measurement::ComplementarySummary<Rational>;
pub type ExactDiagonalChi = noise::DiagonalChi<Rational>;
