//! Bundled example data.

use crate::error::Result;
use crate::measurement::{parse_tables, ErrorTableSet, DEFAULT_ROW_TOLERANCE};
use crate::noise::{DiagonalChi, DiagonalChiFile};
use crate::scalar::Real;

/// Complementary error tables of an optical controlled-NOT gate, 3-decimal
/// entries as published. One Z row sums to 1.001 and one X row to 0.999.
pub const OPTICAL_CNOT_JSON: &str = include_str!("../data/optical_cnot.json");

/// Worst-case diagonal χ for the tables above, 3-decimal entries.
pub const WORST_CASE_CHI_JSON: &str = include_str!("../data/cnot_worst_case_chi.json");

/// Uncorrelated-error diagonal χ built from the 3-decimal summaries, full
/// precision.
pub const STATISTICAL_CHI_JSON: &str = include_str!("../data/cnot_statistical_chi.json");

pub fn optical_cnot<T: Real>() -> Result<ErrorTableSet<T>> {
    parse_tables(OPTICAL_CNOT_JSON, DEFAULT_ROW_TOLERANCE)
}

fn chi<T: Real>(doc: &str) -> Result<DiagonalChi<T>> {
    let file: DiagonalChiFile = serde_json::from_str(doc)?;
    DiagonalChi::from_file(file)
}

pub fn cnot_worst_case_chi<T: Real>() -> Result<DiagonalChi<T>> {
    chi(WORST_CASE_CHI_JSON)
}

pub fn cnot_statistical_chi<T: Real>() -> Result<DiagonalChi<T>> {
    chi(STATISTICAL_CHI_JSON)
}
