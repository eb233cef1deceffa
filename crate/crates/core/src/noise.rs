//! Process-fidelity bounds and diagonal process-matrix noise models.
//!
//! The diagonal element `χ[(f_z,f_x)]` is the joint probability of seeing
//! error pattern `f_z` in the Z basis and `f_x` in the X basis. Its row sums
//! are the Z-basis summary and its column sums the X-basis summary, which is
//! all the two complementary experiments can pin down.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measurement::ComplementarySummary;
use crate::pauli::{ErrorIndex, MAX_QUBITS};
use crate::scalar::Real;

/// Tolerance for total mass and marginal consistency of a diagonal χ.
pub const CHI_TOLERANCE: f64 = 1e-9;

/// Below this, `1/(1 − F)` is treated as zero.
pub const EPS_FIDELITY: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelTag {
    #[serde(rename = "worst_case")]
    WorstCase,
    #[serde(rename = "statistical")]
    Statistical,
    #[serde(rename = "clamped-statistical")]
    ClampedStatistical,
    #[serde(rename = "custom")]
    #[default]
    Custom,
}

impl ModelTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelTag::WorstCase => "worst_case",
            ModelTag::Statistical => "statistical",
            ModelTag::ClampedStatistical => "clamped-statistical",
            ModelTag::Custom => "custom",
        }
    }
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// JSON layout of a diagonal process matrix, rows `f_z`, columns `f_x`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalChiFile {
    pub n_qubits: usize,
    #[serde(default)]
    pub model: ModelTag,
    pub values: Vec<Vec<f64>>,
    #[serde(default)]
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalChi<T> {
    pub n_qubits: usize,
    pub values: Vec<Vec<T>>,
    pub model: ModelTag,
    pub diagnostics: Vec<String>,
}

impl<T: Real> DiagonalChi<T> {
    /// Checks shape, nonnegativity and unit total mass.
    pub fn new(n_qubits: usize, values: Vec<Vec<T>>, model: ModelTag) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCount(n_qubits, MAX_QUBITS));
        }
        let d = 1usize << n_qubits;
        if values.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: values.len() });
        }
        for (f_z, row) in values.iter().enumerate() {
            if row.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: row.len() });
            }
            if let Some((f_x, v)) = row.iter().enumerate().find(|(_, &v)| v < T::zero()) {
                return Err(Error::InvalidChi(format!("negative entry {} at ({f_z},{f_x})", v.to_f64())));
            }
        }
        let chi = Self { n_qubits, values, model, diagnostics: Vec::new() };
        let total = chi.total();
        if (total - T::one()).abs().to_f64() > CHI_TOLERANCE {
            return Err(Error::InvalidChi(format!("total mass {} differs from 1", total.to_f64())));
        }
        Ok(chi)
    }

    pub fn from_file(doc: DiagonalChiFile) -> Result<Self> {
        if doc.values.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Schema("non-finite χ entry".into()));
        }
        let values = doc.values.into_iter().map(|r| r.into_iter().map(T::from_f64).collect()).collect();
        let mut chi = Self::new(doc.n_qubits, values, doc.model)?;
        chi.diagnostics = doc.diagnostics;
        Ok(chi)
    }

    pub fn to_file(&self) -> DiagonalChiFile {
        DiagonalChiFile {
            n_qubits: self.n_qubits,
            model: self.model,
            values: self.values.iter().map(|r| r.iter().map(|v| v.to_f64()).collect()).collect(),
            diagnostics: self.diagnostics.clone(),
        }
    }

    /// All mass on the identity error.
    pub fn ideal(n_qubits: usize) -> Result<Self> {
        let d = 1usize << n_qubits.min(MAX_QUBITS);
        let mut values = vec![vec![T::zero(); d]; d];
        values[0][0] = T::one();
        Self::new(n_qubits, values, ModelTag::Custom)
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn get(&self, idx: ErrorIndex) -> T {
        self.values[idx.f_z as usize][idx.f_x as usize]
    }

    pub fn process_fidelity(&self) -> T {
        self.values[0][0]
    }

    pub fn total(&self) -> T {
        T::sum_of(self.values.iter().flatten().copied())
    }

    /// Sums over `f_x` for each `f_z`.
    pub fn row_marginals(&self) -> Vec<T> {
        self.values.iter().map(|r| T::sum_of(r.iter().copied())).collect()
    }

    /// Sums over `f_z` for each `f_x`.
    pub fn col_marginals(&self) -> Vec<T> {
        let d = self.dim();
        (0..d).map(|f_x| T::sum_of(self.values.iter().map(|r| r[f_x]))).collect()
    }

    /// The summary the two complementary experiments would observe.
    pub fn implied_summary(&self) -> ComplementarySummary<T> {
        ComplementarySummary { n_qubits: self.n_qubits, p_z: self.row_marginals(), p_x: self.col_marginals() }
    }

    /// One message per marginal that differs from `s` by more than `tol`.
    pub fn marginal_violations(&self, s: &ComplementarySummary<T>, tol: f64) -> Vec<String> {
        let mut out = Vec::new();
        for (label, got, want) in [("p_z", self.row_marginals(), &s.p_z), ("p_x", self.col_marginals(), &s.p_x)] {
            for (f, (g, w)) in got.iter().zip(want).enumerate() {
                let dev = (*g - *w).to_f64();
                if dev.abs() > tol {
                    out.push(format!("{label}[{f}] marginal deviates by {dev:+.3e}"));
                }
            }
        }
        out
    }
}

/// Process-fidelity interval implied by the two classical fidelities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FidelityBounds<T> {
    pub lower: T,
    pub upper: T,
    /// Set when `F_Z + F_X − 1 < 0` and the lower bound was clamped to zero.
    pub vacuous_lower: bool,
}

pub fn process_fidelity_bounds<T: Real>(s: &ComplementarySummary<T>) -> FidelityBounds<T> {
    let (f_z, f_x) = (s.fidelity_z(), s.fidelity_x());
    let raw = f_z + f_x - T::one();
    let vacuous_lower = raw < T::zero();
    let upper = f_z.min_of(f_x);
    FidelityBounds { lower: raw.max_of(T::zero()).min_of(upper), upper, vacuous_lower }
}

fn normalization_notes<T: Real>(s: &ComplementarySummary<T>) -> Vec<String> {
    let (ez, ex) = s.normalization_error();
    let mut out = Vec::new();
    for (label, e) in [("p_z", ez), ("p_x", ex)] {
        if e.abs().to_f64() > CHI_TOLERANCE {
            out.push(format!("summary {label} sums to 1{:+.3e}; marginals inherit this offset", e.to_f64()));
        }
    }
    out
}

/// All error mass on pure-Z (`(f_z,0)`) and pure-X (`(0,f_x)`) indices.
/// This realizes the smallest process fidelity, `F_Z + F_X − 1`.
pub fn worst_case_chi<T: Real>(s: &ComplementarySummary<T>) -> Result<DiagonalChi<T>> {
    let d = s.dim();
    let f_qp = s.fidelity_z() + s.fidelity_x() - T::one();
    if f_qp < T::zero() {
        return Err(Error::Infeasible((f_qp + T::one()).to_f64()));
    }
    let mut values = vec![vec![T::zero(); d]; d];
    values[0][0] = f_qp;
    for f in 1..d {
        values[f][0] = s.eta_z(f);
        values[0][f] = s.eta_x(f);
    }
    Ok(DiagonalChi { n_qubits: s.n_qubits, values, model: ModelTag::WorstCase, diagnostics: normalization_notes(s) })
}

fn inverse_infidelity<T: Real>(f: T) -> T {
    let gap = T::one() - f;
    if gap.to_f64() < EPS_FIDELITY {
        T::zero()
    } else {
        T::one() / gap
    }
}

/// Cross-term weight `c = (d−1)/(2d) · (1/(1−F_Z) + 1/(1−F_X))`.
pub fn statistical_coefficient<T: Real>(s: &ComplementarySummary<T>) -> T {
    let d = T::from_usize(s.dim());
    let two = T::one() + T::one();
    (d - T::one()) / (two * d) * (inverse_infidelity(s.fidelity_z()) + inverse_infidelity(s.fidelity_x()))
}

/// Uncorrelated-error model: Z and X error patterns are independent apart
/// from the fixed process fidelity. Negative entries, which appear when the
/// two fidelities are very different, are clamped to zero and the matrix is
/// rescaled to unit mass; diagnostics then record the broken marginals.
pub fn statistical_chi<T: Real>(s: &ComplementarySummary<T>) -> DiagonalChi<T> {
    let d = s.dim();
    let (f_z, f_x) = (s.fidelity_z(), s.fidelity_x());
    let c = statistical_coefficient(s);
    let mut values = vec![vec![T::zero(); d]; d];
    // Equals (1+1/d)(F_Z+F_X)/2 − 1/d unless a reciprocal was suppressed.
    values[0][0] = f_z + f_x - T::one() + c * (T::one() - f_z) * (T::one() - f_x);
    for z in 1..d {
        values[z][0] = s.eta_z(z) * (T::one() - c * (T::one() - f_x));
        for x in 1..d {
            values[z][x] = c * s.eta_z(z) * s.eta_x(x);
        }
    }
    for x in 1..d {
        values[0][x] = s.eta_x(x) * (T::one() - c * (T::one() - f_z));
    }

    let mut diagnostics = normalization_notes(s);
    let closed = process_fidelity_estimate(s);
    if (closed - values[0][0]).abs().to_f64() > CHI_TOLERANCE {
        diagnostics.push(format!(
            "a fidelity equals 1: χ(0,0) = {:.6} kept marginal-consistent instead of the estimate {:.6}",
            values[0][0].to_f64(),
            closed.to_f64()
        ));
    }

    let mut chi = DiagonalChi { n_qubits: s.n_qubits, values, model: ModelTag::Statistical, diagnostics };
    let negatives: Vec<String> = ErrorIndex::all(s.n_qubits)
        .filter(|&i| chi.get(i) < T::zero())
        .map(|i| format!("{i}={:.3e}", chi.get(i).to_f64()))
        .collect();
    if negatives.is_empty() {
        return chi;
    }

    chi.diagnostics.push(format!("negative estimates clamped to 0: {}", negatives.join(", ")));
    for v in chi.values.iter_mut().flatten() {
        *v = v.max_of(T::zero());
    }
    let total = chi.total();
    if total > T::zero() {
        for v in chi.values.iter_mut().flatten() {
            *v = *v / total;
        }
    }
    let broken = chi.marginal_violations(s, CHI_TOLERANCE);
    chi.diagnostics.extend(broken);
    chi.model = ModelTag::ClampedStatistical;
    chi
}

/// Most likely process fidelity when the average fidelity is taken as the
/// mean of the two classical fidelities.
pub fn process_fidelity_estimate<T: Real>(s: &ComplementarySummary<T>) -> T {
    let d = T::from_usize(s.dim());
    let two = T::one() + T::one();
    (T::one() + T::one() / d) * (s.fidelity_z() + s.fidelity_x()) / two - T::one() / d
}

/// `F_av = (F_qp·d + 1) / (d + 1)`.
pub fn average_fidelity_from_process<T: Real>(f_qp: T, dim: usize) -> T {
    let d = T::from_usize(dim);
    (f_qp * d + T::one()) / (d + T::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn printed() -> ComplementarySummary<f64> {
        ComplementarySummary::from_marginals(
            2,
            vec![0.853, 0.051, 0.052, 0.044],
            vec![0.867, 0.034, 0.071, 0.028],
            1e-12,
        )
        .unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn bounds() {
        let b = process_fidelity_bounds(&printed());
        assert!(close(b.lower, 0.720, 1e-12) && close(b.upper, 0.853, 1e-12) && !b.vacuous_lower);

        let perfect = ComplementarySummary::from_fidelities(2, 1.0, 1.0).unwrap();
        let b = process_fidelity_bounds(&perfect);
        assert_eq!((b.lower, b.upper, b.vacuous_lower), (1.0, 1.0, false));

        let low = ComplementarySummary::from_fidelities(2, 0.4, 0.5).unwrap();
        let b = process_fidelity_bounds(&low);
        assert_eq!((b.lower, b.upper, b.vacuous_lower), (0.0, 0.4, true));
    }

    #[test]
    fn worst_case_matches_printed_table() {
        let chi = worst_case_chi(&printed()).unwrap();
        let expected =
            [[0.720, 0.034, 0.071, 0.028], [0.051, 0.0, 0.0, 0.0], [0.052, 0.0, 0.0, 0.0], [0.044, 0.0, 0.0, 0.0]];
        for z in 0..4 {
            for x in 0..4 {
                assert!(close(chi.values[z][x], expected[z][x], 1e-12));
            }
        }
        assert!(chi.diagnostics.is_empty());
        assert!(chi.marginal_violations(&printed(), 1e-12).is_empty());
        assert_eq!(chi.model, ModelTag::WorstCase);
    }

    #[test]
    fn worst_case_edge_cases() {
        let perfect = ComplementarySummary::from_fidelities(2, 1.0, 1.0).unwrap();
        let chi = worst_case_chi(&perfect).unwrap();
        assert_eq!(chi, DiagonalChi { model: ModelTag::WorstCase, ..DiagonalChi::ideal(2).unwrap() });

        let bad = ComplementarySummary::from_fidelities(2, 0.6, 0.3).unwrap();
        assert!(matches!(worst_case_chi(&bad), Err(Error::Infeasible(_))));
    }

    #[test]
    fn worst_case_exact_rational() {
        let s = ComplementarySummary::<Rational>::from_marginals(
            2,
            [853, 51, 52, 44].map(|n| Rational::new(n, 1000)).to_vec(),
            [867, 34, 71, 28].map(|n| Rational::new(n, 1000)).to_vec(),
            0.0,
        )
        .unwrap();
        let chi = worst_case_chi(&s).unwrap();
        assert_eq!(chi.process_fidelity(), Rational::new(72, 100));
        assert_eq!(chi.implied_summary(), s);
        let stat = statistical_chi(&s);
        assert_eq!(stat.implied_summary(), s);
        assert_eq!(stat.process_fidelity(), Rational::new(825, 1000));
        assert_eq!(stat.total(), Rational::from_integer(1));
    }

    #[test]
    fn statistical_matches_printed_table() {
        let chi = statistical_chi(&printed());
        let expected = [
            [0.825, 0.0072, 0.0150, 0.0059],
            [0.0146, 0.0093, 0.0194, 0.0077],
            [0.0149, 0.0095, 0.0198, 0.0078],
            [0.0126, 0.0080, 0.0168, 0.0066],
        ];
        for z in 0..4 {
            for x in 0..4 {
                assert!(close(chi.values[z][x], expected[z][x], 1e-4), "({z},{x})");
            }
        }
        assert_eq!(chi.model, ModelTag::Statistical);
        assert!(chi.diagnostics.is_empty());
        assert!(chi.marginal_violations(&printed(), 1e-12).is_empty());

        let errors: Vec<_> = ErrorIndex::all(2).filter(|&i| i != ErrorIndex::IDENTITY).collect();
        let min = errors.iter().min_by(|a, b| chi.get(**a).total_cmp(&chi.get(**b))).unwrap();
        let max = errors.iter().max_by(|a, b| chi.get(**a).total_cmp(&chi.get(**b))).unwrap();
        assert_eq!((*min, *max), (ErrorIndex::new(0, 3), ErrorIndex::new(2, 2)));
        assert!(close(chi.get(*min), 0.0059, 5e-5) && close(chi.get(*max), 0.0198, 5e-5));
    }

    #[test]
    fn printed_coefficient_fails_table() {
        // The (d−1)/d variant doubles every cross term.
        let s = printed();
        let c_wrong = 2.0 * statistical_coefficient(&s);
        assert!(close(c_wrong * s.eta_z(1) * s.eta_x(1), 0.0186, 1e-4));
        assert!(!close(c_wrong * s.eta_z(1) * s.eta_x(1), 0.0093, 1e-3));
    }

    #[test]
    fn statistical_perfect_and_one_sided() {
        let perfect = ComplementarySummary::from_fidelities(2, 1.0, 1.0).unwrap();
        let chi = statistical_chi(&perfect);
        assert_eq!(chi.values, DiagonalChi::<f64>::ideal(2).unwrap().values);
        assert_eq!(chi.model, ModelTag::Statistical);

        let one_sided = ComplementarySummary::from_fidelities(2, 1.0, 0.9).unwrap();
        let chi = statistical_chi(&one_sided);
        assert!(chi.marginal_violations(&one_sided, 1e-12).is_empty());
        assert!(close(chi.process_fidelity(), 0.9, 1e-12));
        assert_eq!(chi.diagnostics.len(), 1);
    }

    #[test]
    fn statistical_clamping() {
        let s = ComplementarySummary::from_fidelities(2, 0.999, 0.5).unwrap();
        let chi = statistical_chi(&s);
        assert_eq!(chi.model, ModelTag::ClampedStatistical);
        assert!(chi.values.iter().flatten().all(|&v| v >= 0.0));
        assert!(close(chi.total(), 1.0, 1e-12));
        assert!(chi.diagnostics.iter().any(|m| m.contains("clamped")));
        assert!(chi.diagnostics.iter().any(|m| m.contains("marginal deviates")));
    }

    #[test]
    fn estimates() {
        assert!(close(process_fidelity_estimate(&printed()), 0.825, 1e-12));
        let perfect = ComplementarySummary::from_fidelities(2, 1.0, 1.0).unwrap();
        assert_eq!(process_fidelity_estimate(&perfect), 1.0);
        let one = ComplementarySummary::from_fidelities(1, 0.9, 0.9).unwrap();
        let est = process_fidelity_estimate(&one);
        assert!(close(est, 0.85, 1e-12));
        assert!(close(average_fidelity_from_process(est, 2), 0.9, 1e-12));

        assert!(close(average_fidelity_from_process(0.825, 4), 0.86, 1e-12));
        assert_eq!(average_fidelity_from_process(1.0, 4), 1.0);
        assert!(close(average_fidelity_from_process(0.0, 4), 0.2, 1e-15));
    }

    #[test]
    fn diagonal_chi_validation() {
        assert!(DiagonalChi::new(1, vec![vec![0.5, 0.5], vec![0.1, 0.0]], ModelTag::Custom).is_err());
        assert!(DiagonalChi::new(1, vec![vec![1.1, -0.1], vec![0.0, 0.0]], ModelTag::Custom).is_err());
        assert!(DiagonalChi::new(1, vec![vec![1.0, 0.0]], ModelTag::Custom).is_err());
        let doc: DiagonalChiFile = serde_json::from_str(
            r#"{"n_qubits":1,"model":"custom","values":[[0.9,0.05],[0.05,0.0]],"diagnostics":[]}"#,
        )
        .unwrap();
        let chi = DiagonalChi::<f64>::from_file(doc).unwrap();
        assert_eq!(serde_json::to_value(chi.to_file()).unwrap()["model"], "custom");
        assert!(serde_json::from_str::<DiagonalChiFile>(r#"{"n_qubits":1,"model":"nope","values":[]}"#).is_err());
    }
}
