//! Complementary error tables and their averaged summary.
//!
//! `z_table[n][f]` is the probability that the run whose ideal output is
//! `|Z_n⟩` produced the outcome `n ⊕ f`; `x_table[k][f]` is the same for the
//! X-basis run with ideal output `|X_k⟩`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::MAX_QUBITS;
use crate::scalar::Real;

pub const DEFAULT_ROW_TOLERANCE: f64 = 2e-3;
pub const STRICT_ROW_TOLERANCE: f64 = 1e-9;

/// Metadata marker appended by [`renormalize_rows`].
pub const RENORMALIZED_FLAG: &str = "[rows renormalized]";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Z,
    X,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Z => "Z",
            Basis::X => "X",
        }
    }

    /// Row label such as `Z_n=01`.
    pub fn row_label(self, row: usize, n_qubits: usize) -> String {
        let var = match self {
            Basis::Z => "Z_n",
            Basis::X => "X_k",
        };
        format!("{var}={row:0width$b}", width = n_qubits)
    }
}

/// JSON document layout of an error-table file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TablesFile {
    pub n_qubits: usize,
    pub z_table: Vec<Vec<f64>>,
    pub x_table: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorTableSet<T> {
    pub n_qubits: usize,
    pub z_table: Vec<Vec<T>>,
    pub x_table: Vec<Vec<T>>,
    pub metadata: String,
}

fn check_dim(n_qubits: usize, len: usize) -> Result<usize> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::QubitCount(n_qubits, MAX_QUBITS));
    }
    if !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    let d = 1usize << n_qubits;
    if len != d {
        return Err(Error::DimensionMismatch { expected: d, found: len });
    }
    Ok(d)
}

impl<T: Real> ErrorTableSet<T> {
    /// Validates entry range and row sums against `row_tolerance`.
    pub fn new(
        n_qubits: usize,
        z_table: Vec<Vec<T>>,
        x_table: Vec<Vec<T>>,
        metadata: impl Into<String>,
        row_tolerance: f64,
    ) -> Result<Self> {
        let t = Self { n_qubits, z_table, x_table, metadata: metadata.into() };
        t.validate(row_tolerance)?;
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn table(&self, basis: Basis) -> &[Vec<T>] {
        match basis {
            Basis::Z => &self.z_table,
            Basis::X => &self.x_table,
        }
    }

    pub fn validate(&self, row_tolerance: f64) -> Result<()> {
        for basis in [Basis::Z, Basis::X] {
            let table = self.table(basis);
            let d = check_dim(self.n_qubits, table.len())?;
            for (n, row) in table.iter().enumerate() {
                if row.len() != d {
                    return Err(Error::DimensionMismatch { expected: d, found: row.len() });
                }
                for (f, &v) in row.iter().enumerate() {
                    if v < T::zero() || v > T::one() {
                        return Err(Error::EntryOutOfRange {
                            table: basis.name(),
                            row: basis.row_label(n, self.n_qubits),
                            col: f,
                            value: v.to_f64(),
                        });
                    }
                }
                let sum = T::sum_of(row.iter().copied());
                let deviation = (sum - T::one()).abs().to_f64();
                if deviation > row_tolerance {
                    return Err(Error::RowSum {
                        table: basis.name(),
                        row: basis.row_label(n, self.n_qubits),
                        sum: sum.to_f64(),
                        deviation,
                        tolerance: row_tolerance,
                    });
                }
            }
        }
        Ok(())
    }

    /// Largest `|row sum − 1|` over both tables.
    pub fn max_row_deviation(&self) -> T {
        self.z_table
            .iter()
            .chain(&self.x_table)
            .map(|r| (T::sum_of(r.iter().copied()) - T::one()).abs())
            .fold(T::zero(), T::max_of)
    }

    pub fn from_file(doc: TablesFile, row_tolerance: f64) -> Result<Self> {
        let conv = |t: Vec<Vec<f64>>| -> Vec<Vec<T>> {
            t.into_iter().map(|r| r.into_iter().map(T::from_f64).collect()).collect()
        };
        for v in doc.z_table.iter().chain(&doc.x_table).flatten() {
            if !v.is_finite() {
                return Err(Error::Schema(format!("non-finite table entry {v}")));
            }
        }
        Self::new(doc.n_qubits, conv(doc.z_table), conv(doc.x_table), doc.metadata.unwrap_or_default(), row_tolerance)
    }

    pub fn to_file(&self) -> TablesFile {
        let conv = |t: &[Vec<T>]| t.iter().map(|r| r.iter().map(|v| v.to_f64()).collect()).collect();
        TablesFile {
            n_qubits: self.n_qubits,
            z_table: conv(&self.z_table),
            x_table: conv(&self.x_table),
            metadata: if self.metadata.is_empty() { None } else { Some(self.metadata.clone()) },
        }
    }

    /// Tables where every input produces its ideal output.
    pub fn ideal(n_qubits: usize) -> Result<Self> {
        let d = check_dim(n_qubits, 1usize.checked_shl(n_qubits as u32).unwrap_or(0))?;
        let table: Vec<Vec<T>> =
            (0..d).map(|_| (0..d).map(|f| if f == 0 { T::one() } else { T::zero() }).collect()).collect();
        Ok(Self { n_qubits, z_table: table.clone(), x_table: table, metadata: "ideal".into() })
    }
}

/// Parses an error-table JSON document and validates it.
pub fn parse_tables<T: Real>(document: &str, row_tolerance: f64) -> Result<ErrorTableSet<T>> {
    let doc: TablesFile = serde_json::from_str(document)?;
    ErrorTableSet::from_file(doc, row_tolerance)
}

/// `p_z[0] = F_Z`, `p_z[f] = η_Z(f)` for `f ≥ 1`; likewise for `p_x`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplementarySummary<T> {
    pub n_qubits: usize,
    pub p_z: Vec<T>,
    pub p_x: Vec<T>,
}

impl<T: Real> ComplementarySummary<T> {
    /// Builds a summary from marginal vectors, checking nonnegativity and that
    /// each vector sums to one within `tolerance`.
    pub fn from_marginals(n_qubits: usize, p_z: Vec<T>, p_x: Vec<T>, tolerance: f64) -> Result<Self> {
        let d = check_dim(n_qubits, p_z.len())?;
        if p_x.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: p_x.len() });
        }
        for (basis, v) in [(Basis::Z, &p_z), (Basis::X, &p_x)] {
            if let Some((f, x)) = v.iter().enumerate().find(|(_, &x)| x < T::zero() || x > T::one()) {
                return Err(Error::EntryOutOfRange {
                    table: basis.name(),
                    row: "summary".into(),
                    col: f,
                    value: x.to_f64(),
                });
            }
            let sum = T::sum_of(v.iter().copied());
            let deviation = (sum - T::one()).abs().to_f64();
            if deviation > tolerance {
                return Err(Error::RowSum {
                    table: basis.name(),
                    row: "summary".into(),
                    sum: sum.to_f64(),
                    deviation,
                    tolerance,
                });
            }
        }
        Ok(Self { n_qubits, p_z, p_x })
    }

    /// Summary of a process that only ever errs with the given pair of
    /// fidelities, spreading the error mass uniformly. Handy for tests.
    pub fn from_fidelities(n_qubits: usize, f_z: T, f_x: T) -> Result<Self> {
        let d = check_dim(n_qubits, 1usize.checked_shl(n_qubits as u32).unwrap_or(0))?;
        let spread = |f: T| {
            let eta = (T::one() - f) / T::from_usize(d - 1);
            (0..d).map(|i| if i == 0 { f } else { eta }).collect::<Vec<_>>()
        };
        Self::from_marginals(n_qubits, spread(f_z), spread(f_x), STRICT_ROW_TOLERANCE)
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn fidelity_z(&self) -> T {
        self.p_z[0]
    }

    pub fn fidelity_x(&self) -> T {
        self.p_x[0]
    }

    pub fn eta_z(&self, f_z: usize) -> T {
        self.p_z[f_z]
    }

    pub fn eta_x(&self, f_x: usize) -> T {
        self.p_x[f_x]
    }

    /// Every entry rounded to `decimals` places, as printed tables do.
    pub fn rounded(&self, decimals: i32) -> Self {
        let scale = 10f64.powi(decimals);
        let r = |v: &Vec<T>| v.iter().map(|x| T::from_f64((x.to_f64() * scale).round() / scale)).collect();
        Self { n_qubits: self.n_qubits, p_z: r(&self.p_z), p_x: r(&self.p_x) }
    }

    /// `(Σ p_z − 1, Σ p_x − 1)`.
    pub fn normalization_error(&self) -> (T, T) {
        (T::sum_of(self.p_z.iter().copied()) - T::one(), T::sum_of(self.p_x.iter().copied()) - T::one())
    }
}

fn column_means<T: Real>(table: &[Vec<T>]) -> Vec<T> {
    let d = table.len();
    let scale = T::from_usize(d);
    (0..d).map(|f| T::sum_of(table.iter().map(|row| row[f])) / scale).collect()
}

/// Averages the conditional probabilities over the `d` inputs of each basis.
pub fn summarize<T: Real>(t: &ErrorTableSet<T>) -> ComplementarySummary<T> {
    ComplementarySummary { n_qubits: t.n_qubits, p_z: column_means(&t.z_table), p_x: column_means(&t.x_table) }
}

/// Divides every row by its sum.
pub fn renormalize_rows<T: Real>(t: &ErrorTableSet<T>) -> Result<ErrorTableSet<T>> {
    let norm = |basis: Basis, table: &[Vec<T>]| -> Result<Vec<Vec<T>>> {
        table
            .iter()
            .enumerate()
            .map(|(n, row)| {
                let sum = T::sum_of(row.iter().copied());
                if sum <= T::zero() {
                    return Err(Error::ZeroRow { table: basis.name(), row: basis.row_label(n, t.n_qubits) });
                }
                Ok(row.iter().map(|&v| v / sum).collect())
            })
            .collect()
    };
    let metadata = if t.metadata.contains(RENORMALIZED_FLAG) {
        t.metadata.clone()
    } else if t.metadata.is_empty() {
        RENORMALIZED_FLAG.to_string()
    } else {
        format!("{} {RENORMALIZED_FLAG}", t.metadata)
    };
    Ok(ErrorTableSet {
        n_qubits: t.n_qubits,
        z_table: norm(Basis::Z, &t.z_table)?,
        x_table: norm(Basis::X, &t.x_table)?,
        metadata,
    })
}
