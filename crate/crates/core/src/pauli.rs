//! Unsigned N-qubit Pauli errors and their `(f_z, f_x)` error indices.
//!
//! Bit convention: the leftmost qubit of a tensor product (qubit 1) is the
//! most significant bit of every mask. `I⊗X⊗Y` therefore has `x_mask = 0b011`
//! and `z_mask = 0b001`. Many simulators use the opposite order, so take care
//! when exchanging masks with other tools.
//!
//! An X or Y component flips the bit observed in the Z basis and a Z or Y
//! component flips the bit observed in the X basis, so the error index of a
//! Pauli label is simply `(f_z, f_x) = (x_mask, z_mask)`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 16;

fn check_qubits(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::QubitCount(n_qubits, MAX_QUBITS));
    }
    Ok(())
}

fn mask_fits(mask: u32, n_qubits: usize) -> bool {
    n_qubits >= 32 || mask >> n_qubits == 0
}

fn parity(x: u32) -> bool {
    x.count_ones() % 2 == 1
}

/// A phase-free N-qubit Pauli operator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PauliLabel {
    n_qubits: usize,
    x_mask: u32,
    z_mask: u32,
}

impl PauliLabel {
    pub fn new(n_qubits: usize, x_mask: u32, z_mask: u32) -> Result<Self> {
        check_qubits(n_qubits)?;
        if !mask_fits(x_mask, n_qubits) || !mask_fits(z_mask, n_qubits) {
            return Err(Error::InvalidIndex { f_z: x_mask, f_x: z_mask, n_qubits });
        }
        Ok(Self { n_qubits, x_mask, z_mask })
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        Self::new(n_qubits, 0, 0)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_mask(&self) -> u32 {
        self.x_mask
    }

    pub fn z_mask(&self) -> u32 {
        self.z_mask
    }

    fn bit(&self, qubit: usize) -> u32 {
        1 << (self.n_qubits - 1 - qubit)
    }

    /// Component on `qubit` (0-based from the left) as one of `I`, `X`, `Y`, `Z`.
    pub fn component(&self, qubit: usize) -> char {
        let b = self.bit(qubit);
        match (self.x_mask & b != 0, self.z_mask & b != 0) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }

    fn same_size(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch { expected: self.n_qubits, found: other.n_qubits });
        }
        Ok(())
    }

    /// Product modulo phase.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Ok(Self { n_qubits: self.n_qubits, x_mask: self.x_mask ^ other.x_mask, z_mask: self.z_mask ^ other.z_mask })
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.same_size(other)?;
        Ok(error_index_of(self).commutes_with(error_index_of(other)))
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n_qubits {
            write!(f, "{}", self.component(q))?;
        }
        Ok(())
    }
}

impl FromStr for PauliLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n = s.chars().count();
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidPauli(s.to_string(), format!("length must be 1..={MAX_QUBITS}")));
        }
        let (mut x, mut z) = (0u32, 0u32);
        for c in s.chars() {
            x <<= 1;
            z <<= 1;
            match c {
                'I' => {}
                'X' => x |= 1,
                'Z' => z |= 1,
                'Y' => {
                    x |= 1;
                    z |= 1;
                }
                other => return Err(Error::InvalidPauli(s.to_string(), format!("unexpected character {other:?}"))),
            }
        }
        Self::new(n, x, z)
    }
}

/// Pair of bit-flip patterns observed in the Z basis and in the X basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ErrorIndex {
    pub f_z: u32,
    pub f_x: u32,
}

impl ErrorIndex {
    pub const IDENTITY: ErrorIndex = ErrorIndex { f_z: 0, f_x: 0 };

    pub const fn new(f_z: u32, f_x: u32) -> Self {
        Self { f_z, f_x }
    }

    pub fn fits(&self, n_qubits: usize) -> bool {
        mask_fits(self.f_z, n_qubits) && mask_fits(self.f_x, n_qubits)
    }

    /// Pauli product modulo phase: componentwise XOR.
    pub fn product(self, other: Self) -> Self {
        Self { f_z: self.f_z ^ other.f_z, f_x: self.f_x ^ other.f_x }
    }

    /// Symplectic commutation test.
    pub fn commutes_with(self, other: Self) -> bool {
        parity(self.f_z & other.f_x) == parity(self.f_x & other.f_z)
    }

    /// Position in the `d² × d²` process matrix: `f_z · d + f_x`.
    pub fn linear(self, dim: usize) -> usize {
        self.f_z as usize * dim + self.f_x as usize
    }

    pub fn from_linear(i: usize, dim: usize) -> Self {
        Self { f_z: (i / dim) as u32, f_x: (i % dim) as u32 }
    }

    /// All `d²` indices in linear order.
    pub fn all(n_qubits: usize) -> impl Iterator<Item = ErrorIndex> {
        let d = 1usize << n_qubits;
        (0..d * d).map(move |i| Self::from_linear(i, d))
    }
}

impl fmt::Display for ErrorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.f_z, self.f_x)
    }
}

pub fn error_index_of(p: &PauliLabel) -> ErrorIndex {
    ErrorIndex { f_z: p.x_mask, f_x: p.z_mask }
}

pub fn pauli_of_index(idx: ErrorIndex, n_qubits: usize) -> Result<PauliLabel> {
    PauliLabel::new(n_qubits, idx.f_z, idx.f_x)
}

/// One broken stabilizer-group invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetViolation {
    IndexOverflow(ErrorIndex),
    WrongSize { expected: usize, found: usize },
    Duplicate(ErrorIndex),
    MissingIdentity,
    NotClosed { a: ErrorIndex, b: ErrorIndex, product: ErrorIndex },
    Anticommuting { a: ErrorIndex, b: ErrorIndex },
}

impl fmt::Display for TargetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::IndexOverflow(i) => write!(f, "index {i} does not fit the qubit count"),
            Self::WrongSize { expected, found } => write!(f, "expected {expected} members, found {found}"),
            Self::Duplicate(i) => write!(f, "duplicate member {i}"),
            Self::MissingIdentity => write!(f, "identity (0,0) missing"),
            Self::NotClosed { a, b, product } => write!(f, "{a}·{b} = {product} not a member"),
            Self::Anticommuting { a, b } => write!(f, "{a} and {b} anticommute"),
        }
    }
}

/// Output-stabilizer group of an unmeasured target operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerTarget {
    pub name: String,
    pub n_qubits: usize,
    pub members: Vec<ErrorIndex>,
}

impl StabilizerTarget {
    /// Builds a target and rejects it unless every group invariant holds.
    pub fn new(name: impl Into<String>, n_qubits: usize, members: Vec<ErrorIndex>) -> Result<Self> {
        check_qubits(n_qubits)?;
        let t = Self { name: name.into(), n_qubits, members };
        let violations = validate_target(&t);
        if violations.is_empty() {
            Ok(t)
        } else {
            Err(Error::InvalidTarget { name: t.name, violations })
        }
    }

    pub fn from_paulis<S: AsRef<str>>(name: impl Into<String>, paulis: &[S]) -> Result<Self> {
        let name = name.into();
        let labels = paulis.iter().map(|s| s.as_ref().parse::<PauliLabel>()).collect::<Result<Vec<_>>>()?;
        let n = labels.first().map(|p| p.n_qubits()).ok_or_else(|| Error::InvalidTarget {
            name: name.clone(),
            violations: vec![TargetViolation::MissingIdentity],
        })?;
        if let Some(p) = labels.iter().find(|p| p.n_qubits() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: p.n_qubits() });
        }
        Self::new(name, n, labels.iter().map(error_index_of).collect())
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn paulis(&self) -> Vec<PauliLabel> {
        self.members.iter().filter_map(|&i| pauli_of_index(i, self.n_qubits).ok()).collect()
    }
}

/// Checks identity membership, XOR closure and pairwise commutation.
/// An empty list means the target is a valid stabilizer group of size `d`.
pub fn validate_target(t: &StabilizerTarget) -> Vec<TargetViolation> {
    let mut out = Vec::new();
    let d = 1usize << t.n_qubits.min(MAX_QUBITS);
    if t.members.len() != d {
        out.push(TargetViolation::WrongSize { expected: d, found: t.members.len() });
    }
    let mut set = HashSet::with_capacity(t.members.len());
    for &m in &t.members {
        if !m.fits(t.n_qubits) {
            out.push(TargetViolation::IndexOverflow(m));
        }
        if !set.insert(m) {
            out.push(TargetViolation::Duplicate(m));
        }
    }
    if !set.contains(&ErrorIndex::IDENTITY) {
        out.push(TargetViolation::MissingIdentity);
    }
    let mut distinct: Vec<ErrorIndex> = set.iter().copied().collect();
    distinct.sort();
    for (i, &a) in distinct.iter().enumerate() {
        for &b in &distinct[i + 1..] {
            let product = a.product(b);
            if !set.contains(&product) {
                out.push(TargetViolation::NotClosed { a, b, product });
            }
            if !a.commutes_with(b) {
                out.push(TargetViolation::Anticommuting { a, b });
            }
        }
    }
    out
}
