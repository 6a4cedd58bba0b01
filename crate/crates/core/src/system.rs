//! Structured systems, solution matrices and the shared vocabulary of the
//! counting engines.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("system {kind} expects {expected} right-hand sides, got {got}")]
    WrongArity {
        kind: SystemKind,
        expected: usize,
        got: usize,
    },
    #[error("right-hand side {index} is negative ({value})")]
    NegativeRhs { index: usize, value: i64 },
    #[error("a general system needs at least one equation")]
    Empty,
    #[error("reduced right-hand side {value} is outside [0, {level}] or has the wrong parity")]
    BadReducedRhs { level: u64, value: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    /// Four equations, the full symmetric system.
    Full4,
    /// Three equations (the four-equation system with α_i4 = 0).
    Floyd3,
    /// Any number of equations.
    General,
}

impl SystemKind {
    /// Number of equations this kind forces, if any.
    pub fn fixed_arity(self) -> Option<usize> {
        match self {
            SystemKind::Full4 => Some(4),
            SystemKind::Floyd3 => Some(3),
            SystemKind::General => None,
        }
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemKind::Full4 => "full4",
            SystemKind::Floyd3 => "floyd3",
            SystemKind::General => "general",
        })
    }
}

/// An unchecked system description, as it arrives from a user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSpec {
    pub kind: SystemKind,
    pub k: usize,
    pub rhs: Vec<i64>,
}

impl SystemSpec {
    pub fn new(kind: SystemKind, rhs: Vec<i64>) -> Self {
        let k = kind.fixed_arity().unwrap_or(rhs.len());
        SystemSpec { kind, k, rhs }
    }

    /// `[l; k]` for the kind's arity (`k` is only consulted for `General`).
    pub fn uniform(kind: SystemKind, k: usize, l: i64) -> Self {
        let k = kind.fixed_arity().unwrap_or(k);
        SystemSpec {
            kind,
            k,
            rhs: vec![l; k],
        }
    }

    pub fn validate(&self) -> Result<ValidatedSpec, SpecError> {
        validate(self)
    }
}

/// A structurally valid system. Right-hand sides are nonnegative and their
/// number matches the arity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidatedSpec {
    kind: SystemKind,
    rhs: Vec<u64>,
    sum_even: bool,
}

impl ValidatedSpec {
    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn k(&self) -> usize {
        self.rhs.len()
    }

    pub fn rhs(&self) -> &[u64] {
        &self.rhs
    }

    /// Every variable adds 2 to Σ ℓ_i, so an odd sum admits no solution.
    pub fn sum_is_even(&self) -> bool {
        self.sum_even
    }

    /// The common value when all right-hand sides are equal.
    pub fn uniform_level(&self) -> Option<u64> {
        let first = *self.rhs.first()?;
        self.rhs.iter().all(|&l| l == first).then_some(first)
    }
}

pub fn validate(spec: &SystemSpec) -> Result<ValidatedSpec, SpecError> {
    let expected = spec.kind.fixed_arity().unwrap_or(spec.k);
    if spec.rhs.len() != expected || spec.k != expected {
        return Err(SpecError::WrongArity {
            kind: spec.kind,
            expected,
            got: spec.rhs.len(),
        });
    }
    if expected == 0 {
        return Err(SpecError::Empty);
    }
    let rhs = spec
        .rhs
        .iter()
        .enumerate()
        .map(|(index, &value)| {
            u64::try_from(value).map_err(|_| SpecError::NegativeRhs { index, value })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let sum_even = rhs.iter().fold(0u64, |acc, &l| acc ^ (l & 1)) == 0;
    Ok(ValidatedSpec {
        kind: spec.kind,
        rhs,
        sum_even,
    })
}

/// A symmetric nonnegative integer matrix (α_ij).
///
/// The full matrix is stored; the wire form is the upper triangle, row-major:
/// `{"k":4,"alpha":[[a11,a12,a13,a14],[a22,a23,a24],[a33,a34],[a44]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolutionMatrix {
    k: usize,
    alpha: Vec<u64>,
}

impl SolutionMatrix {
    pub fn zero(k: usize) -> Self {
        SolutionMatrix {
            k,
            alpha: vec![0; k * k],
        }
    }

    /// Builds a matrix from the upper triangle in row-major order
    /// (α11, α12, …, α1k, α22, …, αkk).
    pub fn from_upper_triangle(k: usize, upper: &[u64]) -> Option<Self> {
        if upper.len() != k * (k + 1) / 2 {
            return None;
        }
        let mut m = SolutionMatrix::zero(k);
        let mut it = upper.iter();
        for i in 0..k {
            for j in i..k {
                m.set(i, j, *it.next()?);
            }
        }
        Some(m)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.alpha[i * self.k + j]
    }

    /// Sets α_ij and α_ji.
    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        self.alpha[i * self.k + j] = value;
        self.alpha[j * self.k + i] = value;
    }

    pub fn upper_triangle(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.k * (self.k + 1) / 2);
        for i in 0..self.k {
            for j in i..self.k {
                out.push(self.get(i, j));
            }
        }
        out
    }

    /// 2·α_ii + Σ_{j≠i} α_ij.
    pub fn row_total(&self, i: usize) -> u64 {
        (0..self.k)
            .map(|j| {
                if j == i {
                    2 * self.get(i, i)
                } else {
                    self.get(i, j)
                }
            })
            .sum()
    }

    pub fn satisfies(&self, rhs: &[u64]) -> bool {
        rhs.len() == self.k && (0..self.k).all(|i| self.row_total(i) == rhs[i])
    }

    /// `ℓ_ii = ℓ − 2α_ii` for a k = 4 solution of the uniform system at `l`.
    pub fn reduced_rhs(&self, l: u64) -> Option<ReducedRhs> {
        if self.k != 4 {
            return None;
        }
        let r = |i: usize| l.checked_sub(2 * self.get(i, i));
        Some(ReducedRhs {
            l11: r(0)?,
            l22: r(1)?,
            l33: r(2)?,
            l44: r(3)?,
        })
    }
}

impl PartialOrd for SolutionMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SolutionMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        self.k
            .cmp(&other.k)
            .then_with(|| self.upper_triangle().cmp(&other.upper_triangle()))
    }
}

#[derive(Serialize, Deserialize)]
struct CanonicalMatrix {
    k: usize,
    alpha: Vec<Vec<u64>>,
}

impl Serialize for SolutionMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let alpha = (0..self.k)
            .map(|i| (i..self.k).map(|j| self.get(i, j)).collect())
            .collect();
        CanonicalMatrix { k: self.k, alpha }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SolutionMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let c = CanonicalMatrix::deserialize(deserializer)?;
        if c.alpha.len() != c.k
            || c.alpha
                .iter()
                .enumerate()
                .any(|(i, row)| row.len() != c.k - i)
        {
            return Err(D::Error::custom(
                "alpha must be the upper triangle of a k×k matrix",
            ));
        }
        let flat: Vec<u64> = c.alpha.into_iter().flatten().collect();
        SolutionMatrix::from_upper_triangle(c.k, &flat)
            .ok_or_else(|| D::Error::custom("inconsistent upper triangle"))
    }
}

/// Budgets left for the off-diagonal variables once the diagonal of a
/// uniform k = 4 system is fixed: `ℓ_ii = ℓ − 2α_ii`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReducedRhs {
    pub l11: u64,
    pub l22: u64,
    pub l33: u64,
    pub l44: u64,
}

impl ReducedRhs {
    pub fn new(l11: u64, l22: u64, l33: u64, l44: u64) -> Self {
        ReducedRhs { l11, l22, l33, l44 }
    }

    /// Checks every entry lies in `[0, l]` with the parity of `l`.
    pub fn for_level(l: u64, l11: u64, l22: u64, l33: u64, l44: u64) -> Result<Self, SpecError> {
        for value in [l11, l22, l33, l44] {
            if value > l || (l - value) % 2 != 0 {
                return Err(SpecError::BadReducedRhs { level: l, value });
            }
        }
        Ok(ReducedRhs { l11, l22, l33, l44 })
    }

    /// Δ = −ℓ11 − ℓ22 + ℓ33 + ℓ44; on every solution Δ = 2α34 − 2α12.
    pub fn delta(&self) -> i128 {
        (self.l33 as i128 + self.l44 as i128) - (self.l11 as i128 + self.l22 as i128)
    }

    pub fn as_array(&self) -> [u64; 4] {
        [self.l11, self.l22, self.l33, self.l44]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeltaClass {
    Negative,
    Zero,
    Positive,
}

impl DeltaClass {
    pub fn flipped(self) -> Self {
        match self {
            DeltaClass::Negative => DeltaClass::Positive,
            DeltaClass::Zero => DeltaClass::Zero,
            DeltaClass::Positive => DeltaClass::Negative,
        }
    }
}

pub fn classify_delta(r: &ReducedRhs) -> DeltaClass {
    match (r.l33 + r.l44).cmp(&(r.l11 + r.l22)) {
        Ordering::Less => DeltaClass::Negative,
        Ordering::Equal => DeltaClass::Zero,
        Ordering::Greater => DeltaClass::Positive,
    }
}

/// `l mod 4`; the aggregation over diagonals depends on it.
pub fn residue_class(l: u64) -> u8 {
    (l % 4) as u8
}
