//! The three-equation system
//!
//! ```text
//! 2α11 + α12 + α13 = ℓ
//! α12 + 2α22 + α23 = ℓ
//! α13 + α23 + 2α33 = ℓ
//! ```
//!
//! With ℓ_ii = ℓ − 2α_ii the off-diagonal part is unique:
//! 2α_ij = ℓ_ii + ℓ_jj − ℓ_kk. Counting solutions is counting admissible
//! triples (ℓ11, ℓ22, ℓ33).

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::count::BigCount;
use crate::system::SolutionMatrix;

/// OEIS A006003, a(n) = n(n² + 1)/2 for n = 0..=20: row sums of Floyd's
/// triangle and the magic constants.
pub const A006003: [u64; 21] = [
    0, 1, 5, 15, 34, 65, 111, 175, 260, 369, 505, 671, 870, 1105, 1379, 1695, 2056, 2465, 2925,
    3439, 4010,
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FloydError {
    #[error("triple {0:?} admits no nonnegative solution")]
    NoSolution(FloydTriple),
    #[error("case sums need an even ℓ, got {0} (odd ℓ has no solutions)")]
    OddInput(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FloydTriple {
    pub l11: u64,
    pub l22: u64,
    pub l33: u64,
}

impl FloydTriple {
    pub fn new(l11: u64, l22: u64, l33: u64) -> Self {
        FloydTriple { l11, l22, l33 }
    }
}

/// (α12, α13, α23).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct OffDiagonal {
    pub a12: u64,
    pub a13: u64,
    pub a23: u64,
}

impl OffDiagonal {
    /// The full 3×3 solution at level `l`, with α_ii = (ℓ − ℓ_ii)/2.
    pub fn to_matrix(self, l: u64, t: FloydTriple) -> Option<SolutionMatrix> {
        let diag = |lii: u64| l.checked_sub(lii).filter(|d| d % 2 == 0).map(|d| d / 2);
        SolutionMatrix::from_upper_triangle(
            3,
            &[
                diag(t.l11)?,
                self.a12,
                self.a13,
                diag(t.l22)?,
                self.a23,
                diag(t.l33)?,
            ],
        )
    }
}

/// |ℓ22 − ℓ11| ≤ ℓ33 ≤ ℓ11 + ℓ22 and ℓ11 + ℓ22 + ℓ33 even.
pub fn floyd_exists(t: FloydTriple) -> bool {
    t.l11.abs_diff(t.l22) <= t.l33 && t.l33 <= t.l11 + t.l22 && (t.l11 + t.l22 + t.l33) % 2 == 0
}

pub fn floyd_solution(t: FloydTriple) -> Result<OffDiagonal, FloydError> {
    if !floyd_exists(t) {
        return Err(FloydError::NoSolution(t));
    }
    let twice = |a: u64, b: u64, c: u64| (a + b - c) / 2;
    Ok(OffDiagonal {
        a12: twice(t.l11, t.l22, t.l33),
        a13: twice(t.l11, t.l33, t.l22),
        a23: twice(t.l22, t.l33, t.l11),
    })
}

/// Every admissible triple at level `l`, lexicographically, with its unique
/// off-diagonal solution. Empty for odd `l`.
pub fn floyd_enumerate(l: u64) -> impl Iterator<Item = (FloydTriple, OffDiagonal)> {
    let evens = move || (0..=l).step_by(2).filter(move |_| l % 2 == 0);
    evens().flat_map(move |a| {
        evens().flat_map(move |b| {
            evens().filter_map(move |c| {
                let t = FloydTriple::new(a, b, c);
                floyd_solution(t).ok().map(|s| (t, s))
            })
        })
    })
}

/// The four partial sums of the count (ℓ11 = ℓ22 or ℓ11 < ℓ22, crossed with
/// ℓ ≥ ℓ11 + ℓ22 or ℓ < ℓ11 + ℓ22); total = f1 + f2 + 2·f3 + 2·f4.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FloydCaseSums {
    pub l: u64,
    pub f1: BigCount,
    pub f2: BigCount,
    pub f3: BigCount,
    pub f4: BigCount,
}

impl FloydCaseSums {
    pub fn total(&self) -> BigCount {
        self.f1.clone() + &self.f2 + &(&self.f3 * 2) + &(&self.f4 * 2)
    }
}

fn evens(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    (lo..=hi).step_by(2)
}

fn count(v: BigInt) -> BigCount {
    BigCount::from_bigint(v).expect("case sums are nonnegative")
}

/// `f4`: ℓ11 < ℓ22 with ℓ < ℓ11 + ℓ22, each pair contributing
/// (ℓ − (ℓ22 − ℓ11))/2 + 1 values of ℓ33.
fn clipped_less(l: i64, first_l22: i64) -> BigInt {
    evens(first_l22, l)
        .flat_map(|b| evens(l - b + 2, b - 2).map(move |a| BigInt::from((l - (b - a)) / 2 + 1)))
        .sum()
}

/// `f3`: ℓ11 < ℓ22 with ℓ ≥ ℓ11 + ℓ22.
fn unclipped_less(l: i64, last_l11: i64) -> BigInt {
    evens(0, last_l11)
        .map(|a| BigInt::from(a + 1) * BigInt::from(l / 2 - a))
        .sum()
}

pub fn floyd_case_sums(l: u64) -> Result<FloydCaseSums, FloydError> {
    if l % 2 == 1 {
        return Err(FloydError::OddInput(l));
    }
    let li = l as i64;
    let h = li / 2;
    let (f1, f2, f3, f4) = if l % 4 == 0 {
        (
            evens(0, h).map(|a| BigInt::from(a + 1)).sum::<BigInt>(),
            BigInt::from(h + 1) * BigInt::from(li / 4),
            unclipped_less(li, h),
            clipped_less(li, h + 2),
        )
    } else {
        // ℓ11 = ℓ22 = ℓ/2 is odd here, so bounds shift to the nearest even point
        (
            evens(0, h - 1).map(|a| BigInt::from(a + 1)).sum::<BigInt>(),
            BigInt::from(h + 1) * BigInt::from(h + 1) / 2,
            unclipped_less(li, h - 1),
            clipped_less(li, h + 3),
        )
    };
    Ok(FloydCaseSums {
        l,
        f1: count(f1),
        f2: count(f2),
        f3: count(f3),
        f4: count(f4),
    })
}

/// Number of solutions at even `l`, from the case sums.
pub fn floyd_count_cases(l: u64) -> Result<BigCount, FloydError> {
    floyd_case_sums(l).map(|s| s.total())
}
