//! Coefficient extraction for the general system
//! `2α_ii + Σ_{j≠i} α_ij = ℓ_i`, any k and any right-hand side.
//!
//! The count is the coefficient of `x_1^ℓ_1 ⋯ x_k^ℓ_k` in
//! `Π_{i≤j} 1/(1 − x_i x_j)`. Each factor is folded into a dense table over
//! budget vectors `[0, ℓ_1] × ⋯ × [0, ℓ_k]` with the in-place unbounded
//! knapsack recurrence `T[v] += T[v − step]`, diagonal variables first.
//!
//! Cells start as `u128` with checked addition; on overflow the table is
//! rebuilt with `BigUint` cells.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::count::BigCount;

pub const DEFAULT_MAX_CELLS: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("table needs {cells} cells, above the cap of {max_cells}")]
    Capacity { cells: u128, max_cells: u64 },
    #[error("at least one equation is required")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GfConfig {
    pub max_cells: u64,
}

impl Default for GfConfig {
    fn default() -> Self {
        GfConfig {
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

trait Cell: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    /// `self += other`; false on overflow.
    fn accumulate(&mut self, other: &Self) -> bool;
    fn into_count(self) -> BigCount;
}

impl Cell for u128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn accumulate(&mut self, other: &Self) -> bool {
        match self.checked_add(*other) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn into_count(self) -> BigCount {
        BigCount::from(self)
    }
}

impl Cell for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn accumulate(&mut self, other: &Self) -> bool {
        *self += other;
        true
    }
    fn into_count(self) -> BigCount {
        BigCount::from(self)
    }
}

/// Dense table of coefficients indexed by budget vectors, row-major.
#[derive(Debug, Clone)]
struct BudgetTable<C> {
    dims: Vec<usize>,
    strides: Vec<usize>,
    cells: Vec<C>,
}

fn cell_count(dims: &[usize]) -> u128 {
    dims.iter().map(|&d| d as u128).product()
}

fn check_capacity(dims: &[usize], config: &GfConfig) -> Result<usize, GfError> {
    if dims.is_empty() {
        return Err(GfError::Empty);
    }
    let cells = cell_count(dims);
    if cells > config.max_cells as u128 {
        return Err(GfError::Capacity {
            cells,
            max_cells: config.max_cells,
        });
    }
    Ok(cells as usize)
}

impl<C: Cell> BudgetTable<C> {
    /// Table holding the constant series 1.
    fn unit(dims: Vec<usize>, len: usize) -> Self {
        let mut strides = vec![1usize; dims.len()];
        for d in (0..dims.len().saturating_sub(1)).rev() {
            strides[d] = strides[d + 1] * dims[d + 1];
        }
        let mut cells = vec![C::zero(); len];
        cells[0] = C::one();
        BudgetTable {
            dims,
            strides,
            cells,
        }
    }

    /// Multiplies by `1/(1 − x_i x_j)` (or `1/(1 − x_i²)` when i = j).
    /// Returns false on cell overflow.
    fn fold_variable(&mut self, i: usize, j: usize) -> bool {
        // i ≤ j; j is the innermost constrained dimension
        let need_j = if i == j { 2 } else { 1 };
        if self.dims[j] <= need_j || self.dims[i] <= 1 {
            return true;
        }
        let offset = self.strides[i] + self.strides[j];
        let block = self.dims[j] * self.strides[j];
        let start = need_j * self.strides[j];
        for base in (0..self.cells.len()).step_by(block) {
            if i != j && (base / self.strides[i]) % self.dims[i] == 0 {
                continue;
            }
            for idx in base + start..base + block {
                let (lo, hi) = self.cells.split_at_mut(idx);
                if !hi[0].accumulate(&lo[idx - offset]) {
                    return false;
                }
            }
        }
        true
    }

    fn fold_all(&mut self) -> bool {
        let k = self.dims.len();
        let diagonals = (0..k).map(|i| (i, i));
        let off = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)));
        diagonals.chain(off).all(|(i, j)| self.fold_variable(i, j))
    }

    fn get(&self, at: &[usize]) -> &C {
        let idx: usize = at.iter().zip(&self.strides).map(|(a, s)| a * s).sum();
        &self.cells[idx]
    }
}

/// Runs `read` on a fully folded table, in u128 first and BigUint on
/// overflow.
fn with_table<R>(
    dims: Vec<usize>,
    len: usize,
    read: impl Fn(&dyn Fn(&[usize]) -> BigCount) -> R,
) -> R {
    let mut small = BudgetTable::<u128>::unit(dims.clone(), len);
    if small.fold_all() {
        return read(&|at| small.get(at).into_count());
    }
    drop(small);
    let mut big = BudgetTable::<BigUint>::unit(dims, len);
    assert!(big.fold_all());
    read(&|at| big.get(at).clone().into_count())
}

/// Exact number of nonnegative solutions for right-hand sides `rhs`.
pub fn count_general(rhs: &[u64], config: &GfConfig) -> Result<BigCount, GfError> {
    let dims: Vec<usize> = rhs.iter().map(|&l| l as usize + 1).collect();
    let len = check_capacity(&dims, config)?;
    if rhs.iter().sum::<u64>() % 2 == 1 {
        return Ok(BigCount::zero());
    }
    let at: Vec<usize> = rhs.iter().map(|&l| l as usize).collect();
    Ok(with_table(dims, len, |get| get(&at)))
}

/// Counts for every uniform right-hand side `[ℓ; k]`, ℓ = 0..=lmax, read
/// from one table.
pub fn count_general_table(
    k: usize,
    lmax: u64,
    config: &GfConfig,
) -> Result<Vec<BigCount>, GfError> {
    let dims = vec![lmax as usize + 1; k];
    let len = check_capacity(&dims, config)?;
    Ok(with_table(dims, len, |get| {
        (0..=lmax as usize).map(|l| get(&vec![l; k])).collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{count_theorem, d_odd, floyd_f};
    use crate::oracle::count_bruteforce;
    use crate::system::{SystemKind, SystemSpec};
    use proptest::prelude::*;

    fn cfg() -> GfConfig {
        GfConfig::default()
    }

    fn oracle(rhs: &[u64]) -> BigCount {
        let spec = SystemSpec::new(SystemKind::General, rhs.iter().map(|&l| l as i64).collect());
        count_bruteforce(&spec.validate().unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(count_general(&[1, 1, 1, 1], &cfg()).unwrap(), 3);
        assert_eq!(
            count_general(&[1, 1, 1, 1], &cfg()).unwrap(),
            d_odd(1).unwrap()
        );
        assert!(count_general(&[1, 1, 1, 2], &cfg()).unwrap().is_zero());
        for l in (0..=20u64).step_by(2) {
            assert_eq!(count_general(&[l, l, l], &cfg()).unwrap(), floyd_f(l));
        }
    }

    #[test]
    fn tables() {
        let t = |k, lmax| count_general_table(k, lmax, &cfg()).unwrap();
        let v = |xs: &[u64]| xs.iter().map(|&x| BigCount::from(x)).collect::<Vec<_>>();
        assert_eq!(t(4, 2), v(&[1, 3, 17]));
        assert_eq!(t(3, 2), v(&[1, 0, 5]));
        assert_eq!(t(1, 4), v(&[1, 0, 1, 0, 1]));
    }

    #[test]
    fn uniform_matches_closed_form() {
        let table = count_general_table(4, 40, &cfg()).unwrap();
        for (l, v) in table.iter().enumerate() {
            assert_eq!(*v, count_theorem(l as u64), "l={l}");
        }
    }

    #[test]
    fn capacity_is_enforced() {
        let tight = GfConfig { max_cells: 100 };
        assert!(matches!(
            count_general(&[4, 4, 4], &tight),
            Err(GfError::Capacity {
                cells: 125,
                max_cells: 100
            })
        ));
        assert!(count_general(&[3, 3, 3], &tight).is_ok());
        assert!(matches!(count_general(&[], &cfg()), Err(GfError::Empty)));
    }

    #[test]
    fn big_cells_agree_with_small_cells() {
        let mut c = u128::MAX - 1;
        assert!(c.accumulate(&1));
        assert!(!c.accumulate(&1));
        let dims = vec![7usize; 3];
        let mut small = BudgetTable::<u128>::unit(dims.clone(), 343);
        let mut big = BudgetTable::<BigUint>::unit(dims, 343);
        assert!(small.fold_all() && big.fold_all());
        for l in 0..7 {
            assert_eq!(
                small.get(&[l; 3]).into_count(),
                big.get(&[l; 3]).clone().into_count()
            );
        }
    }

    #[test]
    fn single_and_pair_systems() {
        // 2α11 = ℓ
        assert_eq!(count_general(&[6], &cfg()).unwrap(), 1);
        // 2α11 + α12 = a, α12 + 2α22 = b
        for a in 0..8u64 {
            for b in 0..8u64 {
                assert_eq!(count_general(&[a, b], &cfg()).unwrap(), oracle(&[a, b]));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn matches_oracle(rhs in proptest::collection::vec(0u64..=6, 3..=4)) {
            prop_assert_eq!(count_general(&rhs, &cfg()).unwrap(), oracle(&rhs));
        }

        #[test]
        fn permutation_invariant(rhs in proptest::collection::vec(0u64..=8, 3..=5), rot in 0usize..5) {
            let base = count_general(&rhs, &cfg()).unwrap();
            let mut r = rhs.clone();
            let n = r.len();
            r.rotate_left(rot % n);
            prop_assert_eq!(count_general(&r, &cfg()).unwrap(), base.clone());
            r.swap(0, n - 1);
            prop_assert_eq!(count_general(&r, &cfg()).unwrap(), base);
        }
    }
}
