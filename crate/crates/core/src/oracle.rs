//! Brute-force reference engine.
//!
//! Walks the upper-triangle variables (α11, α12, …, α1k, α22, …, αkk) in
//! lexicographic order. Each variable is bounded by the residual budgets of
//! the rows it touches; the last variable of every row block is forced, since
//! the row equation determines it. No memoization: this engine is meant to be
//! obviously correct, not fast.

use std::ops::RangeInclusive;

use crate::count::BigCount;
use crate::system::{
    classify_delta, DeltaClass, ReducedRhs, SolutionMatrix, SpecError, ValidatedSpec,
};

#[derive(Debug, Clone)]
struct Layout {
    k: usize,
    vars: Vec<(usize, usize)>,
}

impl Layout {
    fn new(k: usize) -> Self {
        let vars = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
        Layout { k, vars }
    }

    fn len(&self) -> usize {
        self.vars.len()
    }

    /// Admissible values of variable `p` given the residual budgets.
    fn range(&self, p: usize, budgets: &[u64]) -> Option<RangeInclusive<u64>> {
        let (i, j) = self.vars[p];
        let last = self.k - 1;
        if i == j {
            if i == last {
                let b = budgets[i];
                return (b % 2 == 0).then_some(b / 2..=b / 2);
            }
            Some(0..=budgets[i] / 2)
        } else if j == last {
            // closes row i
            let b = budgets[i];
            (b <= budgets[j]).then_some(b..=b)
        } else {
            Some(0..=budgets[i].min(budgets[j]))
        }
    }

    fn take(&self, p: usize, v: u64, budgets: &mut [u64]) {
        let (i, j) = self.vars[p];
        if i == j {
            budgets[i] -= 2 * v;
        } else {
            budgets[i] -= v;
            budgets[j] -= v;
        }
    }

    fn give_back(&self, p: usize, v: u64, budgets: &mut [u64]) {
        let (i, j) = self.vars[p];
        if i == j {
            budgets[i] += 2 * v;
        } else {
            budgets[i] += v;
            budgets[j] += v;
        }
    }

    fn count_from(&self, p: usize, budgets: &mut [u64]) -> u128 {
        if p == self.len() {
            return 1;
        }
        let Some(range) = self.range(p, budgets) else {
            return 0;
        };
        let mut total = 0u128;
        for v in range {
            self.take(p, v, budgets);
            total = total
                .checked_add(self.count_from(p + 1, budgets))
                .expect("oracle count exceeds u128");
            self.give_back(p, v, budgets);
        }
        total
    }
}

/// Lazy, lexicographically ordered stream of solutions.
#[derive(Debug, Clone)]
pub struct Solutions {
    layout: Layout,
    budgets: Vec<u64>,
    values: Vec<u64>,
    remaining: Option<usize>,
    started: bool,
    done: bool,
}

impl Solutions {
    fn new(rhs: &[u64], limit: Option<usize>) -> Self {
        let layout = Layout::new(rhs.len());
        let n = layout.len();
        Solutions {
            layout,
            budgets: rhs.to_vec(),
            values: vec![0; n],
            remaining: limit,
            started: false,
            done: false,
        }
    }

    fn matrix(&self) -> SolutionMatrix {
        SolutionMatrix::from_upper_triangle(self.layout.k, &self.values)
            .expect("layout length matches k")
    }

    /// Assigns variables `p..` at their smallest admissible values,
    /// backtracking as needed. Returns false once the search space is
    /// exhausted.
    fn descend(&mut self, mut p: usize) -> bool {
        let n = self.layout.len();
        loop {
            if p == n {
                return true;
            }
            match self.layout.range(p, &self.budgets) {
                Some(r) => {
                    let v = *r.start();
                    self.values[p] = v;
                    self.layout.take(p, v, &mut self.budgets);
                    p += 1;
                }
                None => match self.bump(p) {
                    Some(next) => p = next,
                    None => return false,
                },
            }
        }
    }

    /// Undoes variables below `p` until one can be incremented; returns the
    /// position to resume descending from.
    fn bump(&mut self, mut p: usize) -> Option<usize> {
        while p > 0 {
            p -= 1;
            let v = self.values[p];
            self.layout.give_back(p, v, &mut self.budgets);
            let range = self.layout.range(p, &self.budgets)?;
            if v < *range.end() {
                self.values[p] = v + 1;
                self.layout.take(p, v + 1, &mut self.budgets);
                return Some(p + 1);
            }
        }
        None
    }
}

impl Iterator for Solutions {
    type Item = SolutionMatrix;

    fn next(&mut self) -> Option<SolutionMatrix> {
        if self.done || self.remaining == Some(0) {
            return None;
        }
        let found = if !self.started {
            self.started = true;
            self.descend(0)
        } else {
            match self.bump(self.layout.len()) {
                Some(p) => self.descend(p),
                None => false,
            }
        };
        if !found {
            self.done = true;
            return None;
        }
        if let Some(r) = self.remaining.as_mut() {
            *r -= 1;
        }
        Some(self.matrix())
    }
}

/// All solutions of `spec`, in strict lexicographic order of the upper
/// triangle, stopping after `limit` items when given.
pub fn enumerate_solutions(spec: &ValidatedSpec, limit: Option<usize>) -> Solutions {
    let mut s = Solutions::new(spec.rhs(), limit);
    if !spec.sum_is_even() {
        s.done = true;
    }
    s
}

pub fn count_bruteforce(spec: &ValidatedSpec) -> BigCount {
    if !spec.sum_is_even() {
        return BigCount::zero();
    }
    let layout = Layout::new(spec.k());
    let mut budgets = spec.rhs().to_vec();
    BigCount::from(layout.count_from(0, &mut budgets))
}

/// Number of off-diagonal six-tuples (α12, α13, α14, α23, α24, α34) with the
/// row sums ℓ11, ℓ22, ℓ33, ℓ44 (the k = 4 system with its diagonal fixed).
///
/// `r` must lie in `[0, l]` with the parity of `l`.
pub fn count_fixed_diagonal(l: u64, r: &ReducedRhs) -> Result<BigCount, SpecError> {
    let r = ReducedRhs::for_level(l, r.l11, r.l22, r.l33, r.l44)?;
    Ok(BigCount::from(fixed_diagonal_raw(&r)))
}

fn fixed_diagonal_raw(r: &ReducedRhs) -> u64 {
    let [a, b, c, d] = r.as_array();
    let mut n = 0;
    for a12 in 0..=a.min(b) {
        for a13 in 0..=(a - a12).min(c) {
            let a14 = a - a12 - a13;
            if a14 > d {
                continue;
            }
            for a23 in 0..=(b - a12).min(c - a13) {
                let a24 = b - a12 - a23;
                let a34 = c - a13 - a23;
                if a14 + a24 + a34 == d {
                    n += 1;
                }
            }
        }
    }
    n
}

/// Σ of [`count_fixed_diagonal`] over every (ℓ33, ℓ44) ∈ [0, l]² of the
/// parity of `l` whose Δ class is `class`.
pub fn count_fixed_diagonal_by_delta(
    l: u64,
    l11: u64,
    l22: u64,
    class: DeltaClass,
) -> Result<BigCount, SpecError> {
    ReducedRhs::for_level(l, l11, l22, l % 2, l % 2)?;
    let start = l % 2;
    let mut total = 0u64;
    for l33 in (start..=l).step_by(2) {
        for l44 in (start..=l).step_by(2) {
            let r = ReducedRhs::new(l11, l22, l33, l44);
            if classify_delta(&r) == class {
                total += fixed_diagonal_raw(&r);
            }
        }
    }
    Ok(BigCount::from(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{SystemKind, SystemSpec};
    use proptest::prelude::*;

    fn spec(kind: SystemKind, rhs: &[i64]) -> ValidatedSpec {
        SystemSpec::new(kind, rhs.to_vec()).validate().unwrap()
    }

    /// Full Cartesian search over every upper-triangle tuple with entries
    /// bounded by the largest right-hand side.
    fn naive_solutions(rhs: &[u64]) -> Vec<SolutionMatrix> {
        let k = rhs.len();
        let n = k * (k + 1) / 2;
        let bound = rhs.iter().copied().max().unwrap_or(0);
        let mut out = Vec::new();
        let mut tuple = vec![0u64; n];
        loop {
            let m = SolutionMatrix::from_upper_triangle(k, &tuple).unwrap();
            if m.satisfies(rhs) {
                out.push(m);
            }
            // odometer, last position fastest → lexicographic order
            let mut p = n;
            loop {
                if p == 0 {
                    return out;
                }
                p -= 1;
                if tuple[p] < bound {
                    tuple[p] += 1;
                    break;
                }
                tuple[p] = 0;
            }
        }
    }

    #[test]
    fn zero_rhs_has_only_the_zero_matrix() {
        let sols: Vec<_> =
            enumerate_solutions(&spec(SystemKind::Full4, &[0, 0, 0, 0]), None).collect();
        assert_eq!(sols, vec![SolutionMatrix::zero(4)]);
    }

    #[test]
    fn unit_rhs_gives_the_three_perfect_matchings() {
        let sols: Vec<_> =
            enumerate_solutions(&spec(SystemKind::Full4, &[1, 1, 1, 1]), None).collect();
        let expected: Vec<_> = [
            [0, 0, 0, 1, 0, 1, 0, 0, 0, 0], // α14 = α23 = 1
            [0, 0, 1, 0, 0, 0, 1, 0, 0, 0], // α13 = α24 = 1
            [0, 1, 0, 0, 0, 0, 0, 0, 1, 0], // α12 = α34 = 1
        ]
        .iter()
        .map(|u| SolutionMatrix::from_upper_triangle(4, u).unwrap())
        .collect();
        assert_eq!(sols, expected);
        assert_eq!(sols, naive_solutions(&[1, 1, 1, 1]));
    }

    #[test]
    fn odd_sum_stream_is_empty() {
        assert_eq!(
            enumerate_solutions(&spec(SystemKind::Full4, &[1, 1, 1, 2]), None).count(),
            0
        );
        assert!(count_bruteforce(&spec(SystemKind::Full4, &[1, 1, 1, 2])).is_zero());
    }

    #[test]
    fn limit_truncates() {
        let s = spec(SystemKind::Full4, &[2, 2, 2, 2]);
        assert_eq!(enumerate_solutions(&s, Some(1)).count(), 1);
        assert_eq!(enumerate_solutions(&s, Some(5)).count(), 5);
        assert_eq!(enumerate_solutions(&s, Some(0)).count(), 0);
        assert_eq!(enumerate_solutions(&s, Some(100)).count(), 17);
    }

    #[test]
    fn small_counts() {
        assert_eq!(
            count_bruteforce(&spec(SystemKind::Full4, &[2, 2, 2, 2])),
            17
        );
        assert_eq!(count_bruteforce(&spec(SystemKind::Floyd3, &[2, 2, 2])), 5);
        assert_eq!(count_bruteforce(&spec(SystemKind::Full4, &[0, 0, 0, 0])), 1);
        assert_eq!(count_bruteforce(&spec(SystemKind::General, &[4])), 1);
        assert_eq!(count_bruteforce(&spec(SystemKind::General, &[3])), 0);
    }

    #[test]
    fn fixed_diagonal_examples() {
        let c = |l, a, b, cc, d| count_fixed_diagonal(l, &ReducedRhs::new(a, b, cc, d)).unwrap();
        assert_eq!(c(2, 0, 0, 0, 0), 1);
        assert_eq!(c(1, 1, 1, 1, 1), 3);
        assert_eq!(c(2, 2, 2, 0, 0), 1);
        assert!(count_fixed_diagonal(2, &ReducedRhs::new(1, 0, 0, 0)).is_err());
    }

    #[test]
    fn by_delta_examples() {
        assert!(count_fixed_diagonal_by_delta(2, 0, 0, DeltaClass::Negative)
            .unwrap()
            .is_zero());
        // only (ℓ33, ℓ44) = (2, 2) has Δ = 0; brute force gives 6 there
        assert_eq!(
            count_fixed_diagonal_by_delta(2, 2, 2, DeltaClass::Zero).unwrap(),
            6
        );
    }

    #[test]
    fn decomposition_is_complete() {
        for l in 0..=8u64 {
            let start = l % 2;
            let mut total = BigCount::zero();
            for a in (start..=l).step_by(2) {
                for b in (start..=l).step_by(2) {
                    for c in (start..=l).step_by(2) {
                        for d in (start..=l).step_by(2) {
                            total += count_fixed_diagonal(l, &ReducedRhs::new(a, b, c, d)).unwrap();
                        }
                    }
                }
            }
            let li = l as i64;
            assert_eq!(
                total,
                count_bruteforce(&spec(SystemKind::Full4, &[li, li, li, li])),
                "l={l}"
            );
        }
    }

    #[test]
    fn delta_identity_holds_on_every_solution() {
        for l in 0..=6u64 {
            let li = l as i64;
            for m in enumerate_solutions(&spec(SystemKind::Full4, &[li; 4]), None) {
                let r = m.reduced_rhs(l).unwrap();
                let lhs = 2 * m.get(2, 3) as i128 - 2 * m.get(0, 1) as i128;
                assert_eq!(lhs, r.delta());
            }
        }
    }

    #[test]
    fn negative_and_positive_classes_mirror() {
        for l in 0..=8u64 {
            let start = l % 2;
            for a in (start..=l).step_by(2) {
                for b in (start..=l).step_by(2) {
                    // Σ over (ℓ33,ℓ44) with Δ<0 at fixed (a,b) equals the Δ>0
                    // count with (a,b) moved to the (ℓ33,ℓ44) slots.
                    let neg = count_fixed_diagonal_by_delta(l, a, b, DeltaClass::Negative).unwrap();
                    let mut pos = BigCount::zero();
                    for c in (start..=l).step_by(2) {
                        for d in (start..=l).step_by(2) {
                            let r = ReducedRhs::new(c, d, a, b);
                            if classify_delta(&r) == DeltaClass::Positive {
                                pos += count_fixed_diagonal(l, &r).unwrap();
                            }
                        }
                    }
                    assert_eq!(neg, pos, "l={l} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn rerun_is_identical() {
        let s = spec(SystemKind::General, &[3, 2, 3, 2, 2]);
        let a: Vec<_> = enumerate_solutions(&s, None).collect();
        let b: Vec<_> = enumerate_solutions(&s, None).collect();
        assert_eq!(a, b);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn stream_matches_naive_search(rhs in proptest::collection::vec(0u64..3, 1..=4)) {
            let s = SystemSpec::new(SystemKind::General, rhs.iter().map(|&x| x as i64).collect())
                .validate().unwrap();
            let got: Vec<_> = enumerate_solutions(&s, None).collect();
            prop_assert!(got.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(&got, &naive_solutions(&rhs));
            prop_assert_eq!(count_bruteforce(&s), BigCount::from(got.len()));
        }

        #[test]
        fn odd_sums_count_zero(mut rhs in proptest::collection::vec(0u64..7, 3..=5)) {
            if rhs.iter().sum::<u64>() % 2 == 0 {
                rhs[0] += 1;
            }
            let s = SystemSpec::new(SystemKind::General, rhs.iter().map(|&x| x as i64).collect())
                .validate().unwrap();
            prop_assert!(count_bruteforce(&s).is_zero());
        }
    }
}
