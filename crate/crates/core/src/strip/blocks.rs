//! The intermediate identities of the aggregation: double sums of case
//! expressions over ranges of (ℓ11, ℓ22), each equal to a stated polynomial
//! on one residue class of ℓ mod 4 (0 for even ℓ, 1 for odd ℓ).
//!
//! Every block is evaluated twice, once as the programmed sum and once as the
//! polynomial, and the two must agree.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use super::cases::{
    case_value, mirror_count, CaseTag, DeltaSign, Parity, Regime, Relation, StripError,
};
use crate::closed_form::{exact_div, horner};
use crate::count::BigCount;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("block {block:?} is stated for ℓ ≡ {expected} (mod 4), got ℓ = {l}")]
    Residue {
        block: BlockId,
        l: u64,
        expected: u64,
    },
    #[error("block {block:?} at ℓ = {l}: sum {sum} ≠ polynomial {polynomial}")]
    Mismatch {
        block: BlockId,
        l: u64,
        sum: BigCount,
        polynomial: BigInt,
    },
    #[error(transparent)]
    Case(#[from] StripError),
}

/// Which partial sum. `*First` covers the unclipped pairs, `*Second` the
/// clipped ones, and the unsuffixed variant is their total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BlockPart {
    NegativeLessFirst,
    NegativeLessSecond,
    NegativeLess,
    NegativeEqualFirst,
    NegativeEqualSecond,
    NegativeEqual,
    ZeroLessFirst,
    ZeroLessSecond,
    ZeroLess,
    ZeroEqualFirst,
    ZeroEqualSecond,
    ZeroEqual,
}

impl BlockPart {
    pub const ALL: [BlockPart; 12] = [
        BlockPart::NegativeLessFirst,
        BlockPart::NegativeLessSecond,
        BlockPart::NegativeLess,
        BlockPart::NegativeEqualFirst,
        BlockPart::NegativeEqualSecond,
        BlockPart::NegativeEqual,
        BlockPart::ZeroLessFirst,
        BlockPart::ZeroLessSecond,
        BlockPart::ZeroLess,
        BlockPart::ZeroEqualFirst,
        BlockPart::ZeroEqualSecond,
        BlockPart::ZeroEqual,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BlockId {
    pub parity: Parity,
    pub part: BlockPart,
}

impl BlockId {
    pub fn all() -> impl Iterator<Item = BlockId> {
        [Parity::Even, Parity::Odd].into_iter().flat_map(|parity| {
            BlockPart::ALL
                .into_iter()
                .map(move |part| BlockId { parity, part })
        })
    }

    pub fn residue(self) -> u64 {
        match self.parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn name(self) -> String {
        let p = match self.parity {
            Parity::Even => "even",
            Parity::Odd => "odd",
        };
        format!("{p}/{:?}", self.part)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockCheck {
    pub block: BlockId,
    pub l: u64,
    pub sum: BigCount,
    pub polynomial: BigInt,
}

impl BlockCheck {
    pub fn holds(&self) -> bool {
        self.sum.to_bigint() == self.polynomial
    }
}

/// `lo, lo+2, …, ≤ hi`, empty when hi < lo.
fn by_two(lo: i64, hi: i64) -> impl Iterator<Item = u64> {
    (lo..=hi).step_by(2).map(|x| x as u64)
}

fn tag(parity: Parity, delta: DeltaSign, regime: Regime, relation: Relation) -> CaseTag {
    CaseTag {
        parity,
        delta,
        regime,
        relation,
    }
}

struct Summer {
    parity: Parity,
    l: u64,
    total: BigCount,
}

impl Summer {
    fn add(
        &mut self,
        delta: DeltaSign,
        regime: Regime,
        l11: u64,
        l22: u64,
    ) -> Result<(), StripError> {
        let rel = if l11 == l22 {
            Relation::Equal
        } else {
            Relation::Less
        };
        let v = case_value(tag(self.parity, delta, regime, rel), self.l, l11, l22)?;
        self.total += v.value;
        Ok(())
    }

    fn add_pairs(
        &mut self,
        delta: DeltaSign,
        regime: Regime,
        outer: (i64, i64),
        inner: impl Fn(i64) -> (i64, i64),
    ) -> Result<(), StripError> {
        for a in by_two(outer.0, outer.1) {
            let (lo, hi) = inner(a as i64);
            for b in by_two(lo, hi) {
                self.add(delta, regime, a, b)?;
            }
        }
        Ok(())
    }

    fn add_diagonal(
        &mut self,
        delta: DeltaSign,
        regime: Regime,
        range: (i64, i64),
    ) -> Result<(), StripError> {
        for a in by_two(range.0, range.1) {
            self.add(delta, regime, a, a)?;
        }
        Ok(())
    }
}

fn programmed_sum(block: BlockId, l: u64) -> Result<BigCount, StripError> {
    use BlockPart::*;
    use DeltaSign::{Negative as Neg, Zero};
    use Regime::{Clipped, Unclipped};

    let mut s = Summer {
        parity: block.parity,
        l,
        total: BigCount::zero(),
    };
    let li = l as i64;
    match block.parity {
        Parity::Even => {
            let h = li / 2;
            match block.part {
                NegativeLessFirst => {
                    // ℓ11 = 0 through the mirrored access path
                    for b in by_two(2, li) {
                        let t = tag(Parity::Even, Neg, Unclipped, Relation::Less);
                        s.total += mirror_count(t, l, b, 0)?.value;
                    }
                    s.add_pairs(Neg, Unclipped, (2, h), |a| (a + 2, li - a + 2))?;
                }
                NegativeLessSecond => {
                    s.add_pairs(Neg, Clipped, (h + 2, li - 2), |a| (a + 2, li))?;
                    s.add_pairs(Neg, Clipped, (4, h), |a| (li - a + 4, li))?;
                }
                NegativeEqualFirst => s.add_diagonal(Neg, Unclipped, (2, h))?,
                NegativeEqualSecond => s.add_diagonal(Neg, Clipped, (h + 2, li))?,
                ZeroLessFirst => s.add_pairs(Zero, Unclipped, (0, h - 2), |a| (a + 2, li - a))?,
                ZeroLessSecond => {
                    s.add_pairs(Zero, Clipped, (h, li - 2), |a| (a + 2, li))?;
                    s.add_pairs(Zero, Clipped, (2, h - 2), |a| (li - a + 2, li))?;
                }
                ZeroEqualFirst => s.add_diagonal(Zero, Unclipped, (0, h))?,
                ZeroEqualSecond => s.add_diagonal(Zero, Clipped, (h + 2, li))?,
                NegativeLess | NegativeEqual | ZeroLess | ZeroEqual => unreachable!(),
            }
        }
        Parity::Odd => {
            let h = (li + 1) / 2;
            match block.part {
                NegativeLessFirst => {
                    s.add_pairs(Neg, Unclipped, (1, 1), |_| (3, li))?;
                    s.add_pairs(Neg, Unclipped, (3, h), |a| (a + 2, li - a + 3))?;
                }
                NegativeLessSecond => {
                    s.add_pairs(Neg, Clipped, (h + 2, li - 2), |a| (a + 2, li))?;
                    s.add_pairs(Neg, Clipped, (5, h), |a| (li - a + 5, li))?;
                }
                NegativeEqualFirst => s.add_diagonal(Neg, Unclipped, (3, h))?,
                NegativeEqualSecond => s.add_diagonal(Neg, Clipped, (h + 2, li))?,
                ZeroLessFirst => {
                    s.add_pairs(Zero, Unclipped, (1, h - 2), |a| (a + 2, li - a + 1))?
                }
                ZeroLessSecond => {
                    s.add_pairs(Zero, Clipped, (h, li - 2), |a| (a + 2, li))?;
                    s.add_pairs(Zero, Clipped, (3, h - 2), |a| (li - a + 3, li))?;
                }
                ZeroEqualFirst => s.add_diagonal(Zero, Unclipped, (1, h))?,
                ZeroEqualSecond => s.add_diagonal(Zero, Clipped, (h + 2, li))?,
                NegativeLess | NegativeEqual | ZeroLess | ZeroEqual => unreachable!(),
            }
        }
    }
    Ok(s.total)
}

fn halves(part: BlockPart) -> Option<(BlockPart, BlockPart)> {
    use BlockPart::*;
    match part {
        NegativeLess => Some((NegativeLessFirst, NegativeLessSecond)),
        NegativeEqual => Some((NegativeEqualFirst, NegativeEqualSecond)),
        ZeroLess => Some((ZeroLessFirst, ZeroLessSecond)),
        ZeroEqual => Some((ZeroEqualFirst, ZeroEqualSecond)),
        _ => None,
    }
}

fn block_sum(block: BlockId, l: u64) -> Result<BigCount, StripError> {
    match halves(block.part) {
        Some((first, second)) => Ok(programmed_sum(
            BlockId {
                part: first,
                ..block
            },
            l,
        )? + programmed_sum(
            BlockId {
                part: second,
                ..block
            },
            l,
        )?),
        None => programmed_sum(block, l),
    }
}

/// The stated closed polynomial at `l`.
fn polynomial(block: BlockId, l: u64) -> BigInt {
    use BlockPart::*;
    let x = BigInt::from(l);
    let p = |c: &[i64]| horner(&x, &c.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>());
    let lin = |c: i64| &x + c;
    let (num, den): (BigInt, u32) = match block.parity {
        Parity::Even => match block.part {
            NegativeLessFirst => (&x * lin(4) * lin(8) * p(&[204, 83, 15, 1]), 46080),
            NegativeLessSecond => (lin(-4) * &x * lin(4) * p(&[528, 509, 153, 19]), 46080),
            NegativeLess => (&x * lin(4) * p(&[-24, -32, 5, 5, 1]), 2304),
            NegativeEqualFirst => (&x * lin(2) * lin(4) * lin(6) * lin(8), 7680),
            NegativeEqualSecond => (&x * lin(4) * p(&[128, 388, 148, 23]), 7680),
            NegativeEqual => (&x * lin(4) * p(&[56, 116, 41, 6]), 1920),
            ZeroLessFirst => (&x * lin(4) * lin(8) * p(&[24, 11, 2]), 7680),
            ZeroLessSecond => (&x * lin(4) * p(&[-16, 224, 69, 14]), 7680),
            ZeroLess => (&x * lin(4) * p(&[11, 21, 6, 1]), 480),
            ZeroEqualFirst => (lin(4) * lin(8) * p(&[24, 8, 1]), 768),
            ZeroEqualSecond => (&x * lin(4) * p(&[120, 32, 7]), 768),
            ZeroEqual => (lin(4) * p(&[24, 26, 6, 1]), 96),
        },
        Parity::Odd => match block.part {
            NegativeLessFirst => (lin(-1) * p(&[10125, 14268, 3509, 479, 34, 1]), 46080),
            NegativeLessSecond => (lin(-5) * lin(-1) * p(&[2997, 4221, 1526, 261, 19]), 46080),
            NegativeLess => (lin(-1) * lin(3) * p(&[-81, -37, 14, 7, 1]), 2304),
            NegativeEqualFirst => (lin(-1) * lin(3) * lin(7) * p(&[75, 16, 1]), 7680),
            NegativeEqualSecond => (lin(-1) * p(&[885, 2038, 1148, 258, 23]), 7680),
            NegativeEqual => (lin(-1) * lin(3) * p(&[205, 192, 53, 6]), 1920),
            ZeroLessFirst => (lin(-1) * lin(3) * p(&[805, 304, 41, 2]), 7680),
            ZeroLessSecond => (lin(-1) * lin(3) * p(&[-165, 208, 87, 14]), 7680),
            ZeroLess => (lin(-1) * lin(2) * lin(3) * p(&[20, 6, 1]), 480),
            ZeroEqualFirst => (lin(3) * lin(7) * p(&[57, 14, 1]), 768),
            ZeroEqualSecond => (BigInt::from(7) * lin(-1) * p(&[51, 35, 9, 1]), 768),
            ZeroEqual => (lin(3) * p(&[35, 29, 7, 1]), 96),
        },
    };
    exact_div(num, den, &format!("{}({l})", block.name()))
}

/// Both sides of one block identity at `l`.
pub fn evaluate_block(block: BlockId, l: u64) -> Result<BlockCheck, BlockError> {
    if l % 4 != block.residue() {
        return Err(BlockError::Residue {
            block,
            l,
            expected: block.residue(),
        });
    }
    Ok(BlockCheck {
        block,
        l,
        sum: block_sum(block, l)?,
        polynomial: polynomial(block, l),
    })
}

/// The programmed sum of `block` at `l`, after checking it against the
/// stated polynomial.
pub fn proof_block_value(block: BlockId, l: u64) -> Result<BigCount, BlockError> {
    let check = evaluate_block(block, l)?;
    if !check.holds() {
        return Err(BlockError::Mismatch {
            block,
            l,
            sum: check.sum,
            polynomial: check.polynomial,
        });
    }
    Ok(check.sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strip::aggregate_breakdown;

    fn even(part: BlockPart) -> BlockId {
        BlockId {
            parity: Parity::Even,
            part,
        }
    }

    fn odd(part: BlockPart) -> BlockId {
        BlockId {
            parity: Parity::Odd,
            part,
        }
    }

    #[test]
    fn spot_values() {
        assert_eq!(
            proof_block_value(even(BlockPart::NegativeLessFirst), 4).unwrap(),
            7
        );
        // (4+4)(64+96+104+24)/96 = 24
        assert_eq!(
            proof_block_value(even(BlockPart::ZeroEqual), 4).unwrap(),
            24
        );
        assert!(proof_block_value(odd(BlockPart::NegativeEqual), 1)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn residue_is_enforced() {
        assert!(matches!(
            proof_block_value(even(BlockPart::ZeroEqual), 6),
            Err(BlockError::Residue { expected: 0, .. })
        ));
        assert!(matches!(
            proof_block_value(odd(BlockPart::ZeroEqual), 3),
            Err(BlockError::Residue { expected: 1, .. })
        ));
    }

    #[test]
    fn every_block_holds_on_its_residue() {
        for block in BlockId::all() {
            for l in (block.residue()..=41).step_by(4) {
                proof_block_value(block, l).unwrap_or_else(|e| panic!("{e}"));
            }
        }
    }

    #[test]
    fn combined_blocks_equal_the_aggregated_classes() {
        for l in (0..=40u64).step_by(4).chain((1..=41).step_by(4)) {
            let parity = Parity::of(l);
            let b = aggregate_breakdown(l);
            let v = |part| proof_block_value(BlockId { parity, part }, l).unwrap();
            assert_eq!(v(BlockPart::NegativeLess), b.negative_less, "l={l}");
            assert_eq!(v(BlockPart::NegativeEqual), b.negative_equal, "l={l}");
            assert_eq!(v(BlockPart::ZeroLess), b.zero_less, "l={l}");
            assert_eq!(v(BlockPart::ZeroEqual), b.zero_equal, "l={l}");
        }
    }
}
