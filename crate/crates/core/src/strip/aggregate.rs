use serde::Serialize;

use super::cases::{case_value, CaseTag, DeltaSign, Relation};
use crate::count::BigCount;

/// Whether any (ℓ33, ℓ44) ∈ [0, ℓ]² of the lattice parity falls in the Δ
/// class for the pair ℓ11 ≤ ℓ22.
///
/// Δ < 0 needs some sum ℓ33 + ℓ44 in the window
/// `[max(ℓ22 − ℓ11, 2·m), min(ℓ11 + ℓ22 − 2, 2ℓ)]`, where m is the smallest
/// lattice coordinate (0 on the even lattice, 1 on the odd one). Δ = 0 is
/// always reachable through (ℓ33, ℓ44) = (ℓ11, ℓ22).
pub fn region_nonempty(l: u64, l11: u64, l22: u64, delta: DeltaSign) -> bool {
    match delta {
        DeltaSign::Zero => true,
        DeltaSign::Negative => {
            let min_coord = (l % 2) as i64;
            let lo = (l22 as i64 - l11 as i64).max(2 * min_coord);
            let hi = (l11 as i64 + l22 as i64 - 2).min(2 * l as i64);
            lo <= hi
        }
    }
}

/// Per-class totals over all pairs ℓ11 ≤ ℓ22 with nonempty regions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AggregateBreakdown {
    pub l: u64,
    /// Δ < 0, ℓ11 < ℓ22.
    pub negative_less: BigCount,
    /// Δ < 0, ℓ11 = ℓ22.
    pub negative_equal: BigCount,
    /// Δ = 0, ℓ11 < ℓ22.
    pub zero_less: BigCount,
    /// Δ = 0, ℓ11 = ℓ22.
    pub zero_equal: BigCount,
}

impl AggregateBreakdown {
    /// 4·neg< + 2·neg= + 2·zero< + zero=.
    ///
    /// Δ > 0 mirrors Δ < 0 and ℓ11 > ℓ22 mirrors ℓ11 < ℓ22, hence the weights.
    pub fn total(&self) -> BigCount {
        &self.negative_less * 4
            + &self.negative_equal * 2
            + &self.zero_less * 2
            + self.zero_equal.clone()
    }
}

pub fn aggregate_breakdown(l: u64) -> AggregateBreakdown {
    let mut out = AggregateBreakdown {
        l,
        negative_less: BigCount::zero(),
        negative_equal: BigCount::zero(),
        zero_less: BigCount::zero(),
        zero_equal: BigCount::zero(),
    };
    for l11 in (l % 2..=l).step_by(2) {
        for l22 in (l11..=l).step_by(2) {
            for delta in [DeltaSign::Negative, DeltaSign::Zero] {
                if !region_nonempty(l, l11, l22, delta) {
                    continue;
                }
                let tag = CaseTag::select(l, l11, l22, delta);
                let v = case_value(tag, l, l11, l22)
                    .expect("selected tag is consistent by construction")
                    .value;
                let slot = match (delta, tag.relation) {
                    (DeltaSign::Negative, Relation::Less) => &mut out.negative_less,
                    (DeltaSign::Negative, Relation::Equal) => &mut out.negative_equal,
                    (DeltaSign::Zero, Relation::Less) => &mut out.zero_less,
                    (DeltaSign::Zero, Relation::Equal) => &mut out.zero_equal,
                };
                *slot += v;
            }
        }
    }
    out
}

/// Total number of solutions of the uniform k = 4 system, summed from the
/// case expressions.
pub fn aggregate(l: u64) -> BigCount {
    aggregate_breakdown(l).total()
}
