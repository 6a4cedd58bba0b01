//! Strip-geometry counter for the uniform k = 4 system.
//!
//! Fix the diagonal through the reduced budgets ℓ_ii = ℓ − 2α_ii. For a pair
//! (ℓ11, ℓ22) with ℓ11 ≤ ℓ22 the solutions with Δ < 0 and with Δ = 0 are
//! counted by eight case expressions per parity of ℓ, transcribed here as
//! literal finite sums. The Δ > 0 class and the ℓ11 > ℓ22 half follow by
//! symmetry, and summing over all pairs reproduces the closed forms.

mod aggregate;
mod blocks;
mod cases;

pub use aggregate::{aggregate, aggregate_breakdown, region_nonempty, AggregateBreakdown};
pub use blocks::{evaluate_block, proof_block_value, BlockCheck, BlockError, BlockId, BlockPart};
pub use cases::{
    case_value, case_value_even, case_value_odd, mirror_count, CaseTag, CaseValue, DeltaSign,
    Parity, Regime, Relation, StripError,
};
