//! Exact counting of nonnegative solutions of the structured linear
//! Diophantine systems
//!
//! ```text
//! 2·α_ii + Σ_{j≠i} α_ij = ℓ_i,   1 ≤ i ≤ k,   α_ij = α_ji ≥ 0
//! ```
//!
//! Four engines count the same objects independently and are checked
//! against each other:
//!
//! * [`oracle`]: brute-force enumeration, the ground truth.
//! * [`closed_form`]: constant-time polynomial counts for uniform right-hand
//!   sides (k = 4 and the three-equation Floyd system), plus the magic
//!   constant and triangle numbers.
//! * [`strip`]: the per-diagonal case expressions for k = 4, aggregated over
//!   all diagonal choices.
//! * [`gf`]: coefficient extraction from `Π_{i≤j} 1/(1 − x_i x_j)` by a dense
//!   dynamic program, valid for any k and any right-hand side.
//!
//! [`floyd`] holds the existence test, explicit solutions and case sums for
//! the three-equation system.

pub mod closed_form;
pub mod count;
pub mod floyd;
pub mod gf;
pub mod oracle;
pub mod strip;
pub mod system;

pub use count::BigCount;
pub use system::{
    classify_delta, residue_class, DeltaClass, ReducedRhs, SolutionMatrix, SpecError, SystemKind,
    SystemSpec, ValidatedSpec,
};
