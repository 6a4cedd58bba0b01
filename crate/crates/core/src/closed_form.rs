//! Closed-form counts, evaluated exactly.
//!
//! Every formula is a polynomial with integer coefficients over a fixed
//! denominator. The numerator is computed in arbitrary precision and the
//! division must leave no remainder; a remainder would mean a mistranscribed
//! polynomial, so it panics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::count::BigCount;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("{formula:?} needs an even argument, got {l}")]
    OddInput { formula: Formula, l: u64 },
    #[error("{formula:?} needs an odd argument, got {l}")]
    EvenInput { formula: Formula, l: u64 },
    #[error("{formula:?} is defined for arguments ≥ {min}, got {l}")]
    Domain { formula: Formula, l: u64, min: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Formula {
    /// k = 4, uniform even ℓ.
    EvenMain,
    /// k = 4, uniform odd ℓ.
    OddMain,
    /// `EvenMain` reparametrized by ℓ ↦ 2ℓ − 2.
    EvenRemap,
    /// `OddMain` reparametrized by ℓ ↦ 2ℓ − 3.
    OddRemap,
    /// Three-equation system, even ℓ.
    Floyd,
    /// ½ℓ(1 + ℓ²).
    MagicConstant,
}

pub const ALL_FORMULAS: [Formula; 6] = [
    Formula::EvenMain,
    Formula::OddMain,
    Formula::EvenRemap,
    Formula::OddRemap,
    Formula::Floyd,
    Formula::MagicConstant,
];

impl Formula {
    pub fn denominator(self) -> u32 {
        match self {
            Formula::EvenMain | Formula::OddMain => 576,
            Formula::EvenRemap | Formula::OddRemap => 18,
            Formula::Floyd => 16,
            Formula::MagicConstant => 2,
        }
    }

    /// Rejects arguments outside the formula's domain.
    pub fn check_domain(self, l: u64) -> Result<(), ClosedFormError> {
        let formula = self;
        match self {
            Formula::EvenMain | Formula::Floyd if l % 2 == 1 => {
                Err(ClosedFormError::OddInput { formula, l })
            }
            Formula::OddMain if l % 2 == 0 => Err(ClosedFormError::EvenInput { formula, l }),
            Formula::EvenRemap | Formula::MagicConstant if l < 1 => {
                Err(ClosedFormError::Domain { formula, l, min: 1 })
            }
            Formula::OddRemap if l < 2 => Err(ClosedFormError::Domain { formula, l, min: 2 }),
            _ => Ok(()),
        }
    }

    /// The polynomial before division by [`Formula::denominator`].
    pub fn numerator(self, l: u64) -> BigInt {
        let x = BigInt::from(l);
        let c = |v: i64| BigInt::from(v);
        match self {
            // (ℓ+2)(ℓ+4)(ℓ(ℓ+5)(ℓ(ℓ+4)+12)+72)
            Formula::EvenMain => (&x + 2) * (&x + 4) * (&x * (&x + 5) * (&x * (&x + 4) + 12) + 72),
            // (ℓ+1)(ℓ+3)(ℓ(ℓ+5)(ℓ(ℓ+6)+17)+72)
            Formula::OddMain => (&x + 1) * (&x + 3) * (&x * (&x + 5) * (&x * (&x + 6) + 17) + 72),
            // ℓ(ℓ+1)(3+2ℓ+ℓ²+ℓ³+2ℓ⁴)
            Formula::EvenRemap => {
                let p = horner(&x, &[c(3), c(2), c(1), c(1), c(2)]);
                &x * (&x + 1) * p
            }
            // ℓ(ℓ−1)(3−2ℓ+ℓ²−ℓ³+2ℓ⁴)
            Formula::OddRemap => {
                let p = horner(&x, &[c(3), c(-2), c(1), c(-1), c(2)]);
                &x * (&x - 1) * p
            }
            // (ℓ+2)(ℓ²+4ℓ+8)
            Formula::Floyd => (&x + 2) * (&x * &x + &x * 4 + 8),
            // ℓ(1+ℓ²)
            Formula::MagicConstant => &x * (&x * &x + 1),
        }
    }
}

/// Σ coeffs[i]·x^i.
pub(crate) fn horner(x: &BigInt, coeffs: &[BigInt]) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// `numerator / denominator`, panicking on a nonzero remainder.
pub(crate) fn exact_div(numerator: BigInt, denominator: u32, what: &str) -> BigInt {
    let (q, r) = numerator.div_rem(&BigInt::from(denominator));
    assert!(
        r.is_zero(),
        "{what}: numerator not divisible by {denominator}"
    );
    q
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormResult {
    pub l: u64,
    pub count: BigCount,
    pub formula: Formula,
}

pub fn evaluate(formula: Formula, l: u64) -> Result<ClosedFormResult, ClosedFormError> {
    formula.check_domain(l)?;
    let q = exact_div(
        formula.numerator(l),
        formula.denominator(),
        &format!("{formula:?}({l})"),
    );
    let count = BigCount::from_bigint(q).expect("closed forms are nonnegative on their domain");
    Ok(ClosedFormResult { l, count, formula })
}

fn count_of(formula: Formula, l: u64) -> Result<BigCount, ClosedFormError> {
    evaluate(formula, l).map(|r| r.count)
}

/// Solutions of the k = 4 system with every ℓ_i = `l`, `l` even.
pub fn e_even(l: u64) -> Result<BigCount, ClosedFormError> {
    count_of(Formula::EvenMain, l)
}

/// Solutions of the k = 4 system with every ℓ_i = `l`, `l` odd.
pub fn d_odd(l: u64) -> Result<BigCount, ClosedFormError> {
    count_of(Formula::OddMain, l)
}

/// Equals `e_even(2l − 2)`, `l ≥ 1`.
pub fn e_remap(l: u64) -> Result<BigCount, ClosedFormError> {
    count_of(Formula::EvenRemap, l)
}

/// Equals `d_odd(2l − 3)`, `l ≥ 2`.
pub fn d_remap(l: u64) -> Result<BigCount, ClosedFormError> {
    count_of(Formula::OddRemap, l)
}

/// Solutions of the three-equation system at uniform `l`; zero for odd `l`.
pub fn floyd_f(l: u64) -> BigCount {
    if l % 2 == 1 {
        return BigCount::zero();
    }
    count_of(Formula::Floyd, l).expect("even argument")
}

/// ½n(1 + n²), the magic constant of order `n`.
pub fn magic_constant(n: u64) -> Result<BigCount, ClosedFormError> {
    count_of(Formula::MagicConstant, n)
}

pub fn triangle(n: u64) -> BigCount {
    let n = num_bigint::BigUint::from(n);
    BigCount::from((&n * (&n + 1u8)) >> 1)
}

/// Number of solutions of the uniform k = 4 system, any `l`.
pub fn count_theorem(l: u64) -> BigCount {
    if l % 2 == 0 {
        e_even(l).expect("even")
    } else {
        d_odd(l).expect("odd")
    }
}
