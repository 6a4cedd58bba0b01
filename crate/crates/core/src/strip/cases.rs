use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::count::BigCount;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StripError {
    #[error("tag {tag:?} does not match (ℓ={l}, ℓ11={l11}, ℓ22={l22}): {reason}")]
    InconsistentTag {
        tag: CaseTag,
        l: u64,
        l11: u64,
        l22: u64,
        reason: &'static str,
    },
    #[error("mirror access needs ℓ11 > ℓ22, got ℓ11={l11}, ℓ22={l22}")]
    NotMirrored { l11: u64, l22: u64 },
    #[error("case expression {tag:?} is negative at (ℓ={l}, ℓ11={l11}, ℓ22={l22})")]
    NegativeValue {
        tag: CaseTag,
        l: u64,
        l11: u64,
        l22: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(l: u64) -> Self {
        if l % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DeltaSign {
    Negative,
    Zero,
}

/// Whether the cap ℓ33, ℓ44 ≤ ℓ clips the polygon of admissible (ℓ33, ℓ44).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    Unclipped,
    Clipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    Less,
    Equal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CaseTag {
    pub parity: Parity,
    pub delta: DeltaSign,
    pub regime: Regime,
    pub relation: Relation,
}

impl CaseTag {
    /// Largest `ℓ11 + ℓ22 − ℓ` still in the unclipped regime. Ties belong to
    /// the unclipped regime.
    fn unclipped_slack(parity: Parity, delta: DeltaSign) -> i64 {
        match (parity, delta) {
            (Parity::Even, DeltaSign::Negative) => 2,
            (Parity::Even, DeltaSign::Zero) => 0,
            (Parity::Odd, DeltaSign::Negative) => 3,
            (Parity::Odd, DeltaSign::Zero) => 1,
        }
    }

    /// The tag describing (ℓ, ℓ11, ℓ22) for the given Δ class; ℓ11 ≤ ℓ22.
    pub fn select(l: u64, l11: u64, l22: u64, delta: DeltaSign) -> CaseTag {
        let parity = Parity::of(l);
        let slack = l11 as i64 + l22 as i64 - l as i64;
        let regime = if slack <= Self::unclipped_slack(parity, delta) {
            Regime::Unclipped
        } else {
            Regime::Clipped
        };
        let relation = if l11 < l22 {
            Relation::Less
        } else {
            Relation::Equal
        };
        CaseTag {
            parity,
            delta,
            regime,
            relation,
        }
    }
}

/// One evaluated case expression, split into its strip, region and cut-off
/// partial sums: `value = strip_part + region_part − cutoff_part`.
///
/// For `Relation::Equal` the strip is degenerate and `strip_part` carries the
/// (negative) correction for doubly counted diagonal points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseValue {
    pub tag: CaseTag,
    pub l: u64,
    pub l11: u64,
    pub l22: u64,
    pub value: BigCount,
    pub strip_part: BigInt,
    pub region_part: BigInt,
    pub cutoff_part: BigInt,
}

/// Σ_{t=lo}^{hi} f(t); empty when hi < lo.
fn sum_t(lo: i64, hi: i64, f: impl Fn(i64) -> BigInt) -> BigInt {
    (lo..=hi).map(f).sum()
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// x/2 for an x the surrounding parity makes even.
fn half(x: i64) -> i64 {
    debug_assert!(x % 2 == 0, "half of odd {x}");
    x.div_euclid(2)
}

/// n(n+1)/2 with n = ℓ11 + 1, the multiplicity attached to the strip.
fn strip_weight(a: i64) -> BigInt {
    big(a + 1) * big(a + 2) / 2
}

fn check(tag: CaseTag, parity: Parity, l: u64, l11: u64, l22: u64) -> Result<(), StripError> {
    let err = |reason| {
        Err(StripError::InconsistentTag {
            tag,
            l,
            l11,
            l22,
            reason,
        })
    };
    if tag.parity != parity {
        return err("tag parity differs from the expression family");
    }
    if Parity::of(l) != parity || Parity::of(l11) != parity || Parity::of(l22) != parity {
        return err("ℓ, ℓ11 and ℓ22 must share the parity of the tag");
    }
    if l11 > l22 || l22 > l {
        return err("need ℓ11 ≤ ℓ22 ≤ ℓ");
    }
    let expected = CaseTag::select(l, l11, l22, tag.delta);
    if expected.relation != tag.relation {
        return err("relation disagrees with ℓ11 vs ℓ22");
    }
    if expected.regime != tag.regime {
        return err("regime disagrees with ℓ vs ℓ11 + ℓ22");
    }
    Ok(())
}

fn finish(
    tag: CaseTag,
    l: u64,
    l11: u64,
    l22: u64,
    strip_part: BigInt,
    region_part: BigInt,
    cutoff_part: BigInt,
) -> Result<CaseValue, StripError> {
    let total = &strip_part + &region_part - &cutoff_part;
    if total.is_negative() {
        return Err(StripError::NegativeValue { tag, l, l11, l22 });
    }
    Ok(CaseValue {
        tag,
        l,
        l11,
        l22,
        value: BigCount::from_bigint(total).expect("nonnegative"),
        strip_part,
        region_part,
        cutoff_part,
    })
}

/// Δ = 0 cases share their strip term between parities, and their clipped
/// region term too.
fn zero_strip(rel: Relation, a: i64, b: i64) -> BigInt {
    match rel {
        Relation::Less => strip_weight(a) * big(half(b - a) - 1),
        Relation::Equal => -strip_weight(a),
    }
}

fn zero_clipped_region(rel: Relation, l: i64, a: i64, b: i64) -> BigInt {
    let (c, top) = match rel {
        Relation::Less => (a + b - l, half(l - b) + 1),
        Relation::Equal => (2 * a - l, half(l - a) + 1),
    };
    big(2) * sum_t(1, top, |t| big(c + 2 * t - 1) * big(c + 2 * t) / 2)
}

/// Case expressions for even ℓ.
pub fn case_value_even(tag: CaseTag, l: u64, l11: u64, l22: u64) -> Result<CaseValue, StripError> {
    check(tag, Parity::Even, l, l11, l22)?;
    let (li, a, b) = (l as i64, l11 as i64, l22 as i64);
    // 2t(2t−1)/2 and (2t+1)2t/2
    let lower = |t: i64| big(2 * t) * big(2 * t - 1) / 2;
    let upper = |t: i64| big(2 * t + 1) * big(2 * t) / 2;
    let (strip, region, cutoff) = match tag.delta {
        DeltaSign::Negative => {
            let strip = match tag.relation {
                Relation::Less => {
                    sum_t(1, half(a), |t| lower(t) * big(half(b - a) - 1))
                        + sum_t(1, half(a), |t| upper(t) * big(half(b - a)))
                }
                Relation::Equal => -sum_t(1, half(a), lower),
            };
            let region = big(2) * sum_t(1, half(a), |t| lower(t) * big(a - (2 * t - 2)));
            let cutoff = match tag.regime {
                Regime::Unclipped => BigInt::from(0),
                Regime::Clipped => {
                    let m = match tag.relation {
                        Relation::Less => half(a + b - li),
                        Relation::Equal => half(2 * a - li),
                    };
                    big(2) * sum_t(1, m - 1, |t| lower(t) * big(m - t))
                }
            };
            (strip, region, cutoff)
        }
        DeltaSign::Zero => {
            let strip = zero_strip(tag.relation, a, b);
            let region = match tag.regime {
                Regime::Unclipped => big(2) * sum_t(1, half(a) + 1, lower),
                Regime::Clipped => zero_clipped_region(tag.relation, li, a, b),
            };
            (strip, region, BigInt::from(0))
        }
    };
    finish(tag, l, l11, l22, strip, region, cutoff)
}

/// Case expressions for odd ℓ.
pub fn case_value_odd(tag: CaseTag, l: u64, l11: u64, l22: u64) -> Result<CaseValue, StripError> {
    check(tag, Parity::Odd, l, l11, l22)?;
    let (li, a, b) = (l as i64, l11 as i64, l22 as i64);
    // 2t(2t+1)/2 and (2t−1)2t/2
    let odd_w = |t: i64| big(2 * t) * big(2 * t + 1) / 2;
    let even_w = |t: i64| big(2 * t - 1) * big(2 * t) / 2;
    let (strip, region, cutoff) = match tag.delta {
        DeltaSign::Negative => {
            let strip = match tag.relation {
                Relation::Less => {
                    sum_t(1, half(a - 1), |t| odd_w(t) * big(half(b - a) - 1))
                        + sum_t(1, half(a + 1), |t| even_w(t) * big(half(b - a)))
                }
                Relation::Equal => -sum_t(1, half(a - 1), odd_w),
            };
            let region = big(2) * sum_t(1, half(a - 1), |t| odd_w(t) * big(a - (2 * t - 2) - 1));
            let cutoff = match tag.regime {
                Regime::Unclipped => BigInt::from(0),
                Regime::Clipped => {
                    let s = match tag.relation {
                        Relation::Less => a + b - li,
                        Relation::Equal => 2 * a - li,
                    };
                    big(2) * sum_t(1, half(s - 3), |t| odd_w(t) * big(half(s - 1) - t))
                }
            };
            (strip, region, cutoff)
        }
        DeltaSign::Zero => {
            let strip = zero_strip(tag.relation, a, b);
            let region = match tag.regime {
                Regime::Unclipped => big(2) * sum_t(1, half(a + 1), odd_w),
                Regime::Clipped => zero_clipped_region(tag.relation, li, a, b),
            };
            (strip, region, BigInt::from(0))
        }
    };
    finish(tag, l, l11, l22, strip, region, cutoff)
}

/// Dispatches on the tag's parity.
pub fn case_value(tag: CaseTag, l: u64, l11: u64, l22: u64) -> Result<CaseValue, StripError> {
    match tag.parity {
        Parity::Even => case_value_even(tag, l, l11, l22),
        Parity::Odd => case_value_odd(tag, l, l11, l22),
    }
}

/// The ℓ11 > ℓ22 half: relabelling 1 ⇌ 2 (together with 3 ⇌ 4) keeps Δ, so
/// the count is the ℓ11 < ℓ22 expression with the arguments swapped.
pub fn mirror_count(tag: CaseTag, l: u64, l11: u64, l22: u64) -> Result<CaseValue, StripError> {
    if l11 <= l22 {
        return Err(StripError::NotMirrored { l11, l22 });
    }
    case_value(tag, l, l22, l11)
}
