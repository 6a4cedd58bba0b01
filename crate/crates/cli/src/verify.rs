use std::fmt;

use clap::ValueEnum;

use dioph_core::closed_form::{count_theorem, floyd_f, magic_constant};
use dioph_core::floyd::{floyd_count_cases, floyd_enumerate, A006003};
use dioph_core::gf::{count_general, count_general_table, GfConfig};
use dioph_core::oracle::{count_bruteforce, count_fixed_diagonal_by_delta};
use dioph_core::strip::{
    aggregate, case_value, evaluate_block, mirror_count, BlockId, CaseTag, DeltaSign,
};
use dioph_core::{BigCount, DeltaClass, SystemKind, SystemSpec};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    ClosedVsOracle,
    StripVsOracle,
    StripVsClosed,
    Floyd,
    Gf,
    ProofBlocks,
    All,
}

const CONCRETE: [Suite; 6] = [
    Suite::ClosedVsOracle,
    Suite::StripVsOracle,
    Suite::StripVsClosed,
    Suite::Floyd,
    Suite::Gf,
    Suite::ProofBlocks,
];

impl Suite {
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => CONCRETE.to_vec(),
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::ClosedVsOracle => "closed-vs-oracle",
            Suite::StripVsOracle => "strip-vs-oracle",
            Suite::StripVsClosed => "strip-vs-closed",
            Suite::Floyd => "floyd",
            Suite::Gf => "gf",
            Suite::ProofBlocks => "proof-blocks",
            Suite::All => "all",
        }
    }

    fn default_max_l(self) -> u64 {
        match self {
            Suite::ClosedVsOracle | Suite::StripVsOracle => 12,
            Suite::StripVsClosed => 60,
            Suite::Floyd => 20,
            Suite::Gf => 40,
            Suite::ProofBlocks | Suite::All => 13,
        }
    }
}

pub struct Check {
    pub suite: Suite,
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} {}: {}",
            self.suite.name(),
            self.label,
            self.detail
        )
    }
}

fn check(suite: Suite, label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        suite,
        label: label.into(),
        passed,
        detail: detail.into(),
    }
}

fn uniform_oracle(kind: SystemKind, k: usize, l: u64) -> BigCount {
    let spec = SystemSpec::uniform(kind, k, l as i64)
        .validate()
        .expect("uniform spec is valid");
    count_bruteforce(&spec)
}

fn closed_vs_oracle(max_l: u64) -> Vec<Check> {
    (0..=max_l)
        .map(|l| {
            let o = uniform_oracle(SystemKind::Full4, 4, l);
            let c = count_theorem(l);
            check(
                Suite::ClosedVsOracle,
                format!("l={l}"),
                o == c,
                format!("oracle={o} closed={c}"),
            )
        })
        .collect()
}

fn strip_vs_oracle(max_l: u64) -> Vec<Check> {
    let signs = [
        (DeltaSign::Negative, DeltaClass::Negative),
        (DeltaSign::Zero, DeltaClass::Zero),
    ];
    (0..=max_l)
        .map(|l| {
            let mut pairs = 0;
            let mut first_bad = None;
            for l11 in (l % 2..=l).step_by(2) {
                for l22 in (l % 2..=l).step_by(2) {
                    for (sign, class) in signs {
                        let value = if l11 <= l22 {
                            case_value(CaseTag::select(l, l11, l22, sign), l, l11, l22)
                        } else {
                            mirror_count(CaseTag::select(l, l22, l11, sign), l, l11, l22)
                        };
                        let oracle = count_fixed_diagonal_by_delta(l, l11, l22, class)
                            .expect("lattice pair");
                        pairs += 1;
                        let ok = matches!(&value, Ok(v) if v.value == oracle);
                        if !ok && first_bad.is_none() {
                            first_bad = Some(format!(
                                "l11={l11} l22={l22} {sign:?}: strip={value:?} oracle={oracle}"
                            ));
                        }
                    }
                }
            }
            let detail = match &first_bad {
                None => format!("{pairs} (pair, class) values agree"),
                Some(d) => format!("first mismatch {d}"),
            };
            check(
                Suite::StripVsOracle,
                format!("l={l}"),
                first_bad.is_none(),
                detail,
            )
        })
        .collect()
}

fn strip_vs_closed(max_l: u64) -> Vec<Check> {
    (0..=max_l)
        .map(|l| {
            let s = aggregate(l);
            let c = count_theorem(l);
            check(
                Suite::StripVsClosed,
                format!("l={l}"),
                s == c,
                format!("strip={s} closed={c}"),
            )
        })
        .collect()
}

fn floyd(max_l: u64) -> Vec<Check> {
    let mut out: Vec<Check> = (0..=max_l)
        .map(|l| {
            let f = floyd_f(l);
            let o = uniform_oracle(SystemKind::Floyd3, 3, l);
            if l % 2 == 1 {
                let ok = f.is_zero() && o.is_zero();
                return check(
                    Suite::Floyd,
                    format!("l={l}"),
                    ok,
                    format!("closed={f} oracle={o}"),
                );
            }
            let cases = floyd_count_cases(l).expect("even level");
            let listed = BigCount::from(floyd_enumerate(l).count());
            let ok = f == cases && f == listed && f == o;
            check(
                Suite::Floyd,
                format!("l={l}"),
                ok,
                format!("closed={f} cases={cases} listed={listed} oracle={o}"),
            )
        })
        .collect();
    let mismatch = (1..A006003.len() as u64).find(|&n| {
        let v = BigCount::from(A006003[n as usize]);
        floyd_f(2 * n - 2) != v || magic_constant(n).ok() != Some(v)
    });
    out.push(check(
        Suite::Floyd,
        "A006003",
        mismatch.is_none(),
        match mismatch {
            None => format!(
                "floyd_f(2n-2) = n(n^2+1)/2 = a(n) for n = 1..={}",
                A006003.len() - 1
            ),
            Some(n) => format!("mismatch at n={n}"),
        },
    ));
    out
}

fn gf(max_l: u64, config: &GfConfig) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for (k, reference) in [(4usize, count_theorem as fn(u64) -> BigCount), (3, floyd_f)] {
        let table = count_general_table(k, max_l, config)?;
        for (l, g) in table.into_iter().enumerate() {
            let r = reference(l as u64);
            out.push(check(
                Suite::Gf,
                format!("k={k} l={l}"),
                g == r,
                format!("gf={g} closed={r}"),
            ));
        }
    }
    // every rhs in a small box against the oracle
    for (k, side) in [(3usize, 5u64), (4, 4)] {
        let mut rhs = vec![0u64; k];
        let mut total = 0;
        let mut first_bad = None;
        loop {
            let spec =
                SystemSpec::new(SystemKind::General, rhs.iter().map(|&v| v as i64).collect())
                    .validate()
                    .expect("nonnegative rhs");
            let g = count_general(&rhs, config)?;
            let o = count_bruteforce(&spec);
            total += 1;
            if g != o && first_bad.is_none() {
                first_bad = Some(format!("rhs={rhs:?} gf={g} oracle={o}"));
            }
            match rhs.iter().rposition(|&v| v + 1 < side) {
                Some(p) => {
                    rhs[p] += 1;
                    rhs[p + 1..].iter_mut().for_each(|v| *v = 0);
                }
                None => break,
            }
        }
        out.push(check(
            Suite::Gf,
            format!("k={k} rhs<{side}"),
            first_bad.is_none(),
            first_bad.unwrap_or_else(|| format!("{total} instances agree with the oracle")),
        ));
    }
    Ok(out)
}

fn proof_blocks(max_l: u64) -> Vec<Check> {
    BlockId::all()
        .flat_map(|block| {
            (block.residue()..=max_l).step_by(4).map(move |l| {
                let label = format!("{} l={l}", block.name());
                match evaluate_block(block, l) {
                    Ok(c) => check(
                        Suite::ProofBlocks,
                        label,
                        c.holds(),
                        format!("sum={} polynomial={}", c.sum, c.polynomial),
                    ),
                    Err(e) => check(Suite::ProofBlocks, label, false, e.to_string()),
                }
            })
        })
        .collect()
}

/// Runs one concrete suite up to `max_l` (or the suite's default).
pub fn run(suite: Suite, max_l: Option<u64>, config: &GfConfig) -> Result<Vec<Check>, CliError> {
    let max_l = max_l.unwrap_or(suite.default_max_l());
    Ok(match suite {
        Suite::ClosedVsOracle => closed_vs_oracle(max_l),
        Suite::StripVsOracle => strip_vs_oracle(max_l),
        Suite::StripVsClosed => strip_vs_closed(max_l),
        Suite::Floyd => floyd(max_l),
        Suite::Gf => gf(max_l, config)?,
        Suite::ProofBlocks => proof_blocks(max_l),
        Suite::All => unreachable!("expanded by the caller"),
    })
}
