//! Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs under `cargo test` as its own target.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dioph_core::closed_form::{
    count_theorem, d_odd, e_even, floyd_f, magic_constant, Formula, ALL_FORMULAS,
};
use dioph_core::floyd::{floyd_count_cases, floyd_enumerate, A006003};
use dioph_core::gf::{count_general, count_general_table, GfConfig};
use dioph_core::oracle::{count_bruteforce, count_fixed_diagonal_by_delta, enumerate_solutions};
use dioph_core::strip::{
    aggregate, case_value, evaluate_block, mirror_count, BlockId, CaseTag, DeltaSign, Parity,
};
use dioph_core::{classify_delta, BigCount, DeltaClass, SystemKind, SystemSpec};

type Outcome = Result<String, String>;

/// Name, check, time budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn uniform(kind: SystemKind, k: usize, l: u64) -> BigCount {
    count_bruteforce(&SystemSpec::uniform(kind, k, l as i64).validate().unwrap())
}

fn general(rhs: &[u64]) -> BigCount {
    let spec = SystemSpec::new(SystemKind::General, rhs.iter().map(|&v| v as i64).collect());
    count_bruteforce(&spec.validate().unwrap())
}

fn closed_vs_oracle() -> Outcome {
    for l in 0..=16u64 {
        let (c, o) = (count_theorem(l), uniform(SystemKind::Full4, 4, l));
        if c != o {
            return Err(format!("l={l}: closed={c} oracle={o}"));
        }
    }
    Ok("even l in [0,16] and odd l in [1,15] exact".into())
}

fn spot_values() -> Outcome {
    let frozen = [(0u64, 1u64), (1, 3), (2, 17)];
    for (l, want) in frozen {
        let o = uniform(SystemKind::Full4, 4, l);
        if o != want {
            return Err(format!("oracle at l={l} is {o}, frozen {want}"));
        }
    }
    let got = [e_even(0), d_odd(1), e_even(2)].map(|r| r.map_err(|e| e.to_string()));
    for ((l, want), g) in frozen.iter().zip(got) {
        let g = g?;
        if g != *want {
            return Err(format!("closed form at l={l} is {g}, frozen {want}"));
        }
    }
    Ok("e(0)=1, d(1)=3, e(2)=17, each re-derived by the oracle".into())
}

fn strip_per_pair() -> Outcome {
    let mut checked = 0;
    for l in 0..=12u64 {
        for l11 in (l % 2..=l).step_by(2) {
            for l22 in (l % 2..=l).step_by(2) {
                for (sign, class) in [
                    (DeltaSign::Negative, DeltaClass::Negative),
                    (DeltaSign::Zero, DeltaClass::Zero),
                ] {
                    let v = if l11 <= l22 {
                        case_value(CaseTag::select(l, l11, l22, sign), l, l11, l22)
                    } else {
                        mirror_count(CaseTag::select(l, l22, l11, sign), l, l11, l22)
                    }
                    .map_err(|e| e.to_string())?;
                    let o = count_fixed_diagonal_by_delta(l, l11, l22, class)
                        .map_err(|e| e.to_string())?;
                    if v.value != o {
                        return Err(format!(
                            "l={l} l11={l11} l22={l22} {sign:?}: strip={} oracle={o}",
                            v.value
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checked} (l, l11, l22, class) values exact for l <= 12"
    ))
}

fn strip_aggregate() -> Outcome {
    for l in 0..=60u64 {
        let (a, c) = (aggregate(l), count_theorem(l));
        if a != c {
            return Err(format!(
                "l={l} (residue {}): aggregate={a} closed={c}",
                l % 4
            ));
        }
    }
    Ok("l in [0,60], residues 0..3 mod 4, exact".into())
}

fn proof_blocks() -> Outcome {
    let mut checked = 0;
    for block in BlockId::all() {
        let levels: &[u64] = match block.parity {
            Parity::Even => &[4, 8, 12],
            Parity::Odd => &[1, 5, 9, 13],
        };
        for &l in levels {
            let c = evaluate_block(block, l).map_err(|e| e.to_string())?;
            if !c.holds() {
                return Err(format!(
                    "{} at l={l}: sum={} polynomial={}",
                    block.name(),
                    c.sum,
                    c.polynomial
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} block identities exact"))
}

fn floyd() -> Outcome {
    for l in 0..=21u64 {
        let f = floyd_f(l);
        let o = uniform(SystemKind::Floyd3, 3, l);
        if l % 2 == 1 {
            if !f.is_zero() || !o.is_zero() {
                return Err(format!("odd l={l}: closed={f} oracle={o}"));
            }
            continue;
        }
        let cases = floyd_count_cases(l).map_err(|e| e.to_string())?;
        let listed = BigCount::from(floyd_enumerate(l).count());
        if f != cases || f != listed || f != o {
            return Err(format!(
                "l={l}: closed={f} cases={cases} listed={listed} oracle={o}"
            ));
        }
    }
    Ok("four-way agreement for even l <= 20, zero for odd l".into())
}

fn magic() -> Outcome {
    for n in 1..=100u64 {
        let want = BigCount::from(n * (1 + n * n) / 2);
        let f = floyd_f(2 * n - 2);
        let m = magic_constant(n).map_err(|e| e.to_string())?;
        if f != want || m != want {
            return Err(format!("n={n}: floyd={f} magic={m} want={want}"));
        }
        if let Some(&a) = A006003.get(n as usize) {
            if f != a {
                return Err(format!("n={n}: floyd={f} A006003={a}"));
            }
        }
    }
    Ok("n in [1,100], A006003 terms 1..20 match".into())
}

fn gf_counter() -> Outcome {
    let cfg = GfConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0dd5);
    // draw until 100 even-sum instances; odd-sum draws are checked too
    let (mut even, mut odd) = (0, 0);
    let mut i = 0;
    while even < 100 {
        i += 1;
        let k = rng.gen_range(3..=5usize);
        let rhs: Vec<u64> = (0..k).map(|_| rng.gen_range(0..=8)).collect();
        let g = count_general(&rhs, &cfg).map_err(|e| e.to_string())?;
        let o = general(&rhs);
        if g != o {
            return Err(format!("instance {i} {rhs:?}: gf={g} oracle={o}"));
        }
        let mut perm = rhs.clone();
        perm.shuffle(&mut rng);
        let p = count_general(&perm, &cfg).map_err(|e| e.to_string())?;
        if p != g {
            return Err(format!(
                "instance {i}: {rhs:?} gives {g}, permutation {perm:?} gives {p}"
            ));
        }
        if rhs.iter().sum::<u64>() % 2 == 1 {
            odd += 1;
            if !g.is_zero() {
                return Err(format!("odd-sum instance {rhs:?} gave {g}"));
            }
        } else {
            even += 1;
        }
    }
    let table = count_general_table(4, 40, &cfg).map_err(|e| e.to_string())?;
    for (l, g) in table.iter().enumerate() {
        let c = count_theorem(l as u64);
        if *g != c {
            return Err(format!("uniform l={l}: gf={g} closed={c}"));
        }
    }
    Ok(format!("{even} even-sum and {odd} odd-sum seeded instances match the oracle and their permutations; uniform l <= 40 exact"))
}

fn delta_symmetry() -> Outcome {
    for l in 0..=12u64 {
        let spec = SystemSpec::uniform(SystemKind::Full4, 4, l as i64)
            .validate()
            .unwrap();
        let (mut neg, mut pos) = (0u64, 0u64);
        for m in enumerate_solutions(&spec, None) {
            match classify_delta(&m.reduced_rhs(l).expect("k = 4 solution")) {
                DeltaClass::Negative => neg += 1,
                DeltaClass::Positive => pos += 1,
                DeltaClass::Zero => {}
            }
        }
        if neg != pos {
            return Err(format!("l={l}: negative={neg} positive={pos}"));
        }
    }
    Ok("negative and positive classes equal for l <= 12".into())
}

fn divisibility() -> Outcome {
    let main = [
        Formula::EvenMain,
        Formula::OddMain,
        Formula::Floyd,
        Formula::MagicConstant,
    ];
    let mut checked = 0;
    for f in ALL_FORMULAS.into_iter().filter(|f| main.contains(f)) {
        let den = num_bigint::BigInt::from(f.denominator());
        for l in 0..=10_000u64 {
            if f.check_domain(l).is_err() {
                continue;
            }
            if f == Formula::Floyd && l % 2 == 1 {
                continue;
            }
            if f.numerator(l) % &den != num_bigint::BigInt::from(0) {
                return Err(format!("{f:?} at l={l} leaves a remainder mod {den}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} numerators divisible by 576, 576, 16, 2"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("closed form vs oracle", closed_vs_oracle, Some(30)),
        ("spot values", spot_values, None),
        ("strip counter per pair", strip_per_pair, Some(60)),
        ("strip counter aggregate", strip_aggregate, Some(10)),
        ("proof-block identities", proof_blocks, None),
        ("three-equation system", floyd, Some(5)),
        ("magic-constant remap", magic, None),
        ("generating-function counter", gf_counter, Some(60)),
        ("delta symmetry", delta_symmetry, None),
        ("divisibility", divisibility, None),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(s)) if took > Duration::from_secs(s) => {
                Err(format!("took {took:.2?}, budget {s}s"))
            }
            (o, _) => o,
        };
        let budget = budget.map(|s| format!(" / {s}s")).unwrap_or_default();
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{took:.2?}{budget}]", i + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {msg} [{took:.2?}{budget}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
