use clap::ValueEnum;
use serde::Serialize;

use dioph_core::closed_form::{count_theorem, floyd_f};
use dioph_core::floyd::floyd_count_cases;
use dioph_core::gf::{count_general, count_general_table, GfConfig};
use dioph_core::oracle::count_bruteforce;
use dioph_core::strip::aggregate;
use dioph_core::{BigCount, SystemKind, SystemSpec, ValidatedSpec};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Closed form when the system is uniform with k = 3 or 4, else gf.
    Auto,
    Oracle,
    Closed,
    Strip,
    Gf,
}

fn closed(k: usize, l: u64) -> Option<BigCount> {
    match k {
        4 => Some(count_theorem(l)),
        3 => Some(floyd_f(l)),
        _ => None,
    }
}

/// Strip geometry for k = 4, the case sums for k = 3.
fn strip(k: usize, l: u64) -> Option<BigCount> {
    match k {
        4 => Some(aggregate(l)),
        3 if l % 2 == 1 => Some(BigCount::zero()),
        3 => Some(floyd_count_cases(l).expect("even level")),
        _ => None,
    }
}

fn not_applicable(engine: Engine) -> CliError {
    CliError::Engine(format!(
        "engine {} needs a uniform right-hand side with k = 3 or k = 4",
        engine_name(engine)
    ))
}

fn engine_name(engine: Engine) -> &'static str {
    match engine {
        Engine::Auto => "auto",
        Engine::Oracle => "oracle",
        Engine::Closed => "closed",
        Engine::Strip => "strip",
        Engine::Gf => "gf",
    }
}

/// Runs `engine` on `spec`; returns the engine actually used.
pub fn count(
    engine: Engine,
    spec: &ValidatedSpec,
    gf: &GfConfig,
) -> Result<(Engine, BigCount), CliError> {
    let uniform = spec.uniform_level();
    let k = spec.k();
    match engine {
        Engine::Auto => match uniform.and_then(|l| closed(k, l)) {
            Some(c) => Ok((Engine::Closed, c)),
            None => count(Engine::Gf, spec, gf),
        },
        Engine::Oracle => Ok((engine, count_bruteforce(spec))),
        Engine::Closed => uniform
            .and_then(|l| closed(k, l))
            .map(|c| (engine, c))
            .ok_or_else(|| not_applicable(engine)),
        Engine::Strip => uniform
            .and_then(|l| strip(k, l))
            .map(|c| (engine, c))
            .ok_or_else(|| not_applicable(engine)),
        Engine::Gf => Ok((engine, count_general(spec.rhs(), gf)?)),
    }
}

/// Counts for `[ℓ; k]`, ℓ = 0..=max_l.
pub fn uniform_table(
    engine: Engine,
    kind: SystemKind,
    k: usize,
    max_l: u64,
    gf: &GfConfig,
) -> Result<Vec<BigCount>, CliError> {
    let levels = 0..=max_l;
    match engine {
        Engine::Auto if closed(k, 0).is_some() => uniform_table(Engine::Closed, kind, k, max_l, gf),
        Engine::Auto | Engine::Gf => Ok(count_general_table(k, max_l, gf)?),
        Engine::Closed => levels
            .map(|l| closed(k, l).ok_or_else(|| not_applicable(engine)))
            .collect(),
        Engine::Strip => levels
            .map(|l| strip(k, l).ok_or_else(|| not_applicable(engine)))
            .collect(),
        Engine::Oracle => levels
            .map(|l| {
                let spec = SystemSpec::uniform(kind, k, l as i64).validate()?;
                Ok(count_bruteforce(&spec))
            })
            .collect(),
    }
}
