//! Multi-seed experiment sweeps.
//!
//! With the `parallel` feature (on by default) seeds fan out over the rayon
//! pool, one engine per seed. Without it, or through
//! [`run_sweep_sequential`], seeds run one after another. Both paths return
//! rows in ascending seed order and produce identical results.

use std::io::{self, Write};

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

use crate::engine::run_quiet;
use crate::error::GaError;
use crate::genome::{ConfigError, Fitness, GaConfig};
use crate::prng::parse_seed;
use crate::problems::Problem;

pub const SUMMARY_HEADER: &str = "seed,best_ever,first_attained_at,final_top,final_sum";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedListError {
    #[error("seed list is empty")]
    Empty,
    #[error("invalid seed `{0}`")]
    Invalid(String),
    #[error("seed range {0}..{1} is reversed")]
    Reversed(u64, u64),
}

/// Parses `A..B` (inclusive), a comma-separated list, or a single seed.
/// Seeds may be decimal or `0x`-prefixed hex.
pub fn parse_seeds(text: &str) -> Result<Vec<u64>, SeedListError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(SeedListError::Empty);
    }
    let one = |s: &str| parse_seed(s).map_err(|_| SeedListError::Invalid(s.trim().to_owned()));
    if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (one(lo)?, one(hi.strip_prefix('=').unwrap_or(hi))?);
        if lo > hi {
            return Err(SeedListError::Reversed(lo, hi));
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',').map(one).collect()
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Seeds(#[from] SeedListError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("run for seed {seed} failed: {source}")]
    Run { seed: u64, source: GaError },
}

/// A base configuration evaluated once per seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    base: GaConfig,
    problem: Problem,
    seeds: Vec<u64>,
}

impl SweepSpec {
    /// Seeds are sorted and deduplicated; `base.seed` is ignored.
    pub fn new(base: GaConfig, problem: Problem, mut seeds: Vec<u64>) -> Result<Self, SweepError> {
        if seeds.is_empty() {
            return Err(SeedListError::Empty.into());
        }
        base.validate()?;
        seeds.sort_unstable();
        seeds.dedup();
        Ok(Self {
            base,
            problem,
            seeds,
        })
    }

    pub fn seeds(&self) -> &[u64] {
        &self.seeds
    }

    pub fn config_for(&self, seed: u64) -> GaConfig {
        GaConfig { seed, ..self.base }
    }

    fn run_one(&self, seed: u64) -> Result<SweepRow, SweepError> {
        let result = run_quiet(&self.config_for(seed), &self.problem)
            .map_err(|source| SweepError::Run { seed, source })?;
        let last = result
            .last()
            .copied()
            .expect("runs have at least one generation");
        Ok(SweepRow {
            seed,
            best_ever: result.best_ever_fitness,
            first_attained_at: result.first_attained_at,
            final_top: last.top_fitness,
            final_sum: last.sum_fitness,
        })
    }
}

/// Summary of one seed's run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepRow {
    pub seed: u64,
    pub best_ever: Fitness,
    pub first_attained_at: u32,
    pub final_top: Fitness,
    pub final_sum: u32,
}

pub fn run_sweep_sequential(spec: &SweepSpec) -> Result<Vec<SweepRow>, SweepError> {
    spec.seeds.iter().map(|&seed| spec.run_one(seed)).collect()
}

#[cfg(feature = "parallel")]
pub fn run_sweep_parallel(spec: &SweepSpec) -> Result<Vec<SweepRow>, SweepError> {
    let results: Vec<_> = spec
        .seeds
        .par_iter()
        .map(|&seed| spec.run_one(seed))
        .collect();
    // first failure in seed order, not completion order
    results.into_iter().collect()
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, SweepError> {
    #[cfg(feature = "parallel")]
    {
        run_sweep_parallel(spec)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_sweep_sequential(spec)
    }
}

pub fn write_summary<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{SUMMARY_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.seed, r.best_ever, r.first_attained_at, r.final_top, r.final_sum
        )?;
    }
    out.flush()
}
