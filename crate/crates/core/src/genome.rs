//! Chromosomes, fitness values, run configuration and the fixed-capacity
//! population buffers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Slot count of every population buffer, independent of the configured
/// population size.
pub const CAPACITY: usize = 100;

/// Largest fitness value accepted in strict mode.
pub const MAX_FITNESS: u16 = 100;

/// Largest generation count a run may request.
pub const MAX_GENERATIONS: u32 = 65_535;

/// Largest mutation rate, in events per thousand.
pub const MAX_MUTATION_PER_MILLE: u16 = 1000;

/// A 32-bit genome stored as two 16-bit halves.
///
/// Bits inside each half are indexed least-significant first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Chromosome {
    pub a: u16,
    pub b: u16,
}

impl Chromosome {
    pub const fn new(a: u16, b: u16) -> Self {
        Self { a, b }
    }

    /// Packs the halves as `a << 16 | b`.
    pub const fn to_u32(self) -> u32 {
        (self.a as u32) << 16 | self.b as u32
    }

    pub const fn from_u32(bits: u32) -> Self {
        Self {
            a: (bits >> 16) as u16,
            b: bits as u16,
        }
    }

    pub const fn popcount(self) -> u32 {
        popcount32(self)
    }
}

/// Number of set bits across both halves.
pub const fn popcount32(c: Chromosome) -> u32 {
    c.a.count_ones() + c.b.count_ones()
}

#[inline]
pub fn bit_read(word: u16, j: u32) -> bool {
    (word >> j) & 1 == 1
}

#[inline]
pub fn bit_write(word: &mut u16, j: u32, value: bool) {
    if value {
        *word |= 1 << j;
    } else {
        *word &= !(1 << j);
    }
}

/// Solution quality reported by a fitness function.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Fitness(pub u16);

impl Fitness {
    pub const ZERO: Fitness = Fitness(0);

    pub const fn get(self) -> u16 {
        self.0
    }

    pub const fn in_bounds(self) -> bool {
        self.0 <= MAX_FITNESS
    }
}

impl From<u16> for Fitness {
    fn from(value: u16) -> Self {
        Fitness(value)
    }
}

impl fmt::Display for Fitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Behavioral switch between the faithful port and the corrected variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Replicates the reference library, quirks included: odd population
    /// sizes with a phantom mating slot, unchecked fitness writes, and both
    /// mutation gates targeting half b.
    Compat,
    /// Even population sizes only, fitness capped at 100, and mutation gate
    /// A targets half a.
    #[default]
    Strict,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Compat => "compat",
            Mode::Strict => "strict",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "compat" => Ok(Mode::Compat),
            "strict" => Ok(Mode::Strict),
            other => Err(format!(
                "unknown mode `{other}` (expected `compat` or `strict`)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("population size {0} is out of range (must be 1..=100)")]
    PopSizeCompat(usize),
    #[error("population size {0} is out of range (strict mode requires 2..=100)")]
    PopSizeStrict(usize),
    #[error("population size {0} is odd; strict mode requires an even size (use --mode compat or an even --pop-size)")]
    OddPopulation(usize),
    #[error("generation count {0} is out of range (must be 1..=65535)")]
    Generations(u32),
    #[error("mutation rate {0} per mille is out of range (must be 0..=1000)")]
    Mutation(u16),
}

/// Parameters of one GA run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaConfig {
    pub pop_size: usize,
    pub n_generations: u32,
    pub mutation_per_mille: u16,
    pub mode: Mode,
    pub seed: u64,
}

impl GaConfig {
    /// Defaults of the reference sketch (99 individuals, 100 generations,
    /// mutation 1 per mille) in compat mode.
    pub fn reference(seed: u64) -> Self {
        Self {
            pop_size: 99,
            n_generations: 100,
            mutation_per_mille: 1,
            mode: Mode::Compat,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        match self.mode {
            Mode::Compat if !(1..=CAPACITY).contains(&self.pop_size) => {
                return Err(ConfigError::PopSizeCompat(self.pop_size))
            }
            Mode::Strict if !(2..=CAPACITY).contains(&self.pop_size) => {
                return Err(ConfigError::PopSizeStrict(self.pop_size))
            }
            Mode::Strict if self.pop_size % 2 == 1 => {
                return Err(ConfigError::OddPopulation(self.pop_size))
            }
            _ => {}
        }
        if !(1..=MAX_GENERATIONS).contains(&self.n_generations) {
            return Err(ConfigError::Generations(self.n_generations));
        }
        if self.mutation_per_mille > MAX_MUTATION_PER_MILLE {
            return Err(ConfigError::Mutation(self.mutation_per_mille));
        }
        Ok(())
    }
}

/// Persistent buffers of one engine.
///
/// Every array is [`CAPACITY`] slots long and zeroed at construction. Only
/// the first `pop_size` slots hold live individuals; in compat runs with an
/// odd size, slot `pop_size` of the next-generation halves is the phantom
/// mating partner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PopulationState {
    pub t0_a: [u16; CAPACITY],
    pub t0_b: [u16; CAPACITY],
    pub t1_a: [u16; CAPACITY],
    pub t1_b: [u16; CAPACITY],
    pub fitness: [Fitness; CAPACITY],
    /// Inclusive prefix sums of the sorted fitness values.
    pub cdf: [u32; CAPACITY],
    pub top_fitness: Fitness,
    pub sum_fitness: u32,
    pub best_a: u16,
    pub best_b: u16,
}

impl PopulationState {
    pub const fn zeroed() -> Self {
        Self {
            t0_a: [0; CAPACITY],
            t0_b: [0; CAPACITY],
            t1_a: [0; CAPACITY],
            t1_b: [0; CAPACITY],
            fitness: [Fitness::ZERO; CAPACITY],
            cdf: [0; CAPACITY],
            top_fitness: Fitness::ZERO,
            sum_fitness: 0,
            best_a: 0,
            best_b: 0,
        }
    }

    pub fn current(&self, i: usize) -> Chromosome {
        Chromosome::new(self.t0_a[i], self.t0_b[i])
    }

    pub fn next(&self, i: usize) -> Chromosome {
        Chromosome::new(self.t1_a[i], self.t1_b[i])
    }

    pub fn best(&self) -> Chromosome {
        Chromosome::new(self.best_a, self.best_b)
    }
}

impl Default for PopulationState {
    fn default() -> Self {
        Self::zeroed()
    }
}

/// Statistics captured after one generation was processed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: u32,
    pub top_fitness: Fitness,
    pub sum_fitness: u32,
    pub best: Chromosome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunResult {
    pub per_generation: Vec<GenerationStats>,
    pub best_ever: Chromosome,
    pub best_ever_fitness: Fitness,
    pub first_attained_at: u32,
}

impl RunResult {
    /// Folds per-generation statistics into a running best. Later
    /// generations replace the best only on a strict improvement.
    pub fn from_stats(per_generation: Vec<GenerationStats>) -> Self {
        let mut best: Option<GenerationStats> = None;
        for stats in &per_generation {
            if best.is_none_or(|b| stats.top_fitness > b.top_fitness) {
                best = Some(*stats);
            }
        }
        let best = best.unwrap_or(GenerationStats {
            generation: 0,
            top_fitness: Fitness::ZERO,
            sum_fitness: 0,
            best: Chromosome::default(),
        });
        Self {
            per_generation,
            best_ever: best.best,
            best_ever_fitness: best.top_fitness,
            first_attained_at: best.generation,
        }
    }

    pub fn last(&self) -> Option<&GenerationStats> {
        self.per_generation.last()
    }
}
