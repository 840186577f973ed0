//! A genetic algorithm engine built around fixed-capacity buffers.
//!
//! Chromosomes are 32 bits wide, stored as two 16-bit halves. Populations
//! hold at most [`CAPACITY`] individuals, fitness values live in `0..=100`,
//! and every run is reproducible from a 64-bit seed.
//!
//! ```
//! use tinyga::{bitcount_fitness, run_quiet, GaConfig, Mode};
//!
//! let config = GaConfig { pop_size: 20, n_generations: 10, mutation_per_mille: 1, mode: Mode::Strict, seed: 7 };
//! let result = run_quiet(&config, &bitcount_fitness).unwrap();
//! assert_eq!(result.per_generation.len(), 10);
//! ```

pub mod cli;
pub mod engine;
pub mod error;
pub mod footprint;
pub mod genome;
pub mod prng;
pub mod problems;
pub mod report;
pub mod sweep;

pub use engine::{crossover, run_observed, run_quiet, select_index, Engine, Phase};
pub use error::{GaError, Result};
pub use genome::{
    popcount32, Chromosome, ConfigError, Fitness, GaConfig, GenerationStats, Mode, PopulationState,
    RunResult, CAPACITY, MAX_FITNESS,
};
pub use prng::RngState;
pub use problems::{bitcount_fitness, pattern_fitness, FitnessFunction, Problem};
pub use report::{run, Format, Reporter};
