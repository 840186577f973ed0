use std::io;

use thiserror::Error;

use crate::engine::Phase;
use crate::genome::ConfigError;
use crate::prng::RangeError;

#[derive(Debug, Error)]
pub enum GaError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("individual index {index} is out of range for population size {pop_size}")]
    Index { index: usize, pop_size: usize },
    #[error("fitness {value} for individual {index} exceeds the maximum of 100")]
    FitnessRange { index: usize, value: u16 },
    #[error("`{op}` called out of sequence (engine phase is {phase:?})")]
    Sequence { op: &'static str, phase: Phase },
    #[error(transparent)]
    Range(#[from] RangeError),
    #[error("output error: {0}")]
    Io(#[from] io::Error),
}

pub type Result<T, E = GaError> = std::result::Result<T, E>;
