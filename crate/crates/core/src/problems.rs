//! Built-in fitness functions.

use std::fmt;
use std::str::FromStr;

use crate::genome::{popcount32, Chromosome, Fitness};

/// Maps a chromosome to its fitness. Implementations must be pure.
pub trait FitnessFunction {
    fn fitness(&self, c: Chromosome) -> Fitness;
}

impl<F> FitnessFunction for F
where
    F: Fn(Chromosome) -> Fitness,
{
    fn fitness(&self, c: Chromosome) -> Fitness {
        self(c)
    }
}

/// OneMax: the number of set bits, in `0..=32`.
pub fn bitcount_fitness(c: Chromosome) -> Fitness {
    Fitness(popcount32(c) as u16)
}

/// Number of bit positions where `c` agrees with `target`, in `0..=32`.
pub fn pattern_fitness(target: Chromosome, c: Chromosome) -> Fitness {
    let mismatches = (target.to_u32() ^ c.to_u32()).count_ones();
    Fitness((32 - mismatches) as u16)
}

/// A problem selectable by name from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Problem {
    #[default]
    Bitcount,
    Pattern(Chromosome),
}

impl FitnessFunction for Problem {
    fn fitness(&self, c: Chromosome) -> Fitness {
        match *self {
            Problem::Bitcount => bitcount_fitness(c),
            Problem::Pattern(target) => pattern_fitness(target, c),
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::Bitcount => f.write_str("bitcount"),
            Problem::Pattern(t) => write!(f, "pattern:{:08x}", t.to_u32()),
        }
    }
}

impl FromStr for Problem {
    type Err = String;

    /// Accepts `bitcount` or `pattern:<8 hex digits>`, where the high four
    /// digits form half a.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "bitcount" {
            return Ok(Problem::Bitcount);
        }
        if let Some(hex) = s.strip_prefix("pattern:") {
            if hex.len() != 8 || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
                return Err(format!(
                    "pattern target `{hex}` must be exactly 8 hex digits"
                ));
            }
            let bits = u32::from_str_radix(hex, 16).map_err(|e| e.to_string())?;
            return Ok(Problem::Pattern(Chromosome::from_u32(bits)));
        }
        Err(format!(
            "unknown problem `{s}` (expected `bitcount` or `pattern:<8 hex digits>`)"
        ))
    }
}
