//! Seedable splitmix64 generator.
//!
//! The algorithm is fixed so that a seed reproduces the same GA run in any
//! implementation language. Narrow draws (`next_u16`, `draw_range`) take the
//! low bits of a single 64-bit step, and every non-degenerate draw advances
//! the state exactly once.

use std::fmt;
use std::num::ParseIntError;

use thiserror::Error;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Returned by [`RngState::draw_range`] when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("invalid draw range: lo {lo} is greater than hi {hi}")]
pub struct RangeError {
    pub lo: u32,
    pub hi: u32,
}

/// splitmix64 accumulator.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngState {
    state: u64,
}

impl RngState {
    pub const fn seed(value: u64) -> Self {
        Self { state: value }
    }

    /// Raw accumulator value.
    pub const fn state(&self) -> u64 {
        self.state
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Low 16 bits of one 64-bit step.
    #[inline]
    pub fn next_u16(&mut self) -> u16 {
        self.next_u64() as u16
    }

    /// Uniform draw over the half-open interval `[lo, hi)`, with modulo bias.
    ///
    /// An empty interval (`lo == hi`) yields `lo` and leaves the state
    /// untouched.
    #[inline]
    pub fn draw_range(&mut self, lo: u32, hi: u32) -> Result<u32, RangeError> {
        match hi.checked_sub(lo) {
            None => Err(RangeError { lo, hi }),
            Some(0) => Ok(lo),
            Some(span) => Ok(lo + (self.next_u64() as u32) % span),
        }
    }
}

impl fmt::Debug for RngState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RngState({:#018x})", self.state)
    }
}

/// Parses a seed written in decimal or as `0x`-prefixed hexadecimal.
pub fn parse_seed(text: &str) -> Result<u64, ParseIntError> {
    let text = text.trim();
    match text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => text.parse(),
    }
}
