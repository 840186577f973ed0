//! Static memory footprint of the engine's persistent buffers, laid out as
//! on a target whose `int` is 16 bits wide.

use std::fmt;

use crate::genome::CAPACITY;

/// Bytes per integer on the embedded target.
pub const TARGET_INT_BYTES: usize = 2;

/// SRAM of an ATmega328.
pub const TARGET_SRAM_BYTES: usize = 2048;

const ARRAYS: [&str; 6] = ["t0_fitness", "t0_a", "t0_b", "t1_a", "t1_b", "cdf"];

// The generation count is handed to the constructor but never read by the
// engine, so it is not counted as persistent state.
const SCALARS: [&str; 6] = [
    "top_fitness",
    "sum_fitness",
    "best_a",
    "best_b",
    "mutation_per_mille",
    "pop_size",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FootprintEntry {
    pub name: &'static str,
    pub slots: usize,
    pub bytes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FootprintReport {
    pub arrays: Vec<FootprintEntry>,
    pub scalars: Vec<FootprintEntry>,
}

impl FootprintReport {
    pub fn array_bytes(&self) -> usize {
        self.arrays.iter().map(|e| e.bytes).sum()
    }

    pub fn scalar_bytes(&self) -> usize {
        self.scalars.iter().map(|e| e.bytes).sum()
    }

    pub fn total_bytes(&self) -> usize {
        self.array_bytes() + self.scalar_bytes()
    }

    pub fn fits_sram(&self) -> bool {
        self.total_bytes() < TARGET_SRAM_BYTES
    }
}

pub fn footprint() -> FootprintReport {
    let entry = |name, slots| FootprintEntry {
        name,
        slots,
        bytes: slots * TARGET_INT_BYTES,
    };
    FootprintReport {
        arrays: ARRAYS.iter().map(|&n| entry(n, CAPACITY)).collect(),
        scalars: SCALARS.iter().map(|&n| entry(n, 1)).collect(),
    }
}

impl fmt::Display for FootprintReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "target int width: {TARGET_INT_BYTES} bytes, capacity: {CAPACITY}"
        )?;
        for e in &self.arrays {
            writeln!(f, "array {} [{}]: {} B", e.name, e.slots, e.bytes)?;
        }
        for e in &self.scalars {
            writeln!(f, "scalar {}: {} B", e.name, e.bytes)?;
        }
        writeln!(f, "arrays: {} B", self.array_bytes())?;
        writeln!(f, "scalars: {} B", self.scalar_bytes())?;
        writeln!(f, "total: {} B", self.total_bytes())?;
        writeln!(
            f,
            "sram budget: {TARGET_SRAM_BYTES} B ({})",
            if self.fits_sram() { "fits" } else { "exceeds" }
        )
    }
}
