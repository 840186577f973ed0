//! Generational GA state machine.
//!
//! One generation is: the caller writes a fitness for every individual,
//! then [`Engine::process_generation`] aggregates statistics, sorts the
//! current population by fitness, builds the cumulative selection table,
//! roulette-selects into the next-generation buffers and mates pairs in
//! place. [`Engine::advance`] copies the next generation back. Each step is
//! also exposed on its own so it can be checked in isolation.
//!
//! Compat mode reproduces the reference library's loops exactly, including
//! the phantom mating slot for odd population sizes and the mutation gates
//! that both overwrite half b of the first pair member.

use crate::error::{GaError, Result};
use crate::genome::{
    Chromosome, Fitness, GaConfig, GenerationStats, Mode, PopulationState, RunResult, MAX_FITNESS,
};
use crate::prng::RngState;
use crate::problems::FitnessFunction;

/// Sequencing guard for the generation cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// Fitness values may be written; the generation has not been processed.
    AwaitingFitness,
    /// Mating is done; only [`Engine::advance`] may follow.
    Processed,
}

/// Upper bound (exclusive) of the crossover-site draw. Site 31 is never
/// produced.
pub const CROSSOVER_SITE_BOUND: u32 = 31;

/// Mutation gates draw uniformly from `1..MUTATION_DRAW_BOUND`.
pub const MUTATION_DRAW_BOUND: u32 = 1000;

#[derive(Debug, Clone)]
pub struct Engine {
    config: GaConfig,
    state: PopulationState,
    rng: RngState,
    phase: Phase,
}

impl Engine {
    /// Validates `config`, zeroes every buffer and randomizes the current
    /// population from `config.seed`.
    pub fn new(config: GaConfig) -> Result<Self> {
        config.validate()?;
        let mut engine = Self {
            config,
            state: PopulationState::zeroed(),
            rng: RngState::seed(config.seed),
            phase: Phase::AwaitingFitness,
        };
        engine.randomize_population();
        Ok(engine)
    }

    pub fn config(&self) -> &GaConfig {
        &self.config
    }

    pub fn state(&self) -> &PopulationState {
        &self.state
    }

    pub fn rng(&self) -> &RngState {
        &self.rng
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn pop_size(&self) -> usize {
        self.config.pop_size
    }

    /// Fills all of half a, then all of half b, with successive 16-bit
    /// draws.
    pub fn randomize_population(&mut self) {
        let n = self.pop_size();
        for slot in &mut self.state.t0_a[..n] {
            *slot = self.rng.next_u16();
        }
        for slot in &mut self.state.t0_b[..n] {
            *slot = self.rng.next_u16();
        }
    }

    pub fn chromosome(&self, index: usize) -> Result<Chromosome> {
        self.check_index(index)?;
        Ok(self.state.current(index))
    }

    /// Records the fitness of individual `index`. Strict mode rejects values
    /// above 100; compat mode stores whatever it is given.
    pub fn set_fitness(&mut self, index: usize, value: Fitness) -> Result<()> {
        self.expect_phase("set_fitness", Phase::AwaitingFitness)?;
        self.check_index(index)?;
        if self.config.mode == Mode::Strict && value.get() > MAX_FITNESS {
            return Err(GaError::FitnessRange {
                index,
                value: value.get(),
            });
        }
        self.state.fitness[index] = value;
        Ok(())
    }

    /// Evaluates every individual once, in index order.
    pub fn evaluate_with<F: FitnessFunction + ?Sized>(&mut self, problem: &F) -> Result<()> {
        for i in 0..self.pop_size() {
            let value = problem.fitness(self.state.current(i));
            self.set_fitness(i, value)?;
        }
        Ok(())
    }

    /// Computes the fitness sum and maximum. The best candidate is the first
    /// individual whose fitness strictly exceeds every earlier one, so with
    /// all-zero fitness the previous best is left in place.
    pub fn aggregate_stats(&mut self) -> Result<()> {
        self.expect_phase("aggregate_stats", Phase::AwaitingFitness)?;
        let s = &mut self.state;
        s.top_fitness = Fitness::ZERO;
        s.sum_fitness = 0;
        for i in 0..self.config.pop_size {
            s.sum_fitness += u32::from(s.fitness[i].get());
            if s.fitness[i] > s.top_fitness {
                s.top_fitness = s.fitness[i];
                s.best_a = s.t0_a[i];
                s.best_b = s.t0_b[i];
            }
        }
        Ok(())
    }

    /// Sorts the current population ascending by fitness with an adjacent
    /// swap bubble sort (stable), then writes inclusive prefix sums into the
    /// selection table.
    pub fn sort_and_build_cdf(&mut self) -> Result<()> {
        self.expect_phase("sort_and_build_cdf", Phase::AwaitingFitness)?;
        let n = self.config.pop_size;
        let s = &mut self.state;
        for pass in 0..n.saturating_sub(1) {
            for y in 0..n - pass - 1 {
                if s.fitness[y] > s.fitness[y + 1] {
                    s.fitness.swap(y, y + 1);
                    s.t0_a.swap(y, y + 1);
                    s.t0_b.swap(y, y + 1);
                }
            }
        }
        let mut running = 0u32;
        for i in 0..n {
            running += u32::from(s.fitness[i].get());
            s.cdf[i] = running;
        }
        Ok(())
    }

    /// Roulette selection: fills next-generation slots `0..pop_size` with
    /// copies of current individuals chosen proportionally to fitness.
    pub fn select_into_next(&mut self) -> Result<()> {
        self.expect_phase("select_into_next", Phase::AwaitingFitness)?;
        let n = self.config.pop_size;
        let total = self.state.cdf[n - 1];
        for i in 0..n {
            let r = self.rng.draw_range(0, total)?;
            let pick = select_index(&self.state.cdf[..n], r);
            self.state.t1_a[i] = self.state.t0_a[pick];
            self.state.t1_b[i] = self.state.t0_b[pick];
        }
        Ok(())
    }

    /// Mutation and single-point crossover over consecutive pairs of the
    /// next generation.
    ///
    /// Per pair the draws are: crossover site, gate A, gate B, then one
    /// 16-bit draw for each gate that fires. Only the first member of a
    /// pair is ever mutated. In compat mode both gates replace its half b;
    /// in strict mode gate A replaces half a and gate B half b.
    pub fn mate(&mut self) -> Result<()> {
        self.expect_phase("mate", Phase::AwaitingFitness)?;
        let n = self.config.pop_size;
        let rate = u32::from(self.config.mutation_per_mille);
        let s = &mut self.state;
        for i in (0..n).step_by(2) {
            // i + 1 == n only for odd compat sizes, where it is the phantom
            // slot (n <= 99 there, so still inside the buffer).
            let j = i + 1;
            let site = self.rng.draw_range(0, CROSSOVER_SITE_BOUND)?;
            let gate_a = self.rng.draw_range(1, MUTATION_DRAW_BOUND)?;
            let gate_b = self.rng.draw_range(1, MUTATION_DRAW_BOUND)?;
            if gate_a <= rate {
                let fresh = self.rng.next_u16();
                match self.config.mode {
                    Mode::Compat => s.t1_b[i] = fresh,
                    Mode::Strict => s.t1_a[i] = fresh,
                }
            }
            if gate_b <= rate {
                s.t1_b[i] = self.rng.next_u16();
            }

            let (x, y) = crossover(s.next(i), s.next(j), site);
            (s.t1_a[i], s.t1_b[i]) = (x.a, x.b);
            (s.t1_a[j], s.t1_b[j]) = (y.a, y.b);
        }
        self.phase = Phase::Processed;
        Ok(())
    }

    /// Copies next-generation slots `0..pop_size` into the current
    /// generation and re-opens fitness writes.
    pub fn advance(&mut self) -> Result<()> {
        self.expect_phase("advance", Phase::Processed)?;
        let n = self.config.pop_size;
        let s = &mut self.state;
        s.t0_a[..n].copy_from_slice(&s.t1_a[..n]);
        s.t0_b[..n].copy_from_slice(&s.t1_b[..n]);
        self.phase = Phase::AwaitingFitness;
        Ok(())
    }

    /// Aggregate, sort, select and mate, in that order.
    pub fn process_generation(&mut self) -> Result<()> {
        self.expect_phase("process_generation", Phase::AwaitingFitness)?;
        self.aggregate_stats()?;
        self.sort_and_build_cdf()?;
        self.select_into_next()?;
        self.mate()
    }

    /// Snapshot of the statistics produced by the last aggregation.
    pub fn stats(&self, generation: u32) -> GenerationStats {
        GenerationStats {
            generation,
            top_fitness: self.state.top_fitness,
            sum_fitness: self.state.sum_fitness,
            best: self.state.best(),
        }
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.pop_size() {
            Ok(())
        } else {
            Err(GaError::Index {
                index,
                pop_size: self.pop_size(),
            })
        }
    }

    fn expect_phase(&self, op: &'static str, expected: Phase) -> Result<()> {
        if self.phase == expected {
            Ok(())
        } else {
            Err(GaError::Sequence {
                op,
                phase: self.phase,
            })
        }
    }
}

/// Index selected by a roulette draw `r` against the inclusive prefix sums
/// `cdf`: the `j >= 1` with `cdf[j - 1] <= r < cdf[j]`, or 0 when no such
/// `j` exists.
pub fn select_index(cdf: &[u32], r: u32) -> usize {
    match cdf.partition_point(|&c| c <= r) {
        j if j == cdf.len() => 0,
        j => j,
    }
}

/// Single-point crossover split across the two halves.
///
/// Sites `0..16` swap bits `site..16` of half a and all of half b. Sites
/// `16..32` leave half a alone and swap bits `32 - site..16` of half b, so
/// site 16 is the identity.
pub fn crossover(x: Chromosome, y: Chromosome, site: u32) -> (Chromosome, Chromosome) {
    debug_assert!(site < 32, "crossover site {site} out of range");
    let (mask_a, mask_b) = if site < 16 {
        (high_bits_from(site), 0xFFFF)
    } else {
        (0, high_bits_from(32 - site))
    };
    let diff_a = (x.a ^ y.a) & mask_a;
    let diff_b = (x.b ^ y.b) & mask_b;
    (
        Chromosome::new(x.a ^ diff_a, x.b ^ diff_b),
        Chromosome::new(y.a ^ diff_a, y.b ^ diff_b),
    )
}

/// Mask of bits `from..16`.
fn high_bits_from(from: u32) -> u16 {
    ((0xFFFF_u32 << from) & 0xFFFF) as u16
}

/// Runs `config.n_generations` generations, calling `observe` after each
/// one is processed and before it is advanced.
pub fn run_observed<F, O>(config: &GaConfig, problem: &F, mut observe: O) -> Result<RunResult>
where
    F: FitnessFunction + ?Sized,
    O: FnMut(&Engine, u32) -> Result<()>,
{
    let mut engine = Engine::new(*config)?;
    let mut per_generation = Vec::with_capacity(config.n_generations as usize);
    for generation in 0..config.n_generations {
        engine.evaluate_with(problem)?;
        engine.process_generation()?;
        observe(&engine, generation)?;
        per_generation.push(engine.stats(generation));
        engine.advance()?;
    }
    Ok(RunResult::from_stats(per_generation))
}

/// [`run_observed`] without an observer.
pub fn run_quiet<F: FitnessFunction + ?Sized>(config: &GaConfig, problem: &F) -> Result<RunResult> {
    run_observed(config, problem, |_, _| Ok(()))
}
