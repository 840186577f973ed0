#![allow(dead_code)]

//! Test-only helpers: a naive transcription of the reference C++ GA loops,
//! draw accounting for splitmix64, and golden-file access.

use std::path::PathBuf;

use tinyga::{Engine, RngState};

pub const POP_SIZES: [usize; 6] = [2, 3, 4, 10, 99, 100];
pub const MUTATIONS: [u16; 4] = [0, 1, 50, 1000];

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Number of 64-bit steps taken between two states of the same stream.
/// splitmix64 advances by adding an odd constant, so the step count is the
/// state difference times the constant's inverse mod 2^64.
pub fn steps_between(before: &RngState, after: &RngState) -> u64 {
    let mut inv: u64 = 1;
    // Newton iteration for the 2-adic inverse
    for _ in 0..6 {
        inv = inv.wrapping_mul(2u64.wrapping_sub(GAMMA.wrapping_mul(inv)));
    }
    debug_assert_eq!(GAMMA.wrapping_mul(inv), 1);
    after.state().wrapping_sub(before.state()).wrapping_mul(inv)
}

/// Own splitmix64 so the oracle shares no code with the engine's generator.
pub struct OracleRng(u64);

impl OracleRng {
    pub fn new(seed: u64) -> Self {
        OracleRng(seed)
    }

    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(GAMMA);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// `random()`, truncated to a 16-bit `unsigned int`.
    pub fn random(&mut self) -> u16 {
        (self.next() & 0xFFFF) as u16
    }

    /// `random(howsmall, howbig)`.
    pub fn random_range(&mut self, howsmall: u32, howbig: u32) -> u32 {
        if howsmall >= howbig {
            return howsmall;
        }
        let diff = howbig - howsmall;
        ((self.next() & 0xFFFF_FFFF) as u32) % diff + howsmall
    }
}

fn bit_read(x: u16, j: usize) -> bool {
    (x >> j) & 1 == 1
}

fn bit_write(x: &mut u16, j: usize, b: bool) {
    if b {
        *x |= 1 << j;
    } else {
        *x &= !(1 << j);
    }
}

/// The reference library, loop for loop. Compat semantics.
pub struct OracleGa {
    pub t0_fitness: [u16; 100],
    pub top_fitness_val: u32,
    pub sum_fitness_val: u32,
    pub t1_a_population: [u16; 100],
    pub t1_b_population: [u16; 100],
    pub bestcandidate_a: u16,
    pub bestcandidate_b: u16,
    pub t0_a_population: [u16; 100],
    pub t0_b_population: [u16; 100],
    pub next_gen_expected_count: [u32; 100],
    pub bitmutation: u32,
    pub popsize: usize,
    pub rng: OracleRng,
}

impl OracleGa {
    pub fn new(popsize: usize, bitmutation: u16, seed: u64) -> Self {
        let mut ga = OracleGa {
            t0_fitness: [0; 100],
            top_fitness_val: 0,
            sum_fitness_val: 0,
            t1_a_population: [0; 100],
            t1_b_population: [0; 100],
            bestcandidate_a: 0,
            bestcandidate_b: 0,
            t0_a_population: [0; 100],
            t0_b_population: [0; 100],
            next_gen_expected_count: [0; 100],
            bitmutation: bitmutation as u32,
            popsize,
            rng: OracleRng::new(seed),
        };
        ga.randomize_t0_population();
        ga
    }

    fn randomize_t0_population(&mut self) {
        for i in 0..self.popsize {
            let rand_number_a = self.rng.random();
            self.t0_a_population[i] = rand_number_a;
        }
        for i in 0..self.popsize {
            let rand_number_a = self.rng.random();
            self.t0_b_population[i] = rand_number_a;
        }
    }

    pub fn evaluate_t0_fitness(&mut self) {
        self.top_fitness_val = 0;
        self.sum_fitness_val = 0;
        for i in 0..self.popsize {
            self.sum_fitness_val += self.t0_fitness[i] as u32;
            if self.t0_fitness[i] as u32 > self.top_fitness_val {
                self.top_fitness_val = self.t0_fitness[i] as u32;
                self.bestcandidate_a = self.t0_a_population[i];
                self.bestcandidate_b = self.t0_b_population[i];
            }
        }
    }

    pub fn expected_count_t1(&mut self) {
        let popsize = self.popsize as i64;
        let mut x = 0i64;
        while x < popsize - 1 {
            let mut y = 0i64;
            while y < popsize - x - 1 {
                let (yu, yn) = (y as usize, y as usize + 1);
                if self.t0_fitness[yu] > self.t0_fitness[yn] {
                    let t = self.t0_fitness[yu];
                    let a = self.t0_a_population[yu];
                    let b = self.t0_b_population[yu];
                    self.t0_fitness[yu] = self.t0_fitness[yn];
                    self.t0_fitness[yn] = t;
                    self.t0_a_population[yu] = self.t0_a_population[yn];
                    self.t0_a_population[yn] = a;
                    self.t0_b_population[yu] = self.t0_b_population[yn];
                    self.t0_b_population[yn] = b;
                }
                y += 1;
            }
            x += 1;
        }
        let mut current_value = 0u32;
        for i in 0..self.popsize {
            current_value += self.t0_fitness[i] as u32;
            self.next_gen_expected_count[i] = current_value;
        }
    }

    pub fn populate_t1(&mut self) {
        for i in 0..self.popsize {
            let random_value = self
                .rng
                .random_range(0, self.next_gen_expected_count[self.popsize - 1]);
            let mut select_index = 0;
            let mut j = 1;
            while j < self.popsize {
                if random_value >= self.next_gen_expected_count[j - 1]
                    && random_value < self.next_gen_expected_count[j]
                {
                    select_index = j;
                    j = self.popsize;
                }
                j += 1;
            }
            self.t1_a_population[i] = self.t0_a_population[select_index];
            self.t1_b_population[i] = self.t0_b_population[select_index];
        }
    }

    pub fn mate_t1(&mut self) {
        let mut i = 0;
        while i < self.popsize {
            let crossover_site = self.rng.random_range(0, 31) as usize;
            let random_mutation_a = self.rng.random_range(1, 1000);
            let random_mutation_b = self.rng.random_range(1, 1000);
            if random_mutation_a <= self.bitmutation {
                self.t1_b_population[i] = self.rng.random();
            }
            if random_mutation_b <= self.bitmutation {
                self.t1_b_population[i] = self.rng.random();
            }
            let (crossover_site_a, crossover_site_b) = if crossover_site < 16 {
                (crossover_site, 0)
            } else {
                (16, 32 - crossover_site)
            };
            for j in crossover_site_a..16 {
                let site_a = bit_read(self.t1_a_population[i], j);
                let site_b = bit_read(self.t1_a_population[i + 1], j);
                bit_write(&mut self.t1_a_population[i], j, site_b);
                bit_write(&mut self.t1_a_population[i + 1], j, site_a);
            }
            for j in crossover_site_b..16 {
                let site_a = bit_read(self.t1_b_population[i], j);
                let site_b = bit_read(self.t1_b_population[i + 1], j);
                bit_write(&mut self.t1_b_population[i], j, site_b);
                bit_write(&mut self.t1_b_population[i + 1], j, site_a);
            }
            i += 2;
        }
    }

    pub fn prepare_next_generation(&mut self) {
        for i in 0..self.popsize {
            self.t0_a_population[i] = self.t1_a_population[i];
            self.t0_b_population[i] = self.t1_b_population[i];
        }
    }
}

/// First buffer that differs between the engine and the oracle, if any.
/// Compares every slot of every buffer, not only the live ones.
pub fn mismatch(engine: &Engine, oracle: &OracleGa) -> Option<&'static str> {
    let s = engine.state();
    let fitness: Vec<u16> = s.fitness.iter().map(|f| f.get()).collect();
    if s.t0_a != oracle.t0_a_population {
        Some("t0_a")
    } else if s.t0_b != oracle.t0_b_population {
        Some("t0_b")
    } else if s.t1_a != oracle.t1_a_population {
        Some("t1_a")
    } else if s.t1_b != oracle.t1_b_population {
        Some("t1_b")
    } else if fitness[..] != oracle.t0_fitness[..] {
        Some("fitness")
    } else if s.cdf != oracle.next_gen_expected_count {
        Some("cdf")
    } else if u32::from(s.top_fitness.get()) != oracle.top_fitness_val {
        Some("top_fitness")
    } else if s.sum_fitness != oracle.sum_fitness_val {
        Some("sum_fitness")
    } else if (s.best_a, s.best_b) != (oracle.bestcandidate_a, oracle.bestcandidate_b) {
        Some("best")
    } else if engine.rng().state() != oracle.rng.0 {
        Some("rng")
    } else {
        None
    }
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/golden")
        .join(name)
}

/// Golden cases: file name and CLI arguments after `run`.
pub const GOLDEN_CASES: [(&str, &[&str]); 3] = [
    (
        "paper_v0.txt",
        &["--seed", "1", "--mode", "compat", "--verbosity", "0"],
    ),
    (
        "paper_v1.txt",
        &["--seed", "1", "--mode", "compat", "--verbosity", "1"],
    ),
    (
        "paper_v2.txt",
        &[
            "--seed",
            "42",
            "--mode",
            "compat",
            "--pop-size",
            "11",
            "--generations",
            "6",
            "--mutation",
            "50",
            "--verbosity",
            "2",
        ],
    ),
];

/// Small deterministic generator for test inputs (fitness vectors, pairs).
pub struct TestRng(RngState);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(RngState::seed(seed ^ 0xA5A5_5A5A_DEAD_BEEF))
    }

    pub fn below(&mut self, n: u32) -> u32 {
        self.0.draw_range(0, n).unwrap()
    }

    pub fn u32(&mut self) -> u32 {
        self.0.next_u64() as u32
    }

    pub fn u64(&mut self) -> u64 {
        self.0.next_u64()
    }
}

type EngineStep = fn(&mut Engine) -> tinyga::Result<()>;
type OracleStep = fn(&mut OracleGa);

/// Drives an engine step by step alongside the oracle and reports the first
/// phase after which any buffer differs.
pub fn compare_with_oracle(
    pop_size: usize,
    mutation: u16,
    seed: u64,
    generations: u32,
    fitness_seed: u64,
) -> Result<(), String> {
    use tinyga::{popcount32, Fitness, GaConfig, Mode};

    let config = GaConfig {
        pop_size,
        n_generations: generations,
        mutation_per_mille: mutation,
        mode: Mode::Compat,
        seed,
    };
    let mut engine = Engine::new(config).map_err(|e| e.to_string())?;
    let mut oracle = OracleGa::new(pop_size, mutation, seed);
    let mut inputs = TestRng::new(fitness_seed);
    let fail = |g: u32, phase: &str, what: &str| {
        Err(format!(
            "pop {pop_size} mutation {mutation} seed {seed}: {what} differs after {phase} in generation {g}"
        ))
    };
    if let Some(what) = mismatch(&engine, &oracle) {
        return fail(0, "construction", what);
    }
    for g in 0..generations {
        let kind = inputs.below(8);
        for i in 0..pop_size {
            let f = match kind {
                0..=2 => popcount32(engine.chromosome(i).unwrap()) as u16,
                3..=5 => inputs.below(101) as u16,
                6 => inputs.below(4) as u16,
                _ => 0,
            };
            engine
                .set_fitness(i, Fitness(f))
                .map_err(|e| e.to_string())?;
            oracle.t0_fitness[i] = f;
        }
        let steps: [(&str, EngineStep, OracleStep); 5] = [
            (
                "aggregate",
                Engine::aggregate_stats,
                OracleGa::evaluate_t0_fitness,
            ),
            (
                "sort",
                Engine::sort_and_build_cdf,
                OracleGa::expected_count_t1,
            ),
            ("select", Engine::select_into_next, OracleGa::populate_t1),
            ("mate", Engine::mate, OracleGa::mate_t1),
            (
                "advance",
                Engine::advance,
                OracleGa::prepare_next_generation,
            ),
        ];
        for (phase, engine_step, oracle_step) in steps {
            engine_step(&mut engine).map_err(|e| e.to_string())?;
            oracle_step(&mut oracle);
            if let Some(what) = mismatch(&engine, &oracle) {
                return fail(g, phase, what);
            }
        }
    }
    Ok(())
}
