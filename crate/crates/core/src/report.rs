//! Per-generation output.
//!
//! The `paper` format reproduces the reference library's serial log byte
//! for byte (apart from using `\n` line endings): a two-line blank header,
//! then one block per generation whose size grows with the verbosity level.
//! `csv` streams one row per generation and `json` writes a single document
//! when the run ends.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::Serialize;

use crate::engine::Engine;
use crate::genome::{GaConfig, RunResult};

/// Highest verbosity with its own output; larger requests are capped.
pub const MAX_VERBOSITY: u8 = 2;

pub const CSV_HEADER: &str = "generation,top_fitness,sum_fitness,best_a,best_b";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Paper,
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Paper => "paper",
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(Format::Paper),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!(
                "unknown format `{other}` (expected paper, csv or json)"
            )),
        }
    }
}

pub struct Reporter<W: Write> {
    format: Format,
    verbosity: u8,
    sink: W,
}

impl<W: Write> Reporter<W> {
    pub fn new(format: Format, verbosity: u8, sink: W) -> Self {
        Self {
            format,
            verbosity: verbosity.min(MAX_VERBOSITY),
            sink,
        }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn verbosity(&self) -> u8 {
        self.verbosity
    }

    pub fn into_inner(self) -> W {
        self.sink
    }

    pub fn report_run_header(&mut self) -> io::Result<()> {
        match self.format {
            Format::Paper => self.sink.write_all(b"\n\n"),
            Format::Csv => writeln!(self.sink, "{CSV_HEADER}"),
            Format::Json => Ok(()),
        }
    }

    /// Reports generation `generation` of `engine`. Expects to be called
    /// between `process_generation` and `advance`, when the current buffers
    /// are sorted and the next generation has been mated.
    pub fn report_generation(&mut self, engine: &Engine, generation: u32) -> io::Result<()> {
        let s = engine.state();
        match self.format {
            Format::Paper => {
                let w = &mut self.sink;
                writeln!(
                    w,
                    "generation={generation} , top fitness={} , sum fitness={}",
                    s.top_fitness, s.sum_fitness
                )?;
                if self.verbosity >= 1 {
                    writeln!(w, "top candidate (BIN):{:b} {:b}", s.best_a, s.best_b)?;
                    writeln!(w, "top candidate (DEC):{} {}", s.best_a, s.best_b)?;
                }
                if self.verbosity >= 2 {
                    let n = engine.pop_size();
                    writeln!(w, "printing each individual+fitness")?;
                    for i in 0..n {
                        writeln!(w, "{:b} {:b} ({})", s.t0_a[i], s.t0_b[i], s.fitness[i])?;
                    }
                    writeln!(w, "printing next gen expected count")?;
                    for i in 0..n {
                        writeln!(w, "individual={i} , {}", s.cdf[i])?;
                    }
                    writeln!(w, "printing each of next gen individuals")?;
                    for i in 0..n {
                        writeln!(w, "{:b} {:b}", s.t1_a[i], s.t1_b[i])?;
                    }
                }
                Ok(())
            }
            Format::Csv => writeln!(
                self.sink,
                "{generation},{},{},{},{}",
                s.top_fitness, s.sum_fitness, s.best_a, s.best_b
            ),
            Format::Json => Ok(()),
        }
    }

    pub fn finalize_run(&mut self, config: &GaConfig, result: &RunResult) -> io::Result<()> {
        if self.format == Format::Json {
            let doc = JsonRun::new(config, result);
            serde_json::to_writer_pretty(&mut self.sink, &doc)?;
            self.sink.write_all(b"\n")?;
        }
        self.sink.flush()
    }
}

#[derive(Debug, Serialize)]
struct JsonRun<'a> {
    config: &'a GaConfig,
    generations: Vec<JsonGeneration>,
    best_ever: JsonBest,
}

#[derive(Debug, Serialize)]
struct JsonGeneration {
    generation: u32,
    top_fitness: u16,
    sum_fitness: u32,
    best_a: u16,
    best_b: u16,
}

#[derive(Debug, Serialize)]
struct JsonBest {
    a: u16,
    b: u16,
    fitness: u16,
    first_attained_at: u32,
}

impl<'a> JsonRun<'a> {
    fn new(config: &'a GaConfig, result: &RunResult) -> Self {
        Self {
            config,
            generations: result
                .per_generation
                .iter()
                .map(|g| JsonGeneration {
                    generation: g.generation,
                    top_fitness: g.top_fitness.get(),
                    sum_fitness: g.sum_fitness,
                    best_a: g.best.a,
                    best_b: g.best.b,
                })
                .collect(),
            best_ever: JsonBest {
                a: result.best_ever.a,
                b: result.best_ever.b,
                fitness: result.best_ever_fitness.get(),
                first_attained_at: result.first_attained_at,
            },
        }
    }
}

/// Runs `config` end to end, writing every generation to `reporter`.
pub fn run<F, W>(
    config: &GaConfig,
    problem: &F,
    reporter: &mut Reporter<W>,
) -> crate::error::Result<RunResult>
where
    F: crate::problems::FitnessFunction + ?Sized,
    W: Write,
{
    reporter.report_run_header()?;
    let result = crate::engine::run_observed(config, problem, |engine, generation| {
        Ok(reporter.report_generation(engine, generation)?)
    })?;
    reporter.finalize_run(config, &result)?;
    Ok(result)
}
