//! Command-line front end: `run`, `sweep` and `footprint`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::footprint::footprint;
use crate::genome::{GaConfig, Mode};
use crate::prng::parse_seed;
use crate::problems::Problem;
use crate::report::{run, Format, Reporter};
use crate::sweep::{parse_seeds, run_sweep, write_summary, SweepSpec};

/// Exit status for invalid flags or configurations.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for failures while running.
pub const EXIT_FAILURE: i32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "tinyga",
    version,
    about = "Fixed-capacity 32-bit genetic algorithm"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one seeded GA and print per-generation statistics.
    Run(RunArgs),
    /// Run one GA per seed and print a CSV summary.
    Sweep(SweepArgs),
    /// Print the memory footprint of the engine buffers on a 16-bit target.
    Footprint,
}

#[derive(Debug, Args)]
struct GaArgs {
    /// `bitcount` or `pattern:<8 hex digits>`
    #[arg(long, default_value = "bitcount")]
    problem: Problem,
    #[arg(long, default_value_t = 99)]
    pop_size: usize,
    #[arg(long, default_value_t = 100)]
    generations: u32,
    /// Mutation rate in events per thousand
    #[arg(long, default_value_t = 1)]
    mutation: u16,
    /// `strict` or `compat`
    #[arg(long, default_value = "strict")]
    mode: Mode,
}

impl GaArgs {
    fn config(&self, seed: u64) -> GaConfig {
        GaConfig {
            pop_size: self.pop_size,
            n_generations: self.generations,
            mutation_per_mille: self.mutation,
            mode: self.mode,
            seed,
        }
    }
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    ga: GaArgs,
    /// Decimal or 0x-prefixed hex
    #[arg(long, value_parser = parse_seed)]
    seed: u64,
    /// 0..=2; larger values print the same as 2
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=3))]
    verbosity: u8,
    /// `paper`, `csv` or `json`
    #[arg(long, default_value = "paper")]
    format: Format,
    /// Output file (standard output when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    ga: GaArgs,
    /// `A..B` (inclusive) or a comma-separated list
    #[arg(long)]
    seeds: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

/// Parses `args` (including the program name) and executes the command.
/// Returns the process exit status.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return if err.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(&args, stdout),
        Command::Sweep(args) => cmd_sweep(&args, stdout),
        Command::Footprint => cmd_footprint(stdout),
    };
    match outcome {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn open_output<'a>(
    path: Option<&PathBuf>,
    stdout: &'a mut dyn Write,
) -> Result<Box<dyn Write + 'a>, Failure> {
    Ok(match path {
        Some(p) => {
            let file = File::create(p)
                .map_err(|e| Failure::Runtime(format!("cannot create {}: {e}", p.display())))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(stdout)),
    })
}

fn cmd_run(args: &RunArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let config = args.ga.config(args.seed);
    config
        .validate()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let sink = open_output(args.out.as_ref(), stdout)?;
    let mut reporter = Reporter::new(args.format, args.verbosity, sink);
    run(&config, &args.ga.problem, &mut reporter).map_err(|e| Failure::Runtime(e.to_string()))?;
    Ok(())
}

fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let seeds = parse_seeds(&args.seeds).map_err(|e| Failure::Usage(e.to_string()))?;
    let spec = SweepSpec::new(args.ga.config(0), args.ga.problem, seeds)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let rows = run_sweep(&spec).map_err(|e| Failure::Runtime(e.to_string()))?;
    let sink = open_output(args.out.as_ref(), stdout)?;
    write_summary(&rows, sink).map_err(io_failure)
}

fn cmd_footprint(stdout: &mut dyn Write) -> Result<(), Failure> {
    write!(stdout, "{}", footprint()).map_err(io_failure)
}

fn io_failure(e: io::Error) -> Failure {
    Failure::Runtime(format!("output error: {e}"))
}
