//! Command-line front end: load complexes and loci, run checks, print reports.
//!
//! Exit status: 0 success, 1 checked and failed, 2 input error, 3 resource cap.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "perverse-loci", version, about = "Jump loci and perversity checks for free complexes over Laurent rings")]
struct Cli {
    /// Print reports as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for per-degree computations (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// S-pair budget per Gröbner basis; overrides PERVERSE_LOCI_SPAIR_BUDGET.
    #[arg(long, global = true)]
    spair_budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that consecutive differentials compose to zero.
    Validate { complex: PathBuf },
    /// Jumping ideals, codimensions and emptiness per degree.
    JumpIdeals {
        complex: PathBuf,
        /// Degree range `a..b` (inclusive); defaults to one past each end of the complex.
        #[arg(long, allow_hyphen_values = true)]
        degrees: Option<String>,
    },
    /// Exactness in negative degrees of the complex and of its dual.
    Exactness { complex: PathBuf },
    /// Perversity verdict for a complex, a loci file, or a complex with declared loci.
    Perversity {
        input: PathBuf,
        /// Declared loci for the complex given as input.
        #[arg(long)]
        loci: Option<PathBuf>,
        /// Random points for comparing declared loci with the complex.
        #[arg(long, default_value_t = 40)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Codimensions of every declared locus and component.
    Codims { loci: PathBuf },
    /// Print a built-in fixture as a complex or loci file.
    Fixtures {
        /// Fixture name; omit to list all fixtures.
        name: Option<String>,
        /// Print the declared loci instead of the complex.
        #[arg(long)]
        loci: bool,
        /// Shift the fixture by this many degrees (degree i moves to i + s).
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<i32>,
        /// Write `<name>.complex.toml` and `<name>.loci.toml` here instead of printing.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Cohomology dimensions of the complex specialized at given points.
    Sample {
        complex: PathBuf,
        /// TOML file with `points = [[["scale", "angle"], ...], ...]` and optional `degrees`.
        #[arg(long)]
        points: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    if let Some(b) = cli.spair_budget {
        perverse_loci::groebner::set_default_spair_budget(b);
    }
    let outcome = commands::run(&cli.command, cli.json);
    match outcome {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status())
        }
    }
}
