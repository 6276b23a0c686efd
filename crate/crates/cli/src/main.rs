use std::path::PathBuf;
use std::process::ExitCode;

use almostcover::FieldSpec;
use almostcover_cli::{bound, gb, load, solve, verify, BoundSelection, CliError, ReportDocument, SolveTarget};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "almostcover", version, about = "Exact almost-cover computations for finite point sets")]
struct Cli {
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Omit timings so that output is byte-identical across runs.
    #[arg(long, global = true)]
    no_timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Point-set file.
    file: Option<PathBuf>,
    /// Generated family, e.g. `vnk:4:2`, `jnq:2:3`, `perm:4`, `ag:2:3`.
    #[arg(long)]
    family: Option<String>,
    /// Field for the family: `rational` or `gf:<p>`.
    #[arg(long)]
    field: Option<FieldSpec>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced deglex Groebner basis and standard monomials of the vanishing ideal.
    Gb {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Lower bounds on the almost-cover number.
    Bound {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "all")]
        method: BoundSelection,
        /// Point index for a certificate at a single point.
        #[arg(long)]
        point: Option<usize>,
    },
    /// Exact minimum almost covers.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        /// Index of the excluded point.
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        point: Option<usize>,
        /// Solve for every point and report AC and ac.
        #[arg(long)]
        all: bool,
        /// Branch-and-bound node budget per point.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run a verification suite: main, main2, main3, main4, sharpness, binomial, szw.
    Verify {
        suite: String,
        /// Largest dimension in the suite's parameter grid.
        #[arg(long)]
        max_n: Option<usize>,
    },
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(value) = std::env::var("ALMOSTCOVER_THREADS") {
        let n: usize = value
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::usage(format!("ALMOSTCOVER_THREADS must be a positive integer, got `{value}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::invariant(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ReportDocument, CliError> {
    configure_threads()?;
    let loaded = |i: &InputArgs| load(i.file.as_deref(), i.family.as_deref(), i.field);
    match &cli.command {
        Command::Gb { input } => gb(&loaded(input)?),
        Command::Bound { input, method, point } => bound(&loaded(input)?, *method, *point),
        Command::Solve { input, point, all, budget } => {
            let target = if *all { SolveTarget::All } else { SolveTarget::Point(point.expect("enforced by clap")) };
            solve(&loaded(input)?, target, *budget)
        }
        Command::Verify { suite, max_n } => verify::verify(suite, *max_n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(mut doc) => {
            if cli.no_timings {
                doc.timings = None;
            }
            if cli.json {
                println!("{}", doc.to_json());
            } else {
                print!("{}", doc.to_text());
            }
            if doc.command == "verify" && doc.results["passed"] != true {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
