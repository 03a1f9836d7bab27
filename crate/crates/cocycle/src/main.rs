use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cocycle::commands::{self, read_input, Settings};
use cocycle::error::CliError;
use cocycle::report::{write_atomic, Report};

#[derive(Parser)]
#[command(name = "cocycle", version, about = "Exact computations with 3-cocycles on finite abelian groups")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Largest group order for cohomology (coboundary solving gets twice this).
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    budget_order: u64,
    /// Run the pentagon check (d^4 tuples).
    #[arg(long, global = true)]
    pentagon: bool,
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    max_doublings: u32,
    /// Primes for Nichols ranks, comma separated; each must be 1 mod the braiding modulus.
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    #[arg(long, global = true, default_value_t = 8)]
    cutoff: usize,
    /// Recorded in the report.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the full JSON report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant factors and representatives of H^k(G, Z/N).
    Cohomology {
        /// Invariant factors, e.g. "4" or "2,2".
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Defaults to the exponent of the group.
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// The trilinear form of a 3-cocycle and the trivializability verdict.
    Psi { input: PathBuf },
    /// Search for a cover on which the cocycle becomes a coboundary.
    Trivialize { input: PathBuf },
    /// Quinn's abelian cocycle of a quadratic form.
    Quinn { input: PathBuf },
    /// Hexagons, Mueger center and quadratic form of an abelian pair.
    AbelianCheck { input: PathBuf },
    /// Pointedness of the Yetter-Drinfeld category.
    Pointed { input: PathBuf },
    /// The cocycle of a central extension datum and the extension's profile.
    Extension { input: PathBuf },
    /// Hilbert series prefix of a diagonal Nichols algebra.
    Nichols { input: PathBuf },
    /// Coquasi-Hopf axioms of structure tables (or of the group algebra of a 3-cocycle).
    CqhaVerify { input: PathBuf },
    /// Rank-one bosonization of a quantum-line datum.
    Bosonize { input: PathBuf },
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let o = &cli.opts;
    let settings = Settings {
        budget_order: usize::try_from(o.budget_order).unwrap_or(usize::MAX),
        pentagon: o.pentagon,
        max_doublings: o.max_doublings,
        primes: o.primes.clone(),
        cutoff: o.cutoff,
        seed: o.seed,
    };
    let s = &settings;
    match &cli.command {
        Command::Cohomology { group, degree, modulus } => {
            commands::cohomology(&commands::parse_group(group)?, *degree, *modulus, s)
        }
        Command::Psi { input } => commands::psi_report(&read_input(input)?, s),
        Command::Trivialize { input } => commands::trivialize_report(&read_input(input)?, s),
        Command::Quinn { input } => commands::quinn(&read_input(input)?, s),
        Command::AbelianCheck { input } => commands::abelian_check(&read_input(input)?, s),
        Command::Pointed { input } => commands::pointed(&read_input(input)?, s),
        Command::Extension { input } => commands::extension(&read_input(input)?, s),
        Command::Nichols { input } => commands::nichols(&read_input(input)?, s),
        Command::CqhaVerify { input } => commands::cqha_verify(&read_input(input)?, s),
        Command::Bosonize { input } => commands::bosonize(&read_input(input)?, s),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.opts.out.clone();
    let result = run(cli).and_then(|report| {
        if let Some(path) = &out {
            let mut text = serde_json::to_string_pretty(&report.to_json()).expect("reports serialize");
            text.push('\n');
            write_atomic(path, &text)?;
        }
        print!("{}", report.to_text());
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
