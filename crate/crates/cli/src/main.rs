use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod output;

use output::{emit, Failure, Format};

#[derive(Parser)]
#[command(name = "ratgenus", version, about = "Rational genus bounds from Heegaard Floer correction terms")]
struct Cli {
    /// Seed for generated inputs.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Truncation depth for the cone oracle (default: per cone, sum V + sum H + 2).
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Output file; a manifest is written to `<out>.manifest.json`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// d(L(p,q), i) for every lens space with p <= pmax.
    DTable {
        #[arg(long)]
        pmax: u64,
    },
    /// Per-class Turaev function of L(p,q), computed two ways.
    Theta {
        /// `p,q`
        #[arg(long)]
        lens: String,
    },
    /// Alexander gradings of the U-knot in L(p,n): closed form and d-invariant route.
    Uknot {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: i64,
    },
    /// Genus bound report for one class, or a sweep over lens spaces.
    Bounds {
        /// `p,q`
        #[arg(long, conflicts_with_all = ["manifold", "sweep"])]
        lens: Option<String>,
        /// `L(p,q)#L(p,q)#...`
        #[arg(long, conflicts_with = "sweep")]
        manifold: Option<String>,
        /// Residues, one per summand, e.g. `1` or `1,2`.
        #[arg(long)]
        class: Option<String>,
        /// Rational longitude data `p',q'`.
        #[arg(long)]
        longitude: Option<String>,
        /// Emit rows for every class of every L(p,q) with 2 <= p <= pmax.
        #[arg(long, value_name = "PMAX")]
        sweep: Option<u64>,
    },
    /// Label patterns versus the truncated-module oracle on circular cones.
    ConeCheck {
        /// JSON file with one cone or an array of cones; otherwise cones are generated.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
    /// Profile laws on V/H profiles.
    ProfileCheck {
        /// JSON file with one profile; otherwise profiles are generated.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 10000)]
        count: usize,
        /// Ambient manifold of the file's profile, for conjugation.
        #[arg(long, requires = "class")]
        manifold: Option<String>,
        /// Class of the file's knot, for conjugation.
        #[arg(long, requires = "manifold")]
        class: Option<String>,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (name, report) = match &cli.command {
        Command::DTable { pmax } => ("d-table", commands::d_table(*pmax, cli.format)?),
        Command::Theta { lens } => ("theta", commands::theta(lens, cli.format)?),
        Command::Uknot { p, n } => ("uknot", commands::uknot(*p, *n, cli.format)?),
        Command::Bounds { lens, manifold, class, longitude, sweep } => (
            "bounds",
            commands::bounds(
                lens.as_deref(),
                manifold.as_deref(),
                class.as_deref(),
                longitude.as_deref(),
                *sweep,
                cli.format,
            )?,
        ),
        Command::ConeCheck { file, count } => {
            ("cone-check", commands::cone_check(file.as_deref(), cli.seed, *count, cli.depth, cli.format)?)
        }
        Command::ProfileCheck { file, count, manifold, class } => (
            "profile-check",
            commands::profile_check(file.as_deref(), cli.seed, *count, manifold.as_deref(), class.as_deref(), cli.format)?,
        ),
    };
    let argv: Vec<String> = std::iter::once("ratgenus".to_string()).chain(std::env::args().skip(1)).collect();
    emit(&report, argv, name, cli.seed, cli.format, cli.out.as_deref())?;
    if let Some(r) = report.rejected {
        return Err(Failure::Input(r));
    }
    if report.exceptions > 0 {
        return Err(Failure::Consistency(format!("{} cross-check exceptions", report.exceptions)));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
