use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::Report;

#[derive(Parser)]
#[command(
    name = "rigid-covers",
    version,
    about = "Abelian covers of the plane branched over line arrangements"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Line arrangements
    Arrangement {
        #[command(subcommand)]
        action: ArrangementCmd,
    },
    /// Branched covers
    Cover {
        #[command(subcommand)]
        action: CoverCmd,
    },
    /// Character sets A_phi
    Characters {
        #[command(subcommand)]
        action: CharactersCmd,
    },
    /// Symmetries lifting to the cover
    Symmetry {
        #[command(subcommand)]
        action: SymmetryCmd,
    },
    /// Real structures
    Real {
        #[command(subcommand)]
        action: RealCmd,
    },
    /// Smith, Lefschetz and Miyaoka-Yau bounds
    Bounds {
        #[command(subcommand)]
        action: BoundsCmd,
    },
    /// Reproduce the bundled golden values
    Paper {
        #[command(subcommand)]
        action: PaperCmd,
    },
}

#[derive(Subcommand)]
enum ArrangementCmd {
    /// Incidence data: multiplicities, points, real lines, automorphisms
    Info {
        /// `builtin:<name>` or a path to an arrangement JSON file
        arrangement: String,
    },
}

#[derive(Subcommand)]
enum CoverCmd {
    /// Per-point smoothness certificate
    Smoothness {
        /// `builtin:example1..3` or a path to a cover JSON file
        cover: String,
    },
    /// K^2, e, chi and the branch curve table
    Invariants { cover: String },
}

#[derive(Subcommand)]
enum CharactersCmd {
    /// Enumerate A_phi with r-profiles
    List { cover: String },
}

#[derive(Subcommand)]
enum SymmetryCmd {
    /// Character-preserving symmetries and the group Kl(X)
    Search { cover: String },
}

#[derive(Subcommand)]
enum RealCmd {
    /// Conjugacy classes of anti-holomorphic involutions
    Classify { cover: String },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Check Hodge data, or a builtin cover's real structures, against the bounds
    Check {
        /// `builtin:example1..3` or a path to a Hodge data JSON file
        input: String,
        /// Number of real components with b1 >= 3 (defaults to the count in the data)
        #[arg(long)]
        k3: Option<u64>,
        /// Treat the surface as negatively curved (ball quotient)
        #[arg(long)]
        negatively_curved: bool,
        /// Irregularity used for builtin covers
        #[arg(long, default_value_t = 0)]
        q: u64,
    },
}

#[derive(Subcommand)]
enum PaperCmd {
    /// Run the full reproduction suite and diff it against the golden files
    Verify,
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Arrangement {
            action: ArrangementCmd::Info { arrangement },
        } => commands::arrangement_info(arrangement),
        Command::Cover {
            action: CoverCmd::Smoothness { cover },
        } => commands::cover_smoothness(cover),
        Command::Cover {
            action: CoverCmd::Invariants { cover },
        } => commands::cover_invariants(cover),
        Command::Characters {
            action: CharactersCmd::List { cover },
        } => commands::characters_list(cover),
        Command::Symmetry {
            action: SymmetryCmd::Search { cover },
        } => commands::symmetry_search(cover),
        Command::Real {
            action: RealCmd::Classify { cover },
        } => commands::real_classify(cover),
        Command::Bounds {
            action:
                BoundsCmd::Check {
                    input,
                    k3,
                    negatively_curved,
                    q,
                },
        } => commands::bounds_check(input, *k3, *negatively_curved, *q),
        Command::Paper {
            action: PaperCmd::Verify,
        } => commands::paper_verify(),
    }
}

fn emit(cli: &Cli, report: &Report) -> anyhow::Result<()> {
    let mut body = match cli.format {
        Format::Text => report.text.clone(),
        Format::Json => serde_json::to_string_pretty(&report.json)?,
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &report) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
