//! `kite`: command-line checks for finite residuated lattices, frames and
//! kites. Exit status: 0 pass, 1 check failure, 2 input error, 3 budget
//! exhausted before a verdict.

mod commands;
mod resolve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kite_core::report::{Format, RunConfig};

#[derive(Parser)]
#[command(name = "kite", version, about = "Checks for residuated lattices, frames and kites")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Largest element level examined
    #[arg(long, global = true, default_value_t = 2)]
    depth: usize,
    /// Samples drawn when a space is too large to enumerate
    #[arg(long, global = true, default_value_t = 1000)]
    samples: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Truncation bound K for embedding products
    #[arg(long = "trunc-k", global = true, default_value_t = 8)]
    trunc_k: usize,
    /// Cap on evaluations per check
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,
    /// text, or json for one record per line
    #[arg(long, global = true, default_value = "text")]
    format: Format,
    /// Root of a corpus with lattices/, frames/ and maps/ subdirectories
    #[arg(long = "corpus-dir", global = true)]
    corpus_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the residuated lattice axioms and classify the algebra
    VerifyLattice { lattice: String },
    /// Classify a frame among the shapes that carry subdirectly irreducible kites
    ClassifyFrame {
        frame: String,
        /// Classify for this lattice (only its triviality matters)
        #[arg(long)]
        lattice: Option<String>,
    },
    /// Axiom, prelinearity and divisibility suites on a kite
    KiteCheck {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        frame: String,
    },
    /// Subdirect irreducibility of a kite
    SiCheck {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        frame: String,
    },
    /// Split a kite along the connected components of its frame
    Decompose {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        frame: String,
    },
    /// Embeddings of the infinite-frame kites into truncated products
    EmbedCheck {
        #[arg(long)]
        lattice: String,
        #[arg(long, value_enum, default_value_t = EmbedChoice::All)]
        embedding: EmbedChoice,
    },
    /// Frame transformation conditions and the induced homomorphism
    HomCheck {
        #[arg(long)]
        map: String,
        /// Overrides the source named in the map file
        #[arg(long)]
        source: Option<String>,
        /// Overrides the target named in the map file
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value = "builtin:c2")]
        lattice: String,
        /// Depth of the index lemma checks
        #[arg(long = "lemma-depth", default_value_t = 8)]
        lemma_depth: usize,
        /// A second map out of the target, for the composition report
        #[arg(long)]
        then: Option<String>,
    },
    /// Print a lattice or frame in file format, for seeding a corpus
    Export {
        #[arg(value_enum)]
        kind: ExportKind,
        reference: String,
    },
    /// List all lattices or frames of a given size up to isomorphism
    Enumerate {
        #[arg(value_enum)]
        kind: EnumKind,
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EmbedChoice {
    Phi1,
    Phi2,
    Phi3,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportKind {
    Lattice,
    Frame,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    Lattices,
    Frames,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        depth: cli.run.depth,
        samples: cli.run.samples,
        seed: cli.run.seed,
        trunc_k: cli.run.trunc_k,
        budget: cli.run.budget,
        format: cli.run.format,
    };
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let ctx = resolve::Resolver::new(cli.run.corpus_dir);
    if let Command::Export { kind, reference } = &cli.command {
        return match commands::export(&ctx, *kind, reference) {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    match commands::run(&cli.command, &ctx, cfg) {
        Ok(report) => {
            print!("{}", report.render(cfg.format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
