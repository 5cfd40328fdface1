mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "framed4", version, about = "Planarity and linking obstructions for framed 4-valent graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Include certificates beyond the ones always reported.
    #[arg(long, global = true)]
    witness: bool,
    /// Largest chord count for `census`.
    #[arg(long, global = true, default_value_t = 5)]
    max_chords: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide planarity; non-planar inputs come with a Δ-minor transcript.
    CheckPlanarity { input: PathBuf },
    /// Search for Δ as a minor.
    DeltaMinor { input: PathBuf },
    /// Count source-sink structures.
    SourceSink { input: PathBuf },
    /// Rotating circuit and chord diagram of every component.
    ChordDiagram { input: PathBuf },
    /// Print the framed 4-graph of a chord word.
    Realize {
        input: PathBuf,
        /// Emit DOT instead of the graph format.
        #[arg(long)]
        dot: bool,
    },
    /// Minimum genus over framing-compatible rotation systems.
    Genus { input: PathBuf },
    /// Find a pair of rotating loops with odd linking number, or evaluate a given pair.
    Linking {
        input: PathBuf,
        /// Two loops (`h0 h1 ...` or `circle i`) to evaluate instead of searching.
        #[arg(long = "loop", num_args = 1, value_name = "LOOP")]
        loops: Vec<String>,
    },
    /// Check that every compatible pair of rotating loops is unlinked.
    Linkless { input: PathBuf },
    /// Parity of the four Δ linking numbers of a diagram of Δ.
    Parity { input: PathBuf },
    /// Compare every planarity criterion over all small chord diagrams.
    Census,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::CheckPlanarity { input } => commands::check_planarity(input, &cli.opts),
        Command::DeltaMinor { input } => commands::delta_minor(input),
        Command::SourceSink { input } => commands::source_sink(input, &cli.opts),
        Command::ChordDiagram { input } => commands::chord_diagram(input),
        Command::Realize { input, dot } => commands::realize(input, *dot),
        Command::Genus { input } => commands::genus(input, &cli.opts),
        Command::Linking { input, loops } => commands::linking(input, loops),
        Command::Linkless { input } => commands::linkless(input),
        Command::Parity { input } => commands::parity(input, &cli.opts),
        Command::Census => commands::census(&cli.opts),
    };
    match result {
        Ok((report, verdict)) => {
            print!("{}", report.render(cli.opts.format));
            if verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
