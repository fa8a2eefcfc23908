//! `recreg`: exact regularity, recursive regularity and floodlight checks
//! from the command line.
//!
//! Reports are JSON on standard output.  Exit status 0 means the property
//! holds (or the requested object was produced), 1 means it fails and the
//! report carries a certificate, 2 means the input was rejected.

mod commands;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::json;

use commands::Report;

#[derive(Parser)]
#[command(
    name = "recreg",
    version,
    about = "Exact regularity and floodlight computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide regularity; prints lifting heights or a dual certificate.
    CheckRegular { file: PathBuf },
    /// Finest regular coarsening: groups, relaxed walls and heights.
    Frc { file: PathBuf },
    /// Regularity tree of a subdivision.
    Tree { file: PathBuf },
    /// Decide recursive regularity; prints the regularity tree.
    CheckRecursive { file: PathBuf },
    /// Acyclicity of the in-front relation in one or all directions.
    #[command(group(ArgGroup::new("mode").required(true).args(["direction", "all"])))]
    Acyclic {
        file: PathBuf,
        /// Comma-separated exact coordinates, e.g. `1,-2/3,0`.
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<String>,
        /// Certify every direction through the cycles of the dual graph.
        #[arg(long)]
        all: bool,
        /// Longest dual-graph cycle enumerated with `--all` (default: the
        /// number of cells).
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Assign floodlights at the points to the cells of a fan.
    #[command(group(ArgGroup::new("method").required(true).args(["line", "recursive"])))]
    Assign {
        fan: PathBuf,
        points: PathBuf,
        /// Points on a common line: order cells along the line's direction.
        #[arg(long)]
        line: bool,
        /// Recursively regular fans: descend the regularity tree.
        #[arg(long)]
        recursive: bool,
    },
    /// Overlapping conditions of an assignment, with an exact gap if any.
    VerifyOverlap {
        fan: PathBuf,
        points: PathBuf,
        assignment: PathBuf,
    },
    /// Exact uncovered region of a planar fan.
    #[command(name = "uncovered-2d")]
    Uncovered2d {
        fan: PathBuf,
        points: PathBuf,
        assignment: PathBuf,
    },
    /// Try every assignment against the overlapping conditions.
    SearchUniversal { fan: PathBuf, points: PathBuf },
    /// Check a dual certificate.
    VerifyCertificate {
        file: PathBuf,
        /// Check a label-keyed certificate against this subdivision's
        /// regularity system.
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Redundant cables of a spider web.
    Spiderweb { web: PathBuf },
    /// Embed a directional graph into a point set.
    EmbedDigraph {
        digraph: PathBuf,
        points: PathBuf,
        /// Check this bijection instead of matching the drawing.
        #[arg(long)]
        assignment: Option<PathBuf>,
    },
    /// Search for a forcing cycle.
    ForcingCycle {
        digraph: PathBuf,
        /// Longest cycle searched (default: the number of vertices).
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Monte-Carlo coverage estimate, with the exact gap check alongside.
    SampleCoverage {
        fan: PathBuf,
        points: PathBuf,
        assignment: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a section of dimension at most 2 as SVG.
    Plot {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Points to overlay (requires `--assignment`).
        #[arg(long, requires = "assignment")]
        points: Option<PathBuf>,
        #[arg(long, requires = "points")]
        assignment: Option<PathBuf>,
    },
}

fn run(command: Command) -> recreg::Result<Report> {
    use Command::*;
    match command {
        CheckRegular { file } => commands::check_regular(&file),
        Frc { file } => commands::frc(&file),
        Tree { file } => commands::tree(&file),
        CheckRecursive { file } => commands::check_recursive(&file),
        Acyclic {
            file,
            direction,
            max_len,
            ..
        } => commands::acyclic(&file, direction.as_deref(), max_len),
        Assign {
            fan, points, line, ..
        } => commands::assign(&fan, &points, line),
        VerifyOverlap {
            fan,
            points,
            assignment,
        } => commands::verify_overlap(&fan, &points, &assignment),
        Uncovered2d {
            fan,
            points,
            assignment,
        } => commands::uncovered_2d(&fan, &points, &assignment),
        SearchUniversal { fan, points } => commands::search_universal(&fan, &points),
        VerifyCertificate { file, against } => {
            commands::verify_certificate(&file, against.as_deref())
        }
        Spiderweb { web } => commands::spiderweb(&web),
        EmbedDigraph {
            digraph,
            points,
            assignment,
        } => commands::embed_digraph(&digraph, &points, assignment.as_deref()),
        ForcingCycle { digraph, max_len } => commands::forcing(&digraph, max_len),
        SampleCoverage {
            fan,
            points,
            assignment,
            samples,
            seed,
        } => commands::sample(&fan, &points, &assignment, samples, seed),
        Plot {
            file,
            out,
            points,
            assignment,
        } => commands::plot(&file, &out, points.as_deref().zip(assignment.as_deref())),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report.body).expect("reports serialize")
            );
            ExitCode::from(if report.holds { 0 } else { 1 })
        }
        Err(e) => {
            log::debug!("{e:?}");
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({ "error": e.to_string() }))
                    .expect("errors serialize")
            );
            eprintln!("recreg: {e}");
            ExitCode::from(2)
        }
    }
}
