mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

/// Doubly symmetric knot diagrams: Gauss words, long curves, parterre
/// templates, diagram synthesis and knot identification.
#[derive(Parser, Debug)]
#[command(name = "parterre", version)]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Directory for cached stage outputs.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Double occurrence words with parity, star class and realizability.
    Gauss(GaussArgs),
    /// Long curves, closed curve classes and per-DT statistics.
    Curves(CurvesArgs),
    /// Raw or valid parterre templates and the filter breakdown.
    Templates(TemplatesArgs),
    /// Synthesizes every diagram up to a crossing budget.
    Enumerate(EnumerateArgs),
    /// Computes invariants of diagrams and matches them against the table.
    Identify(IdentifyArgs),
    /// Full census with a minimal witness per knot.
    Census(CensusArgs),
    /// Count tables: curve statistics, templates, stages and knot lists.
    Report(ReportArgs),
    /// Rebuilds the reference table from DT codes.
    BuildTable(BuildTableArgs),
}

#[derive(Args, Debug)]
pub struct GaussArgs {
    #[arg(long)]
    pub n: usize,
    /// Adds the star classification.
    #[arg(long)]
    pub stars: bool,
    /// Adds the DT code of parity-passing words.
    #[arg(long)]
    pub dt: bool,
    /// Adds the even/odd position pairs.
    #[arg(long)]
    pub simplified: bool,
    /// Keeps only words realizable as closed curves.
    #[arg(long)]
    pub closed_realizable: bool,
}

#[derive(Args, Debug)]
pub struct CurvesArgs {
    #[arg(long)]
    pub n: usize,
    /// Per-DT counts of long curves, curl-free curves and region-swap orbits.
    #[arg(long)]
    pub stats: bool,
    /// Closed curve classes instead of long curves.
    #[arg(long)]
    pub closed: bool,
    /// With --closed, distinguishes curves from their mirror images.
    #[arg(long)]
    pub oriented_plane: bool,
    /// With --closed, distinguishes the two traversal directions.
    #[arg(long)]
    pub oriented_circle: bool,
    /// Shorthand for --format json.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct TemplatesArgs {
    #[arg(long)]
    pub n: usize,
    /// Lists all templates before filtering.
    #[arg(long)]
    pub raw: bool,
    /// Prints the verdict of every raw template and the per-filter counts.
    #[arg(long)]
    pub report: bool,
    /// Writes the listed templates as JSON.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub max_crossings: usize,
    /// Template sizes, comma separated; all admissible sizes by default.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Writes one PD code per line with its provenance.
    #[arg(long)]
    pub emit_pd: Option<PathBuf>,
    /// Allows budgets above the desk-scale guard.
    #[arg(long)]
    pub override_guard: bool,
}

#[derive(Args, Debug)]
pub struct IdentifyArgs {
    /// File with one PD code per line.
    #[arg(long, conflicts_with = "dt", required_unless_present = "dt")]
    pub pd: Option<PathBuf>,
    /// DT code, space or comma separated.
    #[arg(long)]
    pub dt: Option<String>,
    /// Reference table CSV; the bundled table by default.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[arg(long, default_value_t = 18)]
    pub max_crossings: usize,
    /// Template sizes, comma separated; all admissible sizes by default.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Allows budgets above the desk-scale guard.
    #[arg(long)]
    pub override_guard: bool,
    /// Reports unidentified diagrams without failing.
    #[arg(long)]
    pub permissive: bool,
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Budget of the census behind the knot lists.
    #[arg(long, default_value_t = 18)]
    pub max_crossings: usize,
    /// Template size for the curve statistics.
    #[arg(long, default_value_t = 4)]
    pub stats_n: usize,
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BuildTableArgs {
    #[arg(long, default_value = "data/knots_source.csv")]
    pub source: PathBuf,
    #[arg(long, default_value = "data/reference_table.csv")]
    pub out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<parterre::Error>() {
                Some(parterre::Error::BudgetGuard { .. }) => ExitCode::from(commands::EXIT_GUARD),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
