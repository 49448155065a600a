//! `gauge-lab`: singularity measures, Fourier checks and axis probes for
//! monopole gauge potentials.

mod commands;
mod output;
mod plot;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::{CliError, Format};

#[derive(Debug, Parser)]
#[command(name = "gauge-lab", version, about)]
struct Cli {
    /// Directory for written tables, reports and plots.
    #[arg(long, global = true, env = "GAUGE_LAB_OUT", default_value = "gauge-lab-out")]
    out: PathBuf,

    /// Which artifact kinds to write (comma separated).
    #[arg(
        long,
        global = true,
        value_enum,
        value_delimiter = ',',
        default_values = ["csv", "json", "svg"]
    )]
    format: Vec<Format>,

    #[command(subcommand)]
    command: Command,
}

/// A catalog gauge by name, or a JSON field spec.
#[derive(Debug, Args)]
pub struct Input {
    /// Catalog name: schwinger, dirac-plus, dirac-minus, wu-yang,
    /// anti-wu-yang, vacuum-wy, vacuum-d-plus, vacuum-d-minus.
    #[arg(required_unless_present = "spec", conflicts_with = "spec")]
    gauge: Option<String>,

    /// JSON field spec instead of a catalog name.
    #[arg(long)]
    spec: Option<PathBuf>,

    /// Magnetic charge for catalog gauges (a spec carries its own).
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    g: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Jumps, measures, regularity and sketch of one gauge.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Compensating shift (JSON) for the regularity test.
        #[arg(long)]
        shift: Option<PathBuf>,
    },
    /// Trigonometric series, midpoint checks and Gibbs overshoot.
    Fourier {
        #[command(flatten)]
        input: Input,
        /// Number of coefficients.
        #[arg(long = "N", default_value_t = 4096)]
        terms: usize,
        /// Partial sums to check [default: 64,512,N].
        #[arg(long, value_delimiter = ',')]
        at: Vec<usize>,
    },
    /// Fit the divergence of a Cartesian potential near the x₃-axis.
    ProbeAxis {
        /// schwinger, dirac-plus or dirac-minus.
        gauge: String,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        g: f64,
        /// Axis point z·ê₃.
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        /// Unit approach direction m₁,m₂,m₃.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
        m: Vec<f64>,
    },
    /// Apply a piecewise-constant shift and compare the measures.
    GaugeTransform {
        #[command(flatten)]
        input: Input,
        /// Shift spec (JSON).
        #[arg(long)]
        shift: PathBuf,
    },
    /// Recompute every stated catalog value and flag inconsistencies.
    ReproducePaper {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        g: f64,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let sink = output::Outputs::new(cli.out, cli.format);
    match cli.command {
        Command::Analyze { input, shift } => commands::analyze(&input, shift.as_deref(), sink),
        Command::Fourier { input, terms, at } => commands::fourier(&input, terms, &at, sink),
        Command::ProbeAxis { gauge, g, z, m } => commands::probe_axis(&gauge, g, z, &m, sink),
        Command::GaugeTransform { input, shift } => commands::gauge_transform(&input, &shift, sink),
        Command::ReproducePaper { g } => reproduce::run(g, sink),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
