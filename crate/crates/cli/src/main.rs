use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spinspeed::analysis::Observable;
use spinspeed::models::ModelVariant;

mod commands;
mod output;
mod svg;

/// Exact dynamics and quantum speed limits for two-tier spin models.
#[derive(Debug, Parser)]
#[command(name = "spinspeed", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample P, R and S_e on a uniform time grid.
    Evolve(EvolveArgs),
    /// Speed-limit times for one model.
    Bounds(BoundsArgs),
    /// Data (and optionally SVG) for one of the four figures.
    Figure(FigureArgs),
    /// Threshold crossings over a list of sizes.
    Sweep(SweepArgs),
    /// Quadratic fit of the model B ground-state energy.
    FitE0(FitArgs),
    /// Compare the flip-basis machinery with brute force and exact arithmetic.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
}

impl From<Model> for ModelVariant {
    fn from(m: Model) -> Self {
        match m {
            Model::A => ModelVariant::A,
            Model::B => ModelVariant::B,
            Model::C => ModelVariant::C,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObservableArg {
    #[value(name = "P")]
    P,
    #[value(name = "R")]
    R,
}

impl From<ObservableArg> for Observable {
    fn from(o: ObservableArg) -> Self {
        match o {
            ObservableArg::P => Observable::P,
            ObservableArg::R => Observable::R,
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    /// Coupling G.
    #[arg(long, default_value_t = 1.0)]
    coupling: f64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct EvolveArgs {
    #[arg(long, value_enum, ignore_case = true)]
    model: Model,
    /// Tier size (total spin count for model C).
    #[arg(long, alias = "N")]
    n: usize,
    /// Final time in units of 1/G.
    #[arg(long, conflicts_with = "t_max_gnt")]
    t_max: Option<f64>,
    /// Final time as Gnt [default: 6].
    #[arg(long)]
    t_max_gnt: Option<f64>,
    #[arg(long, default_value_t = 2000)]
    points: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long, value_enum, ignore_case = true)]
    model: Model,
    #[arg(long, alias = "N")]
    n: usize,
    /// Target overlap with the initial state.
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct FigureArgs {
    /// Figure number, 1 to 4.
    which: u8,
    /// Sizes to plot [default: per figure].
    #[arg(long, alias = "N", value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long, conflicts_with = "t_max_gnt")]
    t_max: Option<f64>,
    #[arg(long)]
    t_max_gnt: Option<f64>,
    #[arg(long, default_value_t = 2000)]
    points: usize,
    /// Also render the curves to this SVG file.
    #[arg(long)]
    svg: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum, ignore_case = true)]
    model: Model,
    #[arg(long, alias = "N", value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, value_enum, ignore_case = true, default_value = "R")]
    observable: ObservableArg,
    /// Crossing level [default: 0.6 for A, 0.4 otherwise].
    #[arg(long)]
    threshold: Option<f64>,
    /// Give up when no crossing is found before this Gnt.
    #[arg(long)]
    horizon_gnt: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct FitArgs {
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 100)]
    n_max: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Largest tier size to brute-force (at most 5).
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Evolve(a) => commands::evolve(a),
        Command::Bounds(a) => commands::bounds(a),
        Command::Figure(a) => commands::figure(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::FitE0(a) => commands::fit_e0(a),
        Command::OracleCheck(a) => commands::oracle_check(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
