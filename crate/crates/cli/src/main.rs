//! `switch-dmt`: tradeoff curves, bounds, figure data and outage sweeps.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid arguments, 3 refused
//! configuration.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use switch_dmt::allocation::StaticScheme;
use switch_dmt::grid::Grid;
use switch_dmt::{ChannelMode, Error};

#[derive(Parser)]
#[command(name = "switch-dmt", version, about = "Diversity-multiplexing tradeoff of the K-pair MIMO relay switch")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vertices of a point-to-point, symmetric MAC or symmetric BC tradeoff curve.
    Curve(CurveArgs),
    /// Reciprocal-channel achievable diversity and converse over an r grid.
    Bound(BoundArgs),
    /// Dynamic decode-and-forward diversity and non-reciprocal converse.
    Ddf(DdfArgs),
    /// Data behind the three tradeoff figures.
    Figure(FigureArgs),
    /// Monte Carlo outage sweep with a fitted diversity exponent.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CurveScheme {
    Ppc,
    MacSym,
    BcSym,
}

#[derive(Args)]
pub struct CurveArgs {
    #[arg(long, value_enum)]
    pub scheme: CurveScheme,
    /// Transmit antennas per user.
    #[arg(long)]
    pub m: usize,
    /// Receive antennas.
    #[arg(long)]
    pub n: usize,
    /// Number of users (MAC/BC only).
    #[arg(long, default_value_t = 1)]
    pub users: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_scheme(s: &str) -> Result<StaticScheme, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<ChannelMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub pairs: usize,
    #[arg(long)]
    pub antennas: usize,
    /// `mac-bc` or `mac-tdma`.
    #[arg(long, value_parser = parse_scheme, default_value = "mac-bc")]
    pub scheme: StaticScheme,
    /// `start:step:stop`; defaults to 0:0.005:0.5.
    #[arg(long, value_parser = parse_grid)]
    pub r_grid: Option<Grid>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
pub struct DdfArgs {
    #[arg(long)]
    pub pairs: usize,
    #[arg(long)]
    pub antennas: usize,
    /// `start:step:stop`; defaults to 0:0.005:1/(K+1).
    #[arg(long, value_parser = parse_grid)]
    pub r_grid: Option<Grid>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
pub struct FigureArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub id: u8,
    #[arg(long, default_value_t = 3)]
    pub pairs: usize,
    /// Comma-separated relay antenna counts; 4,5,6 for figures 1 and 3, 6 for figure 2.
    #[arg(long, value_delimiter = ',')]
    pub antennas: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0.005)]
    pub step: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Event {
    CutsetReciprocal,
    Ddf,
    StaticPhases,
}

#[derive(Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub event: Event,
    #[arg(long)]
    pub pairs: usize,
    #[arg(long)]
    pub antennas: usize,
    /// Per-user multiplexing gain.
    #[arg(long)]
    pub r: f64,
    /// SNR grid in dB, `start:step:stop`.
    #[arg(long, value_parser = parse_grid)]
    pub snr: Grid,
    #[arg(long)]
    pub trials: u64,
    #[arg(long, env = "SWITCH_DMT_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Channel mode; `nonreciprocal` for ddf, `reciprocal` otherwise.
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<ChannelMode>,
    /// Static scheme for `static-phases`.
    #[arg(long, value_parser = parse_scheme, default_value = "mac-tdma")]
    pub scheme: StaticScheme,
    /// Phase-one time fraction for `static-phases`; the balanced split by default.
    #[arg(long)]
    pub split: Option<f64>,
    /// Worker threads; all cores by default. Output does not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Where to write the JSON summary.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (rendered, out, summary_path) = match &cli.command {
        Command::Curve(a) => (commands::curve(a), &a.output, None),
        Command::Bound(a) => (commands::bound(a), &a.output, None),
        Command::Ddf(a) => (commands::ddf(a), &a.output, None),
        Command::Figure(a) => (commands::figure(a), &a.output, None),
        Command::Simulate(a) => {
            if a.trials == 0 {
                eprintln!("error: --trials must be >= 1");
                return ExitCode::from(2);
            }
            (commands::simulate(a), &a.output, a.summary.as_deref())
        }
    };
    let rendered = match rendered {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                Error::InvalidArgument(_) => 2,
                Error::Refused(_) => 3,
            });
        }
    };
    let written = output::write_atomic(out.out.as_deref(), &rendered.main).and_then(|()| {
        match (summary_path, &rendered.summary) {
            (Some(path), Some(s)) => output::write_atomic(Some(path), s),
            _ => Ok(()),
        }
    });
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
