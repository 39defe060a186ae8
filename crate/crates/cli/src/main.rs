//! Command-line front end for the divergence phase index toolkit.
//!
//! Four subcommands: `dpi1d` (pairwise channel analysis of CSV signals),
//! `dpi2d` (blockwise image comparison with elbow binarization), `rotate`
//! (rotation estimation between two images), and `synth` (deterministic
//! test textures). Every run writes a `manifest.json` echoing the full
//! resolved configuration into the output directory.
//!
//! Exit codes: 0 on success, 2 for input errors, 1 for internal errors.

mod commands;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl From<dpi_core::Error> for CliError {
    fn from(e: dpi_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult = Result<(), CliError>;

#[derive(Parser)]
#[command(
    name = "dpi",
    version,
    about = "Divergence phase index toolkit: phase-based comparison of signals and images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pairwise phase-difference matrices for multichannel CSV signals.
    Dpi1d(Dpi1dArgs),
    /// Blockwise phase-difference matrix and binary mask for two images.
    Dpi2d(Dpi2dArgs),
    /// Estimate the rotation of a target image relative to a reference.
    Rotate(RotateArgs),
    /// Generate a deterministic synthetic test texture.
    Synth(SynthArgs),
}

#[derive(clap::Args)]
struct Dpi1dArgs {
    /// CSV file: header row of channel labels, one column per channel,
    /// one row per sample.
    #[arg(long)]
    input: String,
    /// Sample rate in Hz.
    #[arg(long)]
    rate: f64,
    /// Bandpass range in Hz, inclusive on both edges.
    #[arg(long, value_parser = parse_pair, default_value = "1,3")]
    band: (f64, f64),
    /// Analysis window in seconds as START,END; repeatable. Defaults to
    /// the whole signal. Windows extending past the signal are rejected.
    #[arg(long = "window", value_parser = parse_pair)]
    windows: Vec<(f64, f64)>,
    /// Output directory.
    #[arg(long)]
    out: String,
}

#[derive(clap::Args)]
struct Dpi2dArgs {
    /// First image (PNG).
    #[arg(long)]
    image_a: String,
    /// Second image (PNG), same size as the first.
    #[arg(long)]
    image_b: String,
    /// Partition count per image side.
    #[arg(long, default_value_t = 8)]
    ns: usize,
    /// Output directory.
    #[arg(long)]
    out: String,
}

#[derive(clap::Args)]
struct RotateArgs {
    /// Reference image (PNG, square).
    #[arg(long)]
    reference: String,
    /// Target image (PNG, same size as the reference).
    #[arg(long)]
    target: String,
    /// Angle grid step in degrees, in (0, 90].
    #[arg(long, default_value_t = 1.0)]
    step: f64,
    /// Output directory.
    #[arg(long)]
    out: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SynthKind {
    PlaneWave,
    GaussianBlobs,
    FilteredNoise,
}

#[derive(clap::Args)]
struct SynthArgs {
    /// Texture family.
    #[arg(long, value_enum)]
    kind: SynthKind,
    /// Image height in pixels.
    #[arg(long)]
    height: usize,
    /// Image width in pixels.
    #[arg(long)]
    width: usize,
    /// Plane wave: cycles across the image along the row axis.
    #[arg(long, default_value_t = 8.0)]
    k1: f64,
    /// Plane wave: cycles across the image along the column axis.
    #[arg(long, default_value_t = 0.0)]
    k2: f64,
    /// Gaussian blobs: number of bumps.
    #[arg(long, default_value_t = 40)]
    count: usize,
    /// Gaussian blobs: smallest bump width in pixels.
    #[arg(long, default_value_t = 2.0)]
    sigma_min: f64,
    /// Gaussian blobs: largest bump width in pixels.
    #[arg(long, default_value_t = 8.0)]
    sigma_max: f64,
    /// Filtered noise: spatial frequency cutoff in cycles/sample.
    #[arg(long, default_value_t = 0.1)]
    cutoff: f64,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory.
    #[arg(long)]
    out: String,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected two comma-separated numbers, got {s:?}"));
    }
    let a = parts[0]
        .trim()
        .parse::<f64>()
        .map_err(|_| format!("not a number: {:?}", parts[0]))?;
    let b = parts[1]
        .trim()
        .parse::<f64>()
        .map_err(|_| format!("not a number: {:?}", parts[1]))?;
    Ok((a, b))
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Dpi1d(args) => commands::run_dpi1d(&args),
        Command::Dpi2d(args) => commands::run_dpi2d(&args),
        Command::Rotate(args) => commands::run_rotate(&args),
        Command::Synth(args) => commands::run_synth(&args),
    };
    match result {
        Ok(()) => {}
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            std::process::exit(1);
        }
    }
}
