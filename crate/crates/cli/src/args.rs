use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "srgtool", version, about = "Scaled relative graphs of matrices and transfer functions")]
#[command(propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// SRG of a matrix given as a JSON file
    SrgMatrix(MatrixArgs),
    /// SRG of a scalar rational transfer function
    SrgLti(LtiArgs),
    /// Boundary of the numerical range W(A)
    Nrange(NrangeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Output file, `-` for stdout
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct MatrixArgs {
    /// MatrixFile JSON: {"n", "re", "im"?, "field"?}
    #[arg(long)]
    pub input: PathBuf,
    /// Number of sweep angles
    #[arg(long, default_value_t = 720, value_parser = clap::value_parser!(u64).range(8..))]
    pub angles: u64,
    #[command(flatten)]
    pub output: Output,
    /// Overlay the hyperbolic hull of the spectrum and the eigenvalues
    #[arg(long)]
    pub spectrum: bool,
    /// Validate the region against randomly sampled SRG points
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct LtiArgs {
    /// TFFile JSON: {"num_re", "num_im"?, "den_re", "den_im"?}, leading coefficient first
    #[arg(long)]
    pub tf: PathBuf,
    /// Number of frequency grid points
    #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u64).range(16..))]
    pub grid: u64,
    #[command(flatten)]
    pub output: Output,
    /// Print the spectral factor coefficients to stderr
    #[arg(long)]
    pub emit_factor: bool,
}

#[derive(Debug, Clone, Args)]
pub struct NrangeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 720, value_parser = clap::value_parser!(u64).range(8..))]
    pub angles: u64,
    #[command(flatten)]
    pub output: Output,
}
