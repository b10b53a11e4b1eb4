//! `privres`: pixelate frames, aggregate clip labels, summarize surveys,
//! evaluate predictions and sweep the privacy/utility objective.
//!
//! Every flag that takes a value can also be set through an environment
//! variable named `PRIVRES_<FLAG>` (for example `PRIVRES_LAMBDA=0.5,1`).
//! Command-line flags win over the environment.

pub mod commands;
pub mod error;
pub mod output;
pub mod svg;

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use privres_core::dataset::FaceRule;
use privres_core::fixtures::{SAMPLED_RESOLUTIONS, SELECTION_THRESHOLD};
use privres_core::model::{Interpolation, DEFAULT_EPSILON};
use privres_core::survey::{WilcoxonMode, DEFAULT_TOLERANCE};

pub use error::{CliError, EXIT_INPUT, EXIT_INTERNAL};

#[derive(Debug, Parser)]
#[command(name = "privres", version, about = "Privacy/utility trade-off toolkit over sensor resolution")]
pub struct Cli {
    /// Output directory.
    #[arg(long, global = true, env = "PRIVRES_OUT", default_value = "privres-out")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Downsample PNM frames to each resolution in the grid.
    Pixelate(PixelateArgs),
    /// Sweep S(r) over the grid for each λ and report the optimal ranges.
    Tradeoff(TradeoffArgs),
    /// Summarize survey responses, select features and derive weights.
    Survey(SurveyArgs),
    /// Aggregate frame labels to clip labels.
    Aggregate(AggregateArgs),
    /// Score predictions against clip labels per task and resolution.
    Eval(EvalArgs),
    /// Write the bundled published data to the output directory.
    Fixtures,
}

#[derive(Debug, Args)]
pub struct PixelateArgs {
    /// Directory searched recursively for .pnm, .pgm and .ppm frames.
    #[arg(long)]
    pub input: PathBuf,
    /// Target side lengths.
    #[arg(long, env = "PRIVRES_GRID", value_delimiter = ',', default_values_t = SAMPLED_RESOLUTIONS)]
    pub grid: Vec<u32>,
    /// Re-enlarge each pixelated frame to this square size (nearest neighbour).
    #[arg(long, env = "PRIVRES_DISPLAY")]
    pub display: Option<u32>,
    /// Add Gaussian noise with this sigma (8-bit units) after pixelation.
    #[arg(long, env = "PRIVRES_NOISE_SIGMA")]
    pub noise_sigma: Option<f64>,
    /// Seed for the noise generator.
    #[arg(long, env = "PRIVRES_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct TradeoffArgs {
    /// Accuracy curves (CSV or JSON); defaults to the bundled machine fixture.
    #[arg(long, env = "PRIVRES_CURVES")]
    pub curves: Option<PathBuf>,
    /// Label of the task-accuracy curve.
    #[arg(long, env = "PRIVRES_TASK_LABEL", default_value = "adl_vit")]
    pub task_label: String,
    /// Importance weights JSON; defaults to the bundled survey weights.
    #[arg(long, env = "PRIVRES_WEIGHTS", conflicts_with = "importance")]
    pub weights: Option<PathBuf>,
    /// Importance summary CSV to select features and derive weights from.
    #[arg(long, env = "PRIVRES_IMPORTANCE")]
    pub importance: Option<PathBuf>,
    /// Selection threshold used with --importance.
    #[arg(long, env = "PRIVRES_THRESHOLD", default_value_t = SELECTION_THRESHOLD)]
    pub threshold: f64,
    /// Scaling factors λ.
    #[arg(long, env = "PRIVRES_LAMBDA", value_delimiter = ',', default_values_t = [0.75, 1.0, 1.25])]
    pub lambda: Vec<f64>,
    /// Resolutions to evaluate; defaults to the task curve's resolutions.
    #[arg(long, env = "PRIVRES_GRID", value_delimiter = ',')]
    pub grid: Option<Vec<u32>>,
    /// Tolerance below the maximum that still counts as optimal.
    #[arg(long, env = "PRIVRES_EPSILON", default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
    /// Interpolation between curve samples.
    #[arg(long, env = "PRIVRES_INTERP", default_value = "linear-log-resolution")]
    pub interp: Interpolation,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["ratings", "responses", "bundled_table", "synthetic"])))]
pub struct SurveyArgs {
    /// Long-format ratings CSV.
    #[arg(long)]
    pub ratings: Option<PathBuf>,
    /// Attention-check CSV accompanying --ratings.
    #[arg(long, requires = "ratings")]
    pub attention: Option<PathBuf>,
    /// Responses JSON.
    #[arg(long)]
    pub responses: Option<PathBuf>,
    /// Use the bundled published importance table instead of raw responses.
    #[arg(long)]
    pub bundled_table: bool,
    /// Generate this many synthetic respondents reproducing the bundled table.
    #[arg(long)]
    pub synthetic: Option<usize>,
    /// Seed for --synthetic.
    #[arg(long, env = "PRIVRES_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Largest accepted attention-check deviation in slider units.
    #[arg(long, env = "PRIVRES_TOLERANCE", default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: u32,
    /// Minimum low-resolution mean for a feature to be selected.
    #[arg(long, env = "PRIVRES_THRESHOLD", default_value_t = SELECTION_THRESHOLD)]
    pub threshold: f64,
    /// Wilcoxon p-value method.
    #[arg(long, env = "PRIVRES_WILCOXON", value_enum, default_value = "auto")]
    pub wilcoxon: WilcoxonArg,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum WilcoxonArg {
    Exact,
    Normal,
    Auto,
}

impl From<WilcoxonArg> for WilcoxonMode {
    fn from(a: WilcoxonArg) -> Self {
        match a {
            WilcoxonArg::Exact => WilcoxonMode::Exact,
            WilcoxonArg::Normal => WilcoxonMode::NormalApprox,
            WilcoxonArg::Auto => WilcoxonMode::Auto,
        }
    }
}

#[derive(Debug, Args)]
pub struct AggregateArgs {
    /// Frame labels: long CSV or frames JSON.
    #[arg(long)]
    pub frames: PathBuf,
    /// Number of `yes` frames that make a clip's face label `yes`.
    #[arg(long, env = "PRIVRES_FACE_RULE", default_value = "at-least-two")]
    pub face_rule: FaceRule,
    /// Frame rate used to record clip durations.
    #[arg(long, env = "PRIVRES_FPS", default_value_t = 30.0)]
    pub fps: f64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Predictions CSV (`clip_id,task,resolution,label`).
    #[arg(long)]
    pub predictions: PathBuf,
    /// Clip labels CSV or clips JSON.
    #[arg(long)]
    pub truth: PathBuf,
}

/// Runs one command and returns human-readable summary lines.
pub fn run(cli: &Cli) -> Result<Vec<String>, CliError> {
    match &cli.command {
        Command::Pixelate(a) => commands::pixelate::run(a, &cli.out),
        Command::Tradeoff(a) => commands::tradeoff::run(a, &cli.out),
        Command::Survey(a) => commands::survey::run(a, &cli.out),
        Command::Aggregate(a) => commands::aggregate::run(a, &cli.out),
        Command::Eval(a) => commands::eval::run(a, &cli.out),
        Command::Fixtures => commands::fixtures::run(&cli.out),
    }
}
