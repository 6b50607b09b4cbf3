use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

/// Parses radians given as a decimal or as a multiple of pi:
/// `0.785`, `pi`, `pi/4`, `3pi/8`, `3*pi/8`, `0.4pi`, `-pi/2`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t: String = s.trim().chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot read `{s}` as an angle");
    let Some(at) = t.find("pi") else {
        return t.parse::<f64>().map_err(|_| bad());
    };
    let (head, tail) = (&t[..at], &t[at + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let coef = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| bad())?,
    };
    let den = match tail {
        "" => 1.0,
        d => d
            .strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .filter(|d| *d != 0.0)
            .ok_or_else(bad)?,
    };
    Ok(coef * PI / den)
}

#[derive(Debug, Parser)]
#[command(name = "coinwalk", version, about = "Coined quantum walks and correlated random walks on the line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spatial distribution of a coined quantum walk after n steps.
    SimulateQuantum(SimulateQuantum),
    /// Distribution of the correlated classical walk after n steps.
    SimulateClassical(SimulateClassical),
    /// Amplitude table by direct evolution, closed form or Fourier transform.
    ClosedForm(ClosedForm),
    /// Symmetry, lambda and canonical representatives of a coin setup (JSON).
    Classify(Classify),
    /// Variance against n for a list of theta or delta values.
    VarianceScan(VarianceScan),
    /// Limiting density curves, optionally with a rescaled empirical companion.
    LimitDensity(LimitDensity),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Lemma,
    Fourier,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Destination file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SetupArgs {
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub phi1: f64,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub phi2: f64,
    #[arg(long, default_value_t = FRAC_PI_4, value_parser = parse_angle, allow_hyphen_values = true)]
    pub varphi: f64,
    #[arg(long, default_value_t = FRAC_PI_2, value_parser = parse_angle, allow_hyphen_values = true)]
    pub xi: f64,
}

#[derive(Debug, Args)]
pub struct SimulateQuantum {
    #[command(flatten)]
    pub setup: SetupArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SimulateClassical {
    #[arg(long, allow_hyphen_values = true)]
    pub delta: f64,
    /// Probability of starting in the up direction.
    #[arg(long, default_value_t = 0.5)]
    pub q0_up: f64,
    #[arg(long)]
    pub n: usize,
    /// Emit the (site, direction) components instead of the marginal.
    #[arg(long)]
    pub joint: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ClosedForm {
    /// Coin angle; required unless --delta selects the classical walk.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, required_unless_present = "delta")]
    pub theta: Option<f64>,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub phi1: f64,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub phi2: f64,
    #[arg(long, default_value_t = FRAC_PI_4, value_parser = parse_angle, allow_hyphen_values = true)]
    pub varphi: f64,
    #[arg(long, default_value_t = FRAC_PI_2, value_parser = parse_angle, allow_hyphen_values = true)]
    pub xi: f64,
    /// Correlated classical walk instead of the quantum walk.
    #[arg(long, conflicts_with = "theta", allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub q0_up: f64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Method::Lemma)]
    pub method: Method,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct Classify {
    #[command(flatten)]
    pub setup: SetupArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("params").required(true).args(["thetas", "deltas"])))]
#[command(group(ArgGroup::new("steps").args(["n", "n_max"])))]
pub struct VarianceScan {
    /// Quantum coin angles; each walk uses the symmetric representative.
    #[arg(long, value_delimiter = ',', value_parser = parse_angle, allow_hyphen_values = true)]
    pub thetas: Option<Vec<f64>>,
    /// Correlation coefficients of classical walks started with (1/2, 1/2).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub deltas: Option<Vec<f64>>,
    /// Scan every step from 0 to this value.
    #[arg(long, default_value_t = 100)]
    pub n_max: usize,
    /// Report a single step instead of a range.
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("curves").required(true).args(["theta", "thetas", "deltas"])))]
pub struct LimitDensity {
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// One curve per angle.
    #[arg(long, value_delimiter = ',', value_parser = parse_angle, allow_hyphen_values = true)]
    pub thetas: Option<Vec<f64>>,
    /// Explicit tilt; otherwise derived from the setup flags.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "lambdas")]
    pub lambda: Option<f64>,
    /// One curve per tilt, with a single --theta.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "theta")]
    pub lambdas: Option<Vec<f64>>,
    /// Gaussian limits of correlated classical walks.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub deltas: Option<Vec<f64>>,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub phi1: f64,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    pub phi2: f64,
    #[arg(long, default_value_t = FRAC_PI_4, value_parser = parse_angle, allow_hyphen_values = true)]
    pub varphi: f64,
    #[arg(long, default_value_t = FRAC_PI_2, value_parser = parse_angle, allow_hyphen_values = true)]
    pub xi: f64,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
    /// Steps for the empirical companion curve.
    #[arg(long, requires = "empirical_out")]
    pub empirical_n: Option<usize>,
    /// Where to write the empirical companion curve.
    #[arg(long, requires = "empirical_n")]
    pub empirical_out: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}
