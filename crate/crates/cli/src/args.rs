use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "wf",
    version,
    about = "Entanglement witnesses from the geometry of product-state expectation values"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// RNG seed for restarts and sampling (decimal or 0x-prefixed hex)
    #[arg(long, global = true, env = "WF_SEED", default_value = "0x5EED", value_parser = parse_seed)]
    pub seed: u64,
    /// Seesaw restarts
    #[arg(long, global = true, default_value_t = 64)]
    pub restarts: usize,
    /// Per-restart seesaw iteration cap
    #[arg(long, global = true, default_value_t = 5000)]
    pub max_iters: usize,
    /// Tolerance override: the certification gap for region commands, the
    /// comparison tolerance of every golden item for `reproduce`
    #[arg(long, global = true, value_parser = parse_positive)]
    pub tol: Option<f64>,
    /// Write the report (or the CSV for `plotdata`) to this path
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Feasible-region geometry
    Region {
        #[command(subcommand)]
        action: RegionCmd,
    },
    /// Build, certify, decompose or evaluate a built-in witness
    Witness(WitnessArgs),
    /// Mixture states
    State {
        #[command(subcommand)]
        action: StateCmd,
    },
    /// Local Gell-Mann decomposition of a witness
    Decompose(DecomposeArgs),
    /// Run the golden checks
    Reproduce {
        #[arg(value_enum)]
        section: Section,
    },
    /// CSV of sampled p-vectors, vertices and named planes (n = 3)
    Plotdata(PlotArgs),
}

#[derive(Debug, Subcommand)]
pub enum RegionCmd {
    /// Maximize c·p over product states
    Maximize {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'c', allow_hyphen_values = true, value_parser = parse_list)]
        c: Numbers,
    },
    /// Certify the plane c·p = offset
    Certify {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'c', allow_hyphen_values = true, value_parser = parse_list)]
        c: Numbers,
        #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = parse_number)]
        offset: f64,
    },
    /// Fit-maximize-extend walk over feasible-region vertices
    Refine {
        #[arg(short = 'n')]
        n: usize,
        /// Seed vertices, `;`-separated, e.g. "1/3,0,0;0,1/3,0;0,0,1/3"
        #[arg(long, value_parser = parse_points)]
        seeds: Points,
        /// Vertex-pool indices for later rounds, e.g. "1,2,3;0,1,3"
        #[arg(long, value_parser = parse_script, default_value = "")]
        script: Script,
        #[arg(long, default_value_t = 5)]
        rounds: usize,
    },
    /// Rotation threshold of a built-in family
    Interval {
        #[arg(short = 'f')]
        family: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_number)]
        from: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_number)]
        to: f64,
        /// Exclude the lower end of the range
        #[arg(long)]
        open_from: bool,
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
    /// Certify n(p₁ + … + p_{n−1}) + pₙ = 1
    Conjecture {
        #[arg(short = 'n')]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessAction {
    Materialize,
    Certify,
    Decompose,
    Trace,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(short = 'f')]
    pub family: String,
    #[arg(short = 'a', allow_hyphen_values = true, value_parser = parse_number)]
    pub alpha: f64,
    #[arg(value_enum)]
    pub action: WitnessAction,
    #[command(flatten)]
    pub state: StateArgs,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Mixture weights a₁,…,aₙ
    #[arg(long, value_parser = parse_list)]
    pub weights: Option<Numbers>,
    #[arg(long, value_parser = parse_number)]
    pub beta: Option<f64>,
    #[arg(long, value_parser = parse_number)]
    pub gamma: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum StateCmd {
    /// PPT status and detection by the built-in families
    Classify {
        #[arg(short = 'n')]
        n: usize,
        #[command(flatten)]
        state: StateArgs,
    },
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// Built-in family label; requires -a
    #[arg(short = 'f', conflicts_with = "c")]
    pub family: Option<String>,
    #[arg(short = 'a', allow_hyphen_values = true, value_parser = parse_number, requires = "family")]
    pub alpha: Option<f64>,
    /// Witness of the plane c·p = 1; requires -n
    #[arg(short = 'c', allow_hyphen_values = true, value_parser = parse_list, requires = "n")]
    pub c: Option<Numbers>,
    #[arg(short = 'n')]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(short = 'n', default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Section {
    /// Three-dimensional items
    S2,
    /// Four-dimensional items
    S3,
    /// Both groups
    All,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Numbers(pub Vec<f64>);

#[derive(Debug, Clone, PartialEq)]
pub struct Points(pub Vec<Vec<f64>>);

#[derive(Debug, Clone, PartialEq)]
pub struct Script(pub Vec<Vec<usize>>);

/// A decimal number or a fraction `p/q`.
pub fn parse_number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| format!("bad numerator in '{s}'"))?;
            let den: f64 = den.trim().parse().map_err(|_| format!("bad denominator in '{s}'"))?;
            if den == 0.0 {
                return Err(format!("zero denominator in '{s}'"));
            }
            num / den
        }
        None => s.parse().map_err(|_| format!("'{s}' is not a number"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v = parse_number(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("tolerance must be positive, got {v}"))
    }
}

pub fn parse_list(s: &str) -> Result<Numbers, String> {
    s.split(',').map(parse_number).collect::<Result<Vec<_>, _>>().map(Numbers)
}

fn parse_points(s: &str) -> Result<Points, String> {
    s.split(';')
        .map(|p| parse_list(p).map(|n| n.0))
        .collect::<Result<Vec<_>, _>>()
        .map(Points)
}

fn parse_script(s: &str) -> Result<Script, String> {
    if s.trim().is_empty() {
        return Ok(Script(Vec::new()));
    }
    s.split(';')
        .map(|round| {
            round
                .split(',')
                .map(|i| i.trim().parse::<usize>().map_err(|_| format!("bad vertex index '{i}'")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Script)
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|_| format!("'{s}' is not a valid seed"))
}
