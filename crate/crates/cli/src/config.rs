//! Argument parsing into a validated [`RunConfig`].

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use varj::gof::KsMethod;
use varj::{Distribution, Family, Measure};

use crate::data::DataSource;
use crate::error::{CliError, CliResult};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MIN_GRIDPOINTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Locomotive,
    Bearings,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KsArg {
    Asymptotic,
    Exact,
    Auto,
}

impl From<KsArg> for KsMethod {
    fn from(k: KsArg) -> Self {
        match k {
            KsArg::Asymptotic => KsMethod::Asymptotic,
            KsArg::Exact => KsMethod::Exact,
            KsArg::Auto => KsMethod::Auto,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "varj", version, about = "Extropy-based measures, bounds and model comparison")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Args)]
struct Common {
    /// Absolute quadrature tolerance
    #[arg(long, env = "VARJ_TOL", default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct KdeArgs {
    /// Kernel bandwidth (default: Silverman's rule)
    #[arg(long)]
    bandwidth: Option<f64>,
    #[arg(long, default_value_t = 512)]
    gridpoints: usize,
    /// Zero the estimate below this point and renormalize
    #[arg(long, allow_negative_numbers = true)]
    truncate_below: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Catalogue measures of a distribution or pair, or of a sample's KDE against a model
    Measures {
        #[arg(long, conflicts_with = "data", required_unless_present = "data")]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        /// Fixture name, file path, or `-` for standard input
        #[arg(long)]
        data: Option<String>,
        /// Restrict to these catalogue names (prefix `weighted-` for weighted forms)
        #[arg(long = "measure", value_delimiter = ',')]
        measures: Vec<String>,
        /// Add weighted variants
        #[arg(long)]
        weighted: bool,
        /// Cross-check each value against this many Monte Carlo draws
        #[arg(long)]
        mc_draws: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        kde: KdeArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Fit candidate models to a sample and rank them
    Compare {
        #[arg(long)]
        data: String,
        /// Families fitted by maximum likelihood
        #[arg(long, value_delimiter = ',')]
        families: Vec<String>,
        /// Fixed-parameter candidates, e.g. `lognormal:4.43,0.45`
        #[arg(long)]
        fixed: Vec<String>,
        #[arg(long, value_enum, default_value_t = KsArg::Asymptotic)]
        ks: KsArg,
        /// Also write a density-overlay SVG
        #[arg(long)]
        plot: Option<PathBuf>,
        #[command(flatten)]
        kde: KdeArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Lower bounds for VarJ(X,Y)
    Bounds {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 5)]
        series_n: usize,
        #[arg(long, default_value_t = 0.02)]
        cheb_eps: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Generating function of extropy and its cumulants
    Genfun {
        #[arg(long)]
        x: String,
        /// Points at which to evaluate G(t)
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [-1.0, -0.5, 0.5, 1.0])]
        t: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Varextropy measures of order statistics
    OrderStats {
        #[arg(long)]
        x: String,
        #[arg(long)]
        n: usize,
        /// Single index; all of 1..=n when omitted
        #[arg(long)]
        i: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Re-run a bundled worked example
    Repro {
        #[arg(long, value_enum)]
        example: Example,
        #[arg(long)]
        plot: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct KdeConfig {
    pub bandwidth: Option<f64>,
    pub gridpoints: usize,
    pub truncate_below: Option<f64>,
}

/// A requested catalogue entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureSel {
    pub measure: Measure,
    pub weighted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Pair { x: Distribution, y: Option<Distribution> },
    Sample { data: DataSource, y: Distribution, kde: KdeConfig },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Candidate {
    Fit(Family),
    Fixed(Distribution),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Measures {
        target: Target,
        /// Empty means "every applicable measure".
        select: Vec<MeasureSel>,
        weighted: bool,
        mc_draws: Option<usize>,
        seed: u64,
    },
    Compare {
        data: DataSource,
        candidates: Vec<Candidate>,
        kde: KdeConfig,
        ks: KsMethod,
    },
    Bounds {
        x: Distribution,
        y: Distribution,
        series_n: usize,
        cheb_eps: f64,
    },
    Genfun {
        x: Distribution,
        t: Vec<f64>,
    },
    OrderStats {
        x: Distribution,
        n: usize,
        i: Option<usize>,
    },
    Repro {
        example: Example,
    },
}

impl Command {
    pub fn verb(&self) -> &'static str {
        match self {
            Command::Measures { .. } => "measures",
            Command::Compare { .. } => "compare",
            Command::Bounds { .. } => "bounds",
            Command::Genfun { .. } => "genfun",
            Command::OrderStats { .. } => "order-stats",
            Command::Repro { .. } => "repro",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub tol: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub plot: Option<PathBuf>,
}

/// `family:p1,p2`, e.g. `exp:5` or `gamma:4.0255,0.0557`.
pub fn parse_distribution(spec: &str) -> CliResult<Distribution> {
    let usage = |m: String| CliError::Usage(format!("distribution '{spec}': {m}"));
    let (fam, params) = spec
        .split_once(':')
        .ok_or_else(|| usage("expected family:p1[,p2]".into()))?;
    let family: Family = fam.parse().map_err(|e: varj::Error| usage(e.to_string()))?;
    let params = params
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| usage(format!("bad parameter '{p}'"))))
        .collect::<CliResult<Vec<f64>>>()?;
    Distribution::new(family, &params).map_err(|e| usage(e.to_string()))
}

fn parse_measure(s: &str, weighted_flag: bool) -> CliResult<MeasureSel> {
    let (name, weighted) = match s.strip_prefix("weighted-") {
        Some(rest) => (rest, true),
        None => (s, weighted_flag),
    };
    let measure: Measure = name
        .parse()
        .map_err(|e: varj::Error| CliError::Usage(e.to_string()))?;
    if weighted && !measure.supports_weighting() {
        return Err(CliError::Usage(format!("{measure} has no weighted form")));
    }
    Ok(MeasureSel { measure, weighted })
}

fn kde_config(k: KdeArgs) -> CliResult<KdeConfig> {
    if k.gridpoints < MIN_GRIDPOINTS {
        return Err(CliError::Usage(format!(
            "--gridpoints must be at least {MIN_GRIDPOINTS}, got {}",
            k.gridpoints
        )));
    }
    if let Some(h) = k.bandwidth {
        if !(h > 0.0 && h.is_finite()) {
            return Err(CliError::Usage(format!("--bandwidth must be positive, got {h}")));
        }
    }
    Ok(KdeConfig {
        bandwidth: k.bandwidth,
        gridpoints: k.gridpoints,
        truncate_below: k.truncate_below,
    })
}

/// Parse a full argument vector (program name first).
pub fn parse_args<I, T>(argv: I) -> CliResult<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| usage_from_clap(&e))?;
    from_cli(cli)
}

pub(crate) fn usage_from_clap(e: &clap::Error) -> CliError {
    let text = e.render().to_string();
    CliError::Usage(text.strip_prefix("error: ").unwrap_or(&text).trim_end().to_string())
}

/// Like [`parse_args`] but hands back clap's own error, so that `--help`
/// and `--version` can be printed verbatim.
pub(crate) fn parse_args_raw(argv: Vec<OsString>) -> Result<CliResult<RunConfig>, clap::Error> {
    Cli::try_parse_from(argv).map(from_cli)
}

fn from_cli(cli: Cli) -> CliResult<RunConfig> {
    let mut plot = None;
    let (command, common) = match cli.verb {
        Verb::Measures {
            x,
            y,
            data,
            measures,
            weighted,
            mc_draws,
            seed,
            kde,
            common,
        } => {
            let y = y.as_deref().map(parse_distribution).transpose()?;
            let target = match (x, data) {
                (Some(x), None) => Target::Pair {
                    x: parse_distribution(&x)?,
                    y,
                },
                (None, Some(data)) => Target::Sample {
                    data: DataSource::parse(&data),
                    y: y.ok_or_else(|| CliError::Usage("--data needs a reference model --y".into()))?,
                    kde: kde_config(kde)?,
                },
                _ => return Err(CliError::Usage("give exactly one of --x and --data".into())),
            };
            let select = measures
                .iter()
                .map(|m| parse_measure(m, weighted))
                .collect::<CliResult<Vec<_>>>()?;
            if let Target::Pair { y: None, .. } = target {
                if let Some(s) = select.iter().find(|s| s.measure.needs_pair()) {
                    return Err(CliError::Usage(format!("{} needs --y", s.measure)));
                }
            }
            if matches!(target, Target::Sample { .. }) && mc_draws.is_some() {
                return Err(CliError::Usage("--mc-draws applies to --x, not --data".into()));
            }
            if mc_draws.is_some_and(|n| n < 2) {
                return Err(CliError::Usage("--mc-draws must be at least 2".into()));
            }
            (
                Command::Measures {
                    target,
                    select,
                    weighted,
                    mc_draws,
                    seed,
                },
                common,
            )
        }
        Verb::Compare {
            data,
            families,
            fixed,
            ks,
            plot: p,
            kde,
            common,
        } => {
            let mut candidates = families
                .iter()
                .map(|f| {
                    f.parse::<Family>()
                        .map(Candidate::Fit)
                        .map_err(|e| CliError::Usage(e.to_string()))
                })
                .collect::<CliResult<Vec<_>>>()?;
            for spec in &fixed {
                candidates.push(Candidate::Fixed(parse_distribution(spec)?));
            }
            if candidates.len() < 2 {
                return Err(CliError::Usage(
                    "compare needs at least two candidates (--families and/or --fixed)".into(),
                ));
            }
            plot = p;
            (
                Command::Compare {
                    data: DataSource::parse(&data),
                    candidates,
                    kde: kde_config(kde)?,
                    ks: ks.into(),
                },
                common,
            )
        }
        Verb::Bounds {
            x,
            y,
            series_n,
            cheb_eps,
            common,
        } => {
            if series_n < 1 {
                return Err(CliError::Usage("--series-n must be at least 1".into()));
            }
            if !(cheb_eps > 0.0 && cheb_eps.is_finite()) {
                return Err(CliError::Usage(format!("--cheb-eps must be positive, got {cheb_eps}")));
            }
            (
                Command::Bounds {
                    x: parse_distribution(&x)?,
                    y: parse_distribution(&y)?,
                    series_n,
                    cheb_eps,
                },
                common,
            )
        }
        Verb::Genfun { x, t, common } => {
            if let Some(bad) = t.iter().find(|t| !t.is_finite()) {
                return Err(CliError::Usage(format!("--t values must be finite, got {bad}")));
            }
            (
                Command::Genfun {
                    x: parse_distribution(&x)?,
                    t,
                },
                common,
            )
        }
        Verb::OrderStats { x, n, i, common } => {
            if n < 1 || i.is_some_and(|i| i < 1 || i > n) {
                return Err(CliError::Usage(format!("need 1 ≤ i ≤ n, got i = {i:?}, n = {n}")));
            }
            (
                Command::OrderStats {
                    x: parse_distribution(&x)?,
                    n,
                    i,
                },
                common,
            )
        }
        Verb::Repro { example, plot: p, common } => {
            plot = p;
            (Command::Repro { example }, common)
        }
    };
    if !(common.tol > 0.0 && common.tol.is_finite()) {
        return Err(CliError::Usage(format!("tolerance must be positive, got {}", common.tol)));
    }
    Ok(RunConfig {
        command,
        tol: common.tol,
        format: common.format,
        output: common.output,
        plot,
    })
}
