//! Experiment configuration: flags, optional config file, per-experiment
//! defaults, validation.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use netcoord::gibbs::{GIBBS_MAX_N, STREAM_MAX_N};
use netcoord::graph::build_k_regular;

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "NETCOORD_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// Coordination probability against β for several regular degrees.
    MonotonicityBetaK,
    /// Exact minimum rationality and its closed-form bound against K.
    BetaMin,
    /// Coordination probability while edges are added to a spanning tree.
    EdgeAugmentation,
    /// Near-regular realization against random irregular graphs.
    RegularVsIrregular,
    /// Histogram of the standardized potential under uniform spins.
    CltHistogram,
    /// Price of irregularity against n·Var(d).
    PoiScatter,
    /// Battery of invariant checks.
    VerifySuite,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Self::MonotonicityBetaK => "monotonicity-beta-k",
            Self::BetaMin => "beta-min",
            Self::EdgeAugmentation => "edge-augmentation",
            Self::RegularVsIrregular => "regular-vs-irregular",
            Self::CltHistogram => "clt-histogram",
            Self::PoiScatter => "poi-scatter",
            Self::VerifySuite => "verify-suite",
        }
    }
}

/// Unresolved settings. The same keys are accepted as `--flags` and in a
/// JSON or TOML config file; flags win.
#[derive(Debug, Default, Clone, Parser, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
#[command(name = "netcoord", version, about = "Run network coordination experiments")]
pub struct Settings {
    /// JSON or TOML file with the same keys as the flags.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub experiment: Option<Experiment>,
    /// Number of agents.
    #[arg(long)]
    pub n: Option<usize>,
    /// Task difficulty.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Rationality for fixed-β experiments.
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub beta_start: Option<f64>,
    #[arg(long)]
    pub beta_end: Option<f64>,
    /// Points in the inclusive β grid.
    #[arg(long)]
    pub beta_points: Option<usize>,
    /// Regular degrees, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub k_list: Option<Vec<usize>>,
    /// Graph sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub n_list: Option<Vec<usize>>,
    /// Edge count for the regular-vs-irregular comparison.
    #[arg(long)]
    pub edges: Option<usize>,
    /// Edges per agent for the price-of-irregularity scatter.
    #[arg(long)]
    pub edge_factor: Option<usize>,
    /// Edges added one at a time in edge-augmentation.
    #[arg(long)]
    pub added_edges: Option<usize>,
    /// Allowed miscoordination probability.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Spin samples per graph.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Random graphs per configuration.
    #[arg(long)]
    pub graphs: Option<usize>,
    /// Histogram bins.
    #[arg(long)]
    pub bins: Option<usize>,
    /// CSV path; the JSON sidecar goes next to it.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Edge list (`n m` header, then `i j` lines) replacing generated graphs.
    #[arg(long)]
    pub graph_file: Option<PathBuf>,
}

macro_rules! prefer {
    ($flags:ident, $file:ident, $($field:ident),*) => {
        Settings { config: None, $($field: $flags.$field.or($file.$field)),* }
    };
}

impl Settings {
    /// Field-wise `self` over `file`.
    pub fn over(self, file: Settings) -> Settings {
        let flags = self;
        prefer!(
            flags, file, experiment, n, theta, beta, beta_start, beta_end, beta_points, k_list,
            n_list, edges, edge_factor, added_edges, delta, seed, samples, graphs, bins, output,
            graph_file
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct BetaGrid {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl BetaGrid {
    /// Inclusive linspace.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let step = (self.end - self.start) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| if i + 1 == self.points { self.end } else { self.start + step * i as f64 })
            .collect()
    }
}

/// Fully resolved experiment settings, echoed into every output sidecar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub n: usize,
    pub theta: f64,
    pub beta: f64,
    pub beta_grid: BetaGrid,
    pub k_list: Vec<usize>,
    pub n_list: Vec<usize>,
    pub edges: usize,
    pub edge_factor: usize,
    pub added_edges: usize,
    pub delta: f64,
    pub seed: u64,
    pub samples: usize,
    pub graphs: usize,
    pub bins: usize,
    pub output: PathBuf,
    pub graph_file: Option<PathBuf>,
}

/// Parses command-line arguments (program name first) into a validated config.
pub fn parse_config<I, T>(args: I) -> Result<ExperimentConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let flags = Settings::try_parse_from(args).map_err(|e| anyhow!(first_line(&e.to_string())))?;
    let merged = match &flags.config {
        Some(path) => flags.clone().over(read_settings(path)?),
        None => flags,
    };
    resolve(merged)
}

pub(crate) fn first_line(s: &str) -> String {
    let line = s.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
    line.trim().trim_start_matches("error:").trim().to_string()
}

/// Reads a `.json` or `.toml` settings file.
pub fn read_settings(path: &Path) -> Result<Settings> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let parsed = match ext {
        "json" => serde_json::from_str(&text).map_err(|e| anyhow!(e.to_string())),
        "toml" => toml::from_str(&text).map_err(|e| anyhow!(first_line(&e.to_string()))),
        other => bail!("config file must end in .json or .toml, got '{other}'"),
    };
    parsed.with_context(|| format!("in {}", path.display()))
}

fn default_k_list(experiment: Experiment, n: usize) -> Vec<usize> {
    let valid: Vec<usize> = (3..n).filter(|&k| build_k_regular(n, k, None).is_ok()).collect();
    match experiment {
        Experiment::MonotonicityBetaK => valid.into_iter().step_by(2).collect(),
        _ => valid,
    }
}

/// Applies per-experiment defaults and checks every value against the
/// preconditions of the operations it feeds.
pub fn resolve(s: Settings) -> Result<ExperimentConfig> {
    use Experiment::*;
    let experiment = s.experiment.ok_or_else(|| anyhow!("missing --experiment"))?;
    let n = s.n.unwrap_or(if experiment == EdgeAugmentation { 10 } else { 14 });
    let beta_default = if experiment == PoiScatter { 0.5 } else { 1.0 };
    let grid_end = if experiment == RegularVsIrregular { 1.0 } else { 3.0 };
    let grid_points = if experiment == RegularVsIrregular { 21 } else { 61 };
    let n_list_default = match experiment {
        CltHistogram => vec![64, 256, 1024],
        _ => vec![10, 12, 14],
    };
    let graphs_default = if experiment == PoiScatter { 60 } else { 100 };
    let output = match s.output {
        Some(p) => p,
        None => {
            let dir = std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| ".".into());
            dir.join(format!("{}.csv", experiment.name()))
        }
    };
    let cfg = ExperimentConfig {
        experiment,
        n,
        theta: s.theta.unwrap_or(0.3),
        beta: s.beta.unwrap_or(beta_default),
        beta_grid: BetaGrid {
            start: s.beta_start.unwrap_or(0.0),
            end: s.beta_end.unwrap_or(grid_end),
            points: s.beta_points.unwrap_or(grid_points),
        },
        k_list: s.k_list.unwrap_or_else(|| default_k_list(experiment, n)),
        n_list: s.n_list.unwrap_or(n_list_default),
        edges: s.edges.unwrap_or(3 * n),
        edge_factor: s.edge_factor.unwrap_or(3),
        added_edges: s.added_edges.unwrap_or(20),
        delta: s.delta.unwrap_or(0.1),
        seed: s.seed.unwrap_or(1),
        samples: s.samples.unwrap_or(100_000),
        graphs: s.graphs.unwrap_or(graphs_default),
        bins: s.bins.unwrap_or(41),
        output,
        graph_file: s.graph_file,
    };
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(c: &ExperimentConfig) -> Result<()> {
    use Experiment::*;
    if !c.theta.is_finite() {
        bail!("theta must be finite");
    }
    if !(c.beta.is_finite() && c.beta >= 0.0) {
        bail!("beta must be finite and nonnegative, got {}", c.beta);
    }
    let g = &c.beta_grid;
    if !(g.start.is_finite() && g.end.is_finite() && g.start >= 0.0 && g.end >= g.start) || g.points == 0 {
        bail!("beta grid needs 0 <= start <= end and at least one point");
    }
    let uses_graph_file = matches!(c.experiment, MonotonicityBetaK | EdgeAugmentation | CltHistogram);
    if c.graph_file.is_some() && !uses_graph_file {
        bail!("--graph-file is not supported by {}", c.experiment.name());
    }
    let exact_n = |n: usize, cap: usize| -> Result<()> {
        if n > cap {
            bail!("n = {n} exceeds the exact enumeration cap of {cap}");
        }
        if n < 2 {
            bail!("n must be at least 2, got {n}");
        }
        Ok(())
    };
    match c.experiment {
        MonotonicityBetaK | BetaMin => {
            if c.graph_file.is_none() {
                exact_n(c.n, STREAM_MAX_N)?;
                if c.k_list.is_empty() {
                    bail!("k-list is empty");
                }
                for &k in &c.k_list {
                    build_k_regular(c.n, k, None).map_err(|e| anyhow!("k = {k}: {e}"))?;
                }
            }
            if c.experiment == BetaMin {
                if c.theta == 0.5 {
                    bail!("beta-min needs theta != 0.5");
                }
                if !(c.delta > 0.0 && c.delta < 1.0) {
                    bail!("delta must lie in (0, 1), got {}", c.delta);
                }
            }
        }
        EdgeAugmentation => {
            if c.graph_file.is_none() {
                exact_n(c.n, STREAM_MAX_N)?;
                if c.n - 1 + c.added_edges > c.n * (c.n - 1) / 2 {
                    bail!("cannot add {} edges to a tree on {} agents", c.added_edges, c.n);
                }
            }
        }
        RegularVsIrregular => {
            exact_n(c.n, STREAM_MAX_N)?;
            if c.edges + 1 < c.n || c.edges >= c.n * (c.n - 1) / 2 {
                bail!("edge count {} must lie in [n - 1, n(n - 1)/2) for n = {}", c.edges, c.n);
            }
            if c.graphs == 0 {
                bail!("graphs must be positive");
            }
        }
        CltHistogram => {
            if c.graph_file.is_none() && c.n_list.iter().any(|&n| n < 2) {
                bail!("every n in n-list must be at least 2");
            }
            if c.samples < netcoord::design::MIN_CLT_SAMPLES {
                bail!("samples must be at least {}", netcoord::design::MIN_CLT_SAMPLES);
            }
            if c.bins == 0 {
                bail!("bins must be positive");
            }
        }
        PoiScatter => {
            if c.n_list.is_empty() || c.graphs == 0 {
                bail!("n-list and graphs must be nonempty");
            }
            for &n in &c.n_list {
                exact_n(n, GIBBS_MAX_N)?;
                let m = c.edge_factor * n;
                if m + 1 < n || m >= n * (n - 1) / 2 {
                    bail!("edge-factor {} gives {m} edges, out of range for n = {n}", c.edge_factor);
                }
            }
        }
        VerifySuite => {}
    }
    Ok(())
}
