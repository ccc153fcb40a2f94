//! Command-line flags and their translation into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{ConfigError, Family, Method, Preset, RunConfig, SweepConfig, SystemConfig, Task};
use crate::presets::preset_config;

#[derive(Debug, Parser)]
#[command(
    name = "boundent",
    version,
    about = "Thermal entanglement and bound-entanglement windows of harmonic and spin rings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Log-negativity of harmonic rings for every (n, T, partition).
    HarmonicNegativity(HarmonicNegativity),
    /// Threshold temperatures of harmonic rings along c or mu, or along n with --sizes.
    HarmonicPhase(HarmonicPhase),
    /// Infinite-ring even-odd threshold and half-half upper bound along c.
    HarmonicLimit(HarmonicLimit),
    /// Negativity of spin rings for every (n, T, partition).
    SpinNegativity(SpinNegativity),
    /// Threshold temperatures of spin rings along J or B, or along n with --sizes.
    SpinPhase(SpinPhase),
    /// Certify a bound-entanglement window over a temperature grid.
    Certify(Certify),
    /// Run a figure preset or a configuration file.
    Reproduce(Reproduce),
}

#[derive(Debug, Args)]
pub struct Common {
    /// CSV destination; standard output when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// JSON metadata sidecar destination.
    #[arg(long)]
    pub metadata: Option<PathBuf>,
    /// Print the equivalent configuration file and exit without computing.
    #[arg(long)]
    pub print_config: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PotentialArg {
    Nearest,
    NextNearest,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpinModelArg {
    Xx,
    Xxx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Dense,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Dense => Method::Dense,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VaryArg {
    J,
    B,
}

#[derive(Debug, Args)]
pub struct HarmonicNegativity {
    #[arg(long, value_enum, default_value = "nearest")]
    pub potential: PotentialArg,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    /// First row of a custom circulant potential; fixes n.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub first_row: Vec<f64>,
    /// Ring sizes.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Temperatures.
    #[arg(long = "T", visible_alias = "t", value_delimiter = ',', required = true)]
    pub temperatures: Vec<f64>,
    /// Partitions such as e:o, h:h, 1:n-1, contiguous:2.
    #[arg(long, value_delimiter = ',', default_value = "e:o")]
    pub partition: Vec<String>,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct HarmonicPhase {
    #[arg(long, value_enum, default_value = "nearest")]
    pub potential: PotentialArg,
    /// Values of c (nearest) or mu (next-nearest) to sweep.
    #[arg(long, value_delimiter = ',', conflicts_with = "sizes")]
    pub values: Vec<f64>,
    /// Fixed c for a size sweep.
    #[arg(long)]
    pub c: Option<f64>,
    /// Fixed mu for a size sweep.
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    /// Sweep over these sizes instead of a parameter.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "e:o,h:h,1:n-1")]
    pub partition: Vec<String>,
    #[arg(long, default_value_t = 2.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct HarmonicLimit {
    /// Couplings c in [0, 1/2).
    #[arg(long, value_delimiter = ',', required = true)]
    pub values: Vec<f64>,
    /// Explicit partial-sum order.
    #[arg(long, default_value_t = 10)]
    pub m: usize,
    /// Integrations by parts in the remainder.
    #[arg(long, default_value_t = 3)]
    pub s: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SpinNegativity {
    #[arg(long, value_enum, default_value = "xx")]
    pub model: SpinModelArg,
    /// XX coupling; 1 when absent.
    #[arg(long, allow_negative_numbers = true)]
    pub j: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long = "T", visible_alias = "t", value_delimiter = ',', required = true)]
    pub temperatures: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "e:o")]
    pub partition: Vec<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SpinPhase {
    #[arg(long, value_enum, default_value = "xx")]
    pub model: SpinModelArg,
    /// Fixed XX coupling; 1 when absent and not swept.
    #[arg(long, allow_negative_numbers = true)]
    pub j: Option<f64>,
    /// Fixed field when it is not swept.
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Parameter swept by --values.
    #[arg(long, value_enum, default_value = "b")]
    pub vary: VaryArg,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "sizes")]
    pub values: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Sweep over these sizes instead of a parameter.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "e:o,h:h,1:n-1")]
    pub partition: Vec<String>,
    #[arg(long, default_value_t = 20.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Certify {
    /// Preset with a certify task, such as fig8.
    #[arg(long, conflicts_with_all = ["config", "family"])]
    pub preset: Option<String>,
    /// Configuration file with a certify task.
    #[arg(long, conflicts_with = "family")]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub j: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub first_row: Vec<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub t_min: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Reproduce {
    /// fig1 .. fig8.
    #[arg(required_unless_present = "config", conflicts_with = "config")]
    pub preset: Option<String>,
    /// Configuration file to run instead of a preset.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Directory receiving `<name>.csv` and `<name>.json`.
    #[arg(long, default_value = ".")]
    pub output_dir: PathBuf,
    /// Print the configuration and exit without computing.
    #[arg(long)]
    pub print_config: bool,
    /// Also write `<name>_plot.py`, a matplotlib script for the CSV.
    #[arg(long)]
    pub plot_script: bool,
}

/// Where a run writes its results.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Destinations {
    pub csv: Option<PathBuf>,
    pub metadata: Option<PathBuf>,
    pub plot_script: Option<PathBuf>,
    pub print_config: bool,
}

impl Destinations {
    fn from_common(common: &Common) -> Self {
        Self {
            csv: common.output.clone(),
            metadata: common.metadata.clone(),
            plot_script: None,
            print_config: common.print_config,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RequestError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn invalid(field: &str, message: &str) -> RequestError {
    ConfigError::Validation {
        field: field.into(),
        message: message.into(),
    }
    .into()
}

fn named_preset(name: &str) -> Result<RunConfig, RequestError> {
    Preset::from_name(name)
        .and_then(preset_config)
        .ok_or_else(|| invalid("preset", &format!("`{name}` is not one of fig1..fig8")))
}

fn read_config(path: &PathBuf) -> Result<RunConfig, RequestError> {
    let text = std::fs::read_to_string(path).map_err(|source| RequestError::Read {
        path: path.clone(),
        source,
    })?;
    Ok(crate::config::parse_config(&text)?)
}

fn sweep(parameter: &str, values: &[f64]) -> Option<SweepConfig> {
    Some(SweepConfig {
        parameter: parameter.into(),
        values: values.to_vec(),
    })
}

fn harmonic_system(potential: PotentialArg, c: Option<f64>, mu: Option<f64>, first_row: &[f64]) -> SystemConfig {
    let family = match potential {
        PotentialArg::Nearest => Family::HarmonicNearest,
        PotentialArg::NextNearest => Family::HarmonicNextNearest,
        PotentialArg::Custom => Family::HarmonicCustom,
    };
    let mut s = SystemConfig::new(family);
    s.c = c;
    s.mu = mu;
    if !first_row.is_empty() {
        s.first_row = Some(first_row.to_vec());
    }
    s
}

fn spin_system(model: SpinModelArg, j: Option<f64>, b: Option<f64>) -> SystemConfig {
    let mut s = match model {
        SpinModelArg::Xx => SystemConfig::new(Family::SpinXx),
        SpinModelArg::Xxx => SystemConfig::new(Family::SpinXxx),
    };
    s.j = j;
    s.b = b;
    s
}

/// Translates parsed flags into a configuration and its destinations.
/// The configuration is not validated here.
pub fn request(command: Command) -> Result<(RunConfig, Destinations), RequestError> {
    Ok(match command {
        Command::HarmonicNegativity(a) => {
            let mut cfg = RunConfig::new(
                Task::Negativity,
                harmonic_system(a.potential, a.c, a.mu, &a.first_row),
            );
            cfg.n_values = a.n;
            cfg.temperatures = a.temperatures;
            cfg.partitions = a.partition;
            cfg.solver.method = a.method.into();
            (cfg, Destinations::from_common(&a.common))
        }
        Command::HarmonicPhase(a) => {
            let mut system = harmonic_system(a.potential, a.c, a.mu, &[]);
            let mut cfg = if a.sizes.is_empty() {
                system.n = Some(a.n);
                let parameter = if a.potential == PotentialArg::NextNearest { "mu" } else { "c" };
                let mut cfg = RunConfig::new(Task::Phase, system);
                cfg.sweep = sweep(parameter, &a.values);
                cfg
            } else {
                let mut cfg = RunConfig::new(Task::SizeSweep, system);
                cfg.n_values = a.sizes;
                cfg
            };
            cfg.partitions = a.partition;
            cfg.solver.t_max = a.t_max;
            cfg.solver.tol = a.tol;
            cfg.solver.method = a.method.into();
            (cfg, Destinations::from_common(&a.common))
        }
        Command::HarmonicLimit(a) => {
            let mut cfg = RunConfig::new(Task::Limit, SystemConfig::new(Family::HarmonicNearest));
            cfg.sweep = sweep("c", &a.values);
            cfg.solver.m = a.m;
            cfg.solver.s = a.s;
            (cfg, Destinations::from_common(&a.common))
        }
        Command::SpinNegativity(a) => {
            let j = match a.model {
                SpinModelArg::Xx => Some(a.j.unwrap_or(1.0)),
                SpinModelArg::Xxx => a.j,
            };
            let mut cfg = RunConfig::new(Task::Negativity, spin_system(a.model, j, Some(a.b)));
            cfg.n_values = a.n;
            cfg.temperatures = a.temperatures;
            cfg.partitions = a.partition;
            (cfg, Destinations::from_common(&a.common))
        }
        Command::SpinPhase(a) => {
            let swept = !a.values.is_empty() || a.sizes.is_empty();
            let vary_j = swept && a.vary == VaryArg::J;
            let j = match a.model {
                SpinModelArg::Xx if !vary_j => Some(a.j.unwrap_or(1.0)),
                _ => a.j,
            };
            let mut system = spin_system(a.model, j, a.b);
            let mut cfg = if a.sizes.is_empty() {
                system.n = Some(a.n);
                let parameter = if vary_j { "j" } else { "b" };
                let mut cfg = RunConfig::new(Task::Phase, system);
                cfg.sweep = sweep(parameter, &a.values);
                cfg
            } else {
                let mut cfg = RunConfig::new(Task::SizeSweep, system);
                cfg.n_values = a.sizes;
                cfg
            };
            cfg.partitions = a.partition;
            cfg.solver.t_max = a.t_max;
            cfg.solver.tol = a.tol;
            (cfg, Destinations::from_common(&a.common))
        }
        Command::Certify(a) => {
            let mut cfg = if let Some(name) = &a.preset {
                named_preset(name)?
            } else if let Some(path) = &a.config {
                read_config(path)?
            } else {
                let Some(family) = a.family else {
                    return Err(invalid("family", "give --preset, --config or --family"));
                };
                let mut system = SystemConfig::new(family);
                system.c = a.c;
                system.mu = a.mu;
                system.j = a.j;
                system.b = a.b;
                system.n = a.n;
                if !a.first_row.is_empty() {
                    system.first_row = Some(a.first_row.clone());
                }
                RunConfig::new(Task::Certify, system)
            };
            if cfg.task != Task::Certify {
                return Err(invalid("task", "certify needs a configuration with task = \"certify\""));
            }
            if let Some(t) = a.t_min {
                cfg.window.t_min = t;
            }
            if let Some(t) = a.t_max {
                cfg.window.t_max = t;
            }
            if let Some(p) = a.points {
                cfg.window.points = p;
            }
            (cfg, Destinations::from_common(&a.common))
        }
        Command::Reproduce(a) => {
            let (cfg, stem) = match (&a.preset, &a.config) {
                (Some(name), _) => (named_preset(name)?, name.clone()),
                (None, Some(path)) => {
                    let stem = path
                        .file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_else(|| "run".into());
                    (read_config(path)?, stem)
                }
                (None, None) => return Err(invalid("preset", "give a preset or --config")),
            };
            let csv = cfg
                .output
                .csv
                .as_ref()
                .map(PathBuf::from)
                .unwrap_or_else(|| a.output_dir.join(format!("{stem}.csv")));
            let metadata = cfg
                .output
                .metadata
                .as_ref()
                .map(PathBuf::from)
                .unwrap_or_else(|| csv.with_extension("json"));
            let plot_script = a.plot_script.then(|| {
                let name = format!("{}_plot.py", csv.file_stem().unwrap_or_default().to_string_lossy());
                csv.with_file_name(name)
            });
            let destinations = Destinations {
                csv: Some(csv),
                metadata: Some(metadata),
                plot_script,
                print_config: a.print_config,
            };
            (cfg, destinations)
        }
    })
}
