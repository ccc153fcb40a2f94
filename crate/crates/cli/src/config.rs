//! Run configuration: TOML schema, parsing and validation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use boundent::partition::{Partition, PartitionKind};
use boundent::potential::Potential;
use boundent::spin::MAX_SITES;
use boundent::thermal::ZERO_TEMPERATURE;

/// Figure recipe the configuration reproduces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Custom,
}

impl Preset {
    pub const FIGURES: [Preset; 8] = [
        Preset::Fig1,
        Preset::Fig2,
        Preset::Fig3,
        Preset::Fig4,
        Preset::Fig5,
        Preset::Fig6,
        Preset::Fig7,
        Preset::Fig8,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
            Preset::Fig7 => "fig7",
            Preset::Fig8 => "fig8",
            Preset::Custom => "custom",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::FIGURES
            .into_iter()
            .chain([Preset::Custom])
            .find(|p| p.name() == name)
    }
}

/// What to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    /// Negativity for every `(n, T, partition)`.
    Negativity,
    /// Negativity for every `(parameter, T, partition)` at one size.
    Sweep,
    /// Threshold temperatures along the swept parameter at one size.
    Phase,
    /// Threshold temperatures along `n_values`.
    SizeSweep,
    /// Infinite-ring even-odd threshold and half-half upper bound along `c`.
    Limit,
    /// Bound-entanglement window over a temperature grid.
    Certify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    HarmonicNearest,
    HarmonicNextNearest,
    /// Circulant potential given by `system.first_row`.
    HarmonicCustom,
    SpinXx,
    SpinXxx,
}

impl Family {
    pub fn is_harmonic(&self) -> bool {
        matches!(
            self,
            Family::HarmonicNearest | Family::HarmonicNextNearest | Family::HarmonicCustom
        )
    }

    /// Scalar parameters this family reads from `[system]`.
    pub fn parameters(&self) -> &'static [&'static str] {
        match self {
            Family::HarmonicNearest => &["c"],
            Family::HarmonicNextNearest => &["mu"],
            Family::HarmonicCustom => &[],
            Family::SpinXx => &["j", "b"],
            Family::SpinXxx => &["b"],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_row: Option<Vec<f64>>,
}

impl SystemConfig {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            c: None,
            mu: None,
            j: None,
            b: None,
            n: None,
            first_row: None,
        }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        match name {
            "c" => self.c,
            "mu" => self.mu,
            "j" => self.j,
            "b" => self.b,
            _ => None,
        }
    }

    pub fn set(&mut self, name: &str, value: f64) {
        match name {
            "c" => self.c = Some(value),
            "mu" => self.mu = Some(value),
            "j" => self.j = Some(value),
            "b" => self.b = Some(value),
            _ => {}
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// One of the family's parameters (`c`, `mu`, `j`, `b`).
    pub parameter: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Auto,
    Dense,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverConfig {
    /// Top of the threshold bracket; the scan starts at `t_max / 1000`.
    pub t_max: f64,
    pub tol: f64,
    pub method: Method,
    /// Explicit partial-sum order of the limit bound.
    pub m: usize,
    /// Integrations by parts in the limit remainder.
    pub s: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            t_max: 10.0,
            tol: 1e-5,
            method: Method::Auto,
            m: 10,
            s: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WindowConfig {
    pub t_min: f64,
    pub t_max: f64,
    /// Log-spaced probe temperatures between `t_min` and `t_max`.
    pub points: usize,
}

impl Default for WindowConfig {
    fn default() -> Self {
        Self {
            t_min: 0.05,
            t_max: 6.0,
            points: boundent::scan::WINDOW_PROBE_POINTS,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<String>,
}

impl OutputConfig {
    pub fn is_empty(&self) -> bool {
        self.csv.is_none() && self.metadata.is_none()
    }
}

/// A complete run description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub preset: Preset,
    pub task: Task,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub n_values: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub temperatures: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub partitions: Vec<String>,
    pub system: SystemConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub window: WindowConfig,
    #[serde(default, skip_serializing_if = "OutputConfig::is_empty")]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("parse error{}: {message}", location(*.line, *.column))]
    Parse {
        line: Option<usize>,
        column: Option<usize>,
        message: String,
    },
    #[error("invalid `{field}`: {message}")]
    Validation { field: String, message: String },
}

fn location(line: Option<usize>, column: Option<usize>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!(" at line {l}, column {c}"),
        (Some(l), None) => format!(" at line {l}"),
        _ => String::new(),
    }
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Validation {
        field: field.into(),
        message: message.into(),
    }
}

/// Parses and validates a TOML run configuration.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    if text.trim().is_empty() {
        return Err(ConfigError::Parse {
            line: None,
            column: None,
            message: "configuration is empty".into(),
        });
    }
    let config: RunConfig = toml::from_str(text).map_err(|e| {
        let (line, column) = match e.span() {
            Some(span) => {
                let before = &text[..span.start.min(text.len())];
                let line = before.matches('\n').count() + 1;
                let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
                (Some(line), Some(column))
            }
            None => (None, None),
        };
        ConfigError::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    config.validate()?;
    Ok(config)
}

impl RunConfig {
    pub fn new(task: Task, system: SystemConfig) -> Self {
        Self {
            preset: Preset::Custom,
            task,
            n_values: Vec::new(),
            temperatures: Vec::new(),
            partitions: Vec::new(),
            system,
            sweep: None,
            solver: SolverConfig::default(),
            window: WindowConfig::default(),
            output: OutputConfig::default(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run configurations always serialize")
    }

    /// Sizes the task runs at: `n_values`, else `system.n`, else the length
    /// of a custom first row.
    pub fn sizes(&self) -> Vec<usize> {
        if !self.n_values.is_empty() {
            self.n_values.clone()
        } else if let Some(n) = self.system.n {
            vec![n]
        } else if let Some(row) = &self.system.first_row {
            vec![row.len()]
        } else {
            Vec::new()
        }
    }

    /// Parameter values the task visits for `name`: the sweep values if it is
    /// swept, else the fixed `[system]` value.
    pub fn values_of(&self, name: &str) -> Vec<f64> {
        match &self.sweep {
            Some(s) if s.parameter == name => s.values.clone(),
            _ => self.system.get(name).into_iter().collect(),
        }
    }

    pub fn partition_kinds(&self) -> Vec<PartitionKind> {
        self.partitions
            .iter()
            .map(|p| p.parse().expect("validated partition"))
            .collect()
    }

    /// Checks every precondition before anything is computed.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let family = self.system.family;
        let task = self.task;
        let swept = self.sweep.as_ref().map(|s| s.parameter.as_str());

        // task shape
        match task {
            Task::Sweep | Task::Phase | Task::Limit if self.sweep.is_none() => {
                return Err(invalid("sweep", "this task sweeps a parameter"));
            }
            Task::Negativity | Task::SizeSweep | Task::Certify if self.sweep.is_some() => {
                return Err(invalid("sweep", "this task takes its parameters from [system]"));
            }
            _ => {}
        }
        if task == Task::Limit && (family != Family::HarmonicNearest || swept != Some("c")) {
            return Err(invalid("task", "the limit task sweeps c of harmonic-nearest"));
        }
        if family == Family::HarmonicCustom && !matches!(task, Task::Negativity | Task::Certify) {
            return Err(invalid("task", "harmonic-custom supports negativity and certify only"));
        }

        // parameters
        for &name in family.parameters() {
            if swept == Some(name) {
                continue;
            }
            match self.system.get(name) {
                Some(v) if !v.is_finite() => {
                    return Err(invalid(format!("system.{name}"), format!("{v} is not finite")));
                }
                Some(_) => {}
                None => return Err(invalid(format!("system.{name}"), "required by this family")),
            }
        }
        for name in ["c", "mu", "j", "b"] {
            if self.system.get(name).is_some() && !family.parameters().contains(&name) {
                return Err(invalid(format!("system.{name}"), "not a parameter of this family"));
            }
        }
        match (&self.system.first_row, family) {
            (None, Family::HarmonicCustom) => {
                return Err(invalid("system.first_row", "required by harmonic-custom"));
            }
            (Some(_), f) if f != Family::HarmonicCustom => {
                return Err(invalid("system.first_row", "only harmonic-custom takes a first row"));
            }
            _ => {}
        }
        if let Some(sweep) = &self.sweep {
            if !family.parameters().contains(&sweep.parameter.as_str()) {
                return Err(invalid(
                    "sweep.parameter",
                    format!("`{}` is not a parameter of this family", sweep.parameter),
                ));
            }
            if sweep.values.is_empty() {
                return Err(invalid("sweep.values", "must not be empty"));
            }
            if let Some(v) = sweep.values.iter().find(|v| !v.is_finite()) {
                return Err(invalid("sweep.values", format!("{v} is not finite")));
            }
            if self.system.get(&sweep.parameter).is_some() {
                return Err(invalid(
                    format!("system.{}", sweep.parameter),
                    "also given in [sweep]; set it in one place",
                ));
            }
        }
        if task == Task::Limit {
            for &c in &self.values_of("c") {
                Potential::nearest(4, c).map_err(|e| invalid("sweep.values", e.to_string()))?;
            }
            if self.solver.m == 0 {
                return Err(invalid("solver.m", "must be at least 1"));
            }
            if !(2..=4).contains(&self.solver.s) {
                return Err(invalid("solver.s", "must be 2, 3 or 4"));
            }
        }

        // sizes
        let sizes = self.sizes();
        if task != Task::Limit {
            if sizes.is_empty() {
                return Err(invalid("n_values", "give n_values or system.n"));
            }
            if !self.n_values.is_empty() && self.system.n.is_some() {
                return Err(invalid("system.n", "also given as n_values; set it in one place"));
            }
            for &n in &sizes {
                check_size(family, n)?;
            }
        }
        if matches!(task, Task::Sweep | Task::Phase | Task::Certify) && sizes.len() != 1 {
            return Err(invalid("n_values", "this task runs at a single size"));
        }
        if task == Task::SizeSweep && self.n_values.len() < 2 {
            return Err(invalid("n_values", "size sweeps need at least two sizes"));
        }
        if let Some(row) = &self.system.first_row {
            if sizes != [row.len()] {
                return Err(invalid("system.first_row", "its length fixes n; drop n and n_values"));
            }
        }

        // harmonic systems are cheap to build, so every one the run needs is checked
        let mut gapless = false;
        if family.is_harmonic() && task != Task::Limit {
            for &n in &sizes {
                let potentials: Vec<(Result<Potential, boundent::Error>, &str)> = match family {
                    Family::HarmonicNearest => self
                        .values_of("c")
                        .into_iter()
                        .map(|c| (Potential::nearest(n, c), param_field(swept, "c")))
                        .collect(),
                    Family::HarmonicNextNearest => self
                        .values_of("mu")
                        .into_iter()
                        .map(|mu| (Potential::next_nearest(n, mu), param_field(swept, "mu")))
                        .collect(),
                    _ => {
                        let row = self.system.first_row.clone().unwrap_or_default();
                        vec![(Potential::build_circulant(row), "system.first_row")]
                    }
                };
                for (potential, field) in potentials {
                    gapless |= potential.map_err(|e| invalid(field, e.to_string()))?.is_gapless();
                }
            }
        }

        // partitions
        if matches!(task, Task::Negativity | Task::Sweep | Task::Phase | Task::SizeSweep)
            && self.partitions.is_empty()
        {
            return Err(invalid("partitions", "must not be empty"));
        }
        if matches!(task, Task::Limit | Task::Certify) && !self.partitions.is_empty() {
            return Err(invalid("partitions", "this task fixes its own partitions"));
        }
        for p in &self.partitions {
            let kind: PartitionKind = p
                .parse()
                .map_err(|e: boundent::Error| invalid("partitions", e.to_string()))?;
            for &n in &sizes {
                Partition::new(kind, n).map_err(|e| invalid("partitions", e.to_string()))?;
            }
        }

        // temperatures
        let needs_temperatures = matches!(task, Task::Negativity | Task::Sweep);
        if needs_temperatures && self.temperatures.is_empty() {
            return Err(invalid("temperatures", "must not be empty"));
        }
        if !needs_temperatures && !self.temperatures.is_empty() {
            return Err(invalid("temperatures", "this task chooses its own temperatures"));
        }
        for &t in &self.temperatures {
            if !t.is_finite() || t < 0.0 {
                return Err(invalid("temperatures", boundent::Error::BadTemperature { t }.to_string()));
            }
            if t < ZERO_TEMPERATURE && gapless {
                return Err(invalid("temperatures", boundent::Error::GaplessAtZeroT.to_string()));
            }
        }

        // solver and window
        if !(self.solver.t_max.is_finite() && self.solver.t_max > 0.0) {
            return Err(invalid("solver.t_max", "must be positive"));
        }
        if !(self.solver.tol.is_finite() && self.solver.tol > 0.0) {
            return Err(invalid("solver.tol", "must be positive"));
        }
        if task == Task::Certify {
            let w = &self.window;
            if !(w.t_min > 0.0 && w.t_max > w.t_min && w.t_max.is_finite()) {
                return Err(invalid("window", "need 0 < t_min < t_max"));
            }
            if w.points < 2 {
                return Err(invalid("window.points", "need at least 2 probes"));
            }
            if sizes[0] < 4 {
                return Err(invalid("n", "windows need at least 4 sites"));
            }
        }
        Ok(())
    }
}

fn param_field(swept: Option<&str>, name: &'static str) -> &'static str {
    if swept == Some(name) {
        "sweep.values"
    } else {
        match name {
            "c" => "system.c",
            _ => "system.mu",
        }
    }
}

fn check_size(family: Family, n: usize) -> Result<(), ConfigError> {
    let (lo, hi) = match family {
        Family::HarmonicNearest | Family::HarmonicCustom => (4, usize::MAX),
        Family::HarmonicNextNearest => (6, usize::MAX),
        Family::SpinXx | Family::SpinXxx => (2, MAX_SITES),
    };
    if n % 2 != 0 || n < lo {
        return Err(invalid("n", format!("{n} must be even and at least {lo}")));
    }
    if n > hi {
        return Err(invalid("n", boundent::Error::TooLarge { n, max: hi }.to_string()));
    }
    Ok(())
}
