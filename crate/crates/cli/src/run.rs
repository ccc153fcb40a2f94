//! Executes a validated [`RunConfig`] and collects its table.

use boundent::limit::{threshold_even_odd_limit, threshold_halfhalf_upper};
use boundent::partition::{Partition, PartitionKind};
use boundent::potential::Potential;
use boundent::scan::{
    certify_bound_window, log_grid, phase_diagram, size_scan, BoundWindow, HarmonicMethod,
    ModelFamily, OffsetCoverage, ScanOptions, ThermalSystem,
};
use boundent::spin::{SpinModel, SpinSystem};
use boundent::Result;

use crate::config::{Family, Method, RunConfig, SystemConfig, Task};
use crate::output::{Cell, Table};

/// A finished run: the table plus human-readable summary lines.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub table: Table,
    pub summary: Vec<String>,
    pub window: Option<BoundWindow>,
}

impl Outcome {
    fn table(table: Table) -> Self {
        Self {
            table,
            summary: Vec::new(),
            window: None,
        }
    }
}

/// Column holding a threshold temperature for `kind`.
pub fn threshold_column(kind: PartitionKind) -> String {
    match kind {
        PartitionKind::EvenOdd => "T_eo".into(),
        PartitionKind::HalfHalf { offset: 0 } => "T_hh".into(),
        PartitionKind::HalfHalf { offset } => format!("T_hh@{offset}"),
        PartitionKind::OneVsRest { site: 0 } => "T_1vr".into(),
        PartitionKind::OneVsRest { site } => format!("T_1vr@{site}"),
        PartitionKind::Contiguous { m } => format!("T_contig{m}"),
        PartitionKind::Custom => "T_custom".into(),
    }
}

/// Column name of a swept parameter.
pub fn parameter_column(name: &str) -> &'static str {
    match name {
        "c" => "c",
        "mu" => "mu",
        "j" => "J",
        _ => "B",
    }
}

fn measure_column(family: Family) -> &'static str {
    if family.is_harmonic() {
        "E_l"
    } else {
        "E_N"
    }
}

fn method(cfg: &RunConfig) -> HarmonicMethod {
    match cfg.solver.method {
        Method::Auto => HarmonicMethod::Auto,
        Method::Dense => HarmonicMethod::Dense,
    }
}

/// The system at size `n` with `[system]` values, optionally overriding one.
pub fn build_system(cfg: &RunConfig, n: usize, set: Option<(&str, f64)>) -> Result<ThermalSystem> {
    let mut s: SystemConfig = cfg.system.clone();
    if let Some((name, value)) = set {
        s.set(name, value);
    }
    let value = |name: &str| s.get(name).expect("validated parameter");
    let system = match s.family {
        Family::HarmonicNearest => ThermalSystem::harmonic(Potential::nearest(n, value("c"))?),
        Family::HarmonicNextNearest => ThermalSystem::harmonic(Potential::next_nearest(n, value("mu"))?),
        Family::HarmonicCustom => {
            let row = s.first_row.clone().expect("validated first row");
            ThermalSystem::harmonic(Potential::build_circulant(row)?)
        }
        Family::SpinXx => ThermalSystem::spin(SpinSystem::new(
            n,
            SpinModel::Xx {
                j: value("j"),
                b: value("b"),
            },
        )?),
        Family::SpinXxx => ThermalSystem::spin(SpinSystem::new(n, SpinModel::Xxx { b: value("b") })?),
    };
    Ok(system.with_method(method(cfg)))
}

/// Family varying `name` with every other parameter taken from `[system]`.
fn model_family(s: &SystemConfig, name: &str) -> ModelFamily {
    match (s.family, name) {
        (Family::HarmonicNearest, _) => ModelFamily::HarmonicNearest,
        (Family::HarmonicNextNearest, _) => ModelFamily::HarmonicNextNearest,
        (Family::SpinXx, "j") => ModelFamily::SpinXx {
            b: s.b.expect("validated field"),
        },
        (Family::SpinXx, _) => ModelFamily::SpinXxField {
            j: s.j.expect("validated coupling"),
        },
        (Family::SpinXxx, _) => ModelFamily::SpinXxx,
        (Family::HarmonicCustom, _) => unreachable!("custom potentials have no parameter"),
    }
}

fn options(cfg: &RunConfig) -> ScanOptions {
    ScanOptions::new(cfg.solver.t_max, cfg.solver.tol).with_method(method(cfg))
}

/// Runs the configured task. The configuration must already be validated.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    match cfg.task {
        Task::Negativity => negativity_table(cfg),
        Task::Sweep => sweep_table(cfg),
        Task::Phase => phase_table(cfg),
        Task::SizeSweep => size_table(cfg),
        Task::Limit => limit_table(cfg),
        Task::Certify => certify(cfg),
    }
}

fn negativity_table(cfg: &RunConfig) -> Result<Outcome> {
    let kinds = cfg.partition_kinds();
    let mut table = Table::new(&["n", "T", "partition", measure_column(cfg.system.family)]);
    for n in cfg.sizes() {
        let system = build_system(cfg, n, None)?;
        let parts = kinds
            .iter()
            .map(|&k| Partition::new(k, n))
            .collect::<Result<Vec<_>>>()?;
        for &t in &cfg.temperatures {
            let state = system.prepare(t)?;
            for part in &parts {
                let value = state.negativity(part)?;
                table.push(vec![
                    Cell::Int(n),
                    Cell::Num(t),
                    Cell::Text(part.kind().tag()),
                    Cell::Num(value),
                ]);
            }
        }
    }
    Ok(Outcome::table(table))
}

fn sweep_table(cfg: &RunConfig) -> Result<Outcome> {
    let sweep = cfg.sweep.as_ref().expect("validated sweep");
    let n = cfg.sizes()[0];
    let parts = cfg
        .partition_kinds()
        .into_iter()
        .map(|k| Partition::new(k, n))
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&[
        parameter_column(&sweep.parameter),
        "T",
        "partition",
        measure_column(cfg.system.family),
    ]);
    for &p in &sweep.values {
        let system = build_system(cfg, n, Some((&sweep.parameter, p)))?;
        for &t in &cfg.temperatures {
            let state = system.prepare(t)?;
            for part in &parts {
                let value = state.negativity(part)?;
                table.push(vec![
                    Cell::Num(p),
                    Cell::Num(t),
                    Cell::Text(part.kind().tag()),
                    Cell::Num(value),
                ]);
            }
        }
    }
    Ok(Outcome::table(table))
}

fn threshold_table(first: &str, kinds: &[PartitionKind], curves: &[boundent::scan::ThresholdCurve]) -> Table {
    let columns: Vec<String> = std::iter::once(first.to_string())
        .chain(kinds.iter().map(|&k| threshold_column(k)))
        .collect();
    let mut table = Table {
        columns,
        rows: Vec::new(),
    };
    let Some(reference) = curves.first() else {
        return table;
    };
    for (i, &(x, _)) in reference.samples.iter().enumerate() {
        let lead = if first == "n" {
            Cell::Int(x as usize)
        } else {
            Cell::Num(x)
        };
        let row = std::iter::once(lead)
            .chain(curves.iter().map(|c| Cell::Num(c.samples[i].1)))
            .collect();
        table.push(row);
    }
    table
}

fn phase_table(cfg: &RunConfig) -> Result<Outcome> {
    let sweep = cfg.sweep.as_ref().expect("validated sweep");
    let kinds = cfg.partition_kinds();
    let family = model_family(&cfg.system, &sweep.parameter);
    let curves = phase_diagram(&family, &sweep.values, &kinds, cfg.sizes()[0], &options(cfg))?;
    Ok(Outcome::table(threshold_table(
        parameter_column(&sweep.parameter),
        &kinds,
        &curves,
    )))
}

fn size_table(cfg: &RunConfig) -> Result<Outcome> {
    let kinds = cfg.partition_kinds();
    let name = cfg.system.family.parameters()[0];
    let family = model_family(&cfg.system, name);
    let value = cfg.system.get(name).expect("validated parameter");
    let curves = size_scan(&family, value, &cfg.n_values, &kinds, &options(cfg))?;
    Ok(Outcome::table(threshold_table("n", &kinds, &curves)))
}

fn limit_table(cfg: &RunConfig) -> Result<Outcome> {
    let mut table = Table::new(&["c", "T_eo_limit", "T_hh_upper"]);
    for c in cfg.values_of("c") {
        let eo = threshold_even_odd_limit(c)?;
        let hh = threshold_halfhalf_upper(c, cfg.solver.m, cfg.solver.s)?;
        table.push(vec![Cell::Num(c), Cell::Num(eo), Cell::Num(hh)]);
    }
    Ok(Outcome::table(table))
}

fn certify(cfg: &RunConfig) -> Result<Outcome> {
    let n = cfg.sizes()[0];
    let system = build_system(cfg, n, None)?;
    let w = &cfg.window;
    let grid = log_grid(w.t_min, w.t_max, w.points);
    let window = certify_bound_window(&system, &grid)?;
    let measure = if cfg.system.family.is_harmonic() { "E_l" } else { "E_N" };
    let eo = format!("{measure}_eo");
    let hh = format!("{measure}_hh_max");
    let mut table = Table::new(&["T", &eo, &hh, "offsets_checked", "coverage", "bound"]);
    for p in &window.probes {
        let coverage = match p.coverage {
            OffsetCoverage::Sampled => "sampled",
            OffsetCoverage::All => "all",
        };
        table.push(vec![
            Cell::Num(p.t),
            Cell::Num(p.even_odd),
            Cell::Num(p.half_half_max),
            Cell::Int(p.offsets.len()),
            Cell::Text(coverage.into()),
            Cell::Bool(p.is_bound()),
        ]);
    }
    let summary = vec![
        format!(
            "bound-entanglement window: T_low={} T_high={}",
            crate::output::format_number(window.t_low),
            crate::output::format_number(window.t_high)
        ),
        format!(
            "n={n}, {} probes, every site pair split by a half-half cut: {}",
            window.probes.len(),
            window.pair_coverage
        ),
        "certifies non-distillability under single-site LOCC only".into(),
    ];
    Ok(Outcome {
        table,
        summary,
        window: Some(window),
    })
}
