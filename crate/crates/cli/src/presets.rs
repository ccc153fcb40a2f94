//! Figure recipes. Every value a caption states is pinned; the grid choices
//! it leaves open are listed by [`grid_notes`] and recorded in the sidecar.

use crate::config::{Family, Preset, RunConfig, SweepConfig, SystemConfig, Task, WindowConfig};

fn grid(lo: f64, step: f64, count: usize) -> Vec<f64> {
    // integer steps keep the values exactly representable in the TOML round trip
    (0..count).map(|i| round12(lo + step * i as f64)).collect()
}

fn round12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

fn partitions(tags: &[&str]) -> Vec<String> {
    tags.iter().map(|t| t.to_string()).collect()
}

fn sweep(parameter: &str, values: Vec<f64>) -> Option<SweepConfig> {
    Some(SweepConfig {
        parameter: parameter.into(),
        values,
    })
}

/// The configuration of one figure preset; `None` for [`Preset::Custom`].
pub fn preset_config(preset: Preset) -> Option<RunConfig> {
    let mut cfg = match preset {
        Preset::Fig1 => {
            let mut system = SystemConfig::new(Family::HarmonicNearest);
            system.c = Some(0.4);
            let mut cfg = RunConfig::new(Task::Negativity, system);
            cfg.n_values = vec![8, 16, 32, 64, 128, 256, 512];
            cfg.temperatures = vec![0.35, 0.4, 0.45];
            cfg.partitions = partitions(&["e:o", "h:h"]);
            cfg
        }
        Preset::Fig2 => {
            let mut system = SystemConfig::new(Family::HarmonicNearest);
            system.n = Some(800);
            let mut cfg = RunConfig::new(Task::Phase, system);
            cfg.sweep = sweep("c", grid(0.05, 0.05, 9));
            cfg.partitions = partitions(&["e:o", "h:h", "1:n-1"]);
            cfg.solver.t_max = 2.0;
            cfg
        }
        Preset::Fig3 => {
            let mut system = SystemConfig::new(Family::HarmonicNextNearest);
            system.n = Some(200);
            let mut cfg = RunConfig::new(Task::Phase, system);
            cfg.sweep = sweep("mu", grid(0.2, 0.2, 10));
            cfg.partitions = partitions(&["e:o", "h:h", "1:n-1"]);
            cfg.solver.t_max = 5.0;
            cfg
        }
        Preset::Fig4 => {
            let mut cfg = RunConfig::new(Task::Limit, SystemConfig::new(Family::HarmonicNearest));
            cfg.sweep = sweep("c", grid(0.05, 0.05, 9));
            cfg.solver.m = 10;
            cfg.solver.s = 3;
            cfg
        }
        Preset::Fig5 => {
            let mut system = SystemConfig::new(Family::SpinXx);
            system.j = Some(1.0);
            system.b = Some(1.9);
            let mut cfg = RunConfig::new(Task::Negativity, system);
            cfg.n_values = vec![4, 6, 8, 10, 12];
            cfg.temperatures = vec![2.0, 2.6];
            cfg.partitions = partitions(&["e:o", "h:h"]);
            cfg
        }
        Preset::Fig6 => {
            let mut system = SystemConfig::new(Family::SpinXx);
            system.b = Some(1.9);
            system.n = Some(10);
            let mut cfg = RunConfig::new(Task::Phase, system);
            cfg.sweep = sweep("j", grid(0.25, 0.25, 8));
            cfg.partitions = partitions(&["e:o", "h:h", "1:n-1"]);
            cfg.solver.t_max = 20.0;
            cfg
        }
        Preset::Fig7 => {
            let mut system = SystemConfig::new(Family::SpinXx);
            system.j = Some(1.0);
            system.n = Some(10);
            let mut cfg = RunConfig::new(Task::Sweep, system);
            cfg.sweep = sweep("b", grid(0.0, 0.05, 61));
            cfg.temperatures = vec![0.1];
            cfg.partitions = partitions(&["e:o", "h:h"]);
            cfg
        }
        Preset::Fig8 => {
            let mut system = SystemConfig::new(Family::SpinXx);
            system.j = Some(1.0);
            system.b = Some(2.3);
            system.n = Some(10);
            let mut cfg = RunConfig::new(Task::Certify, system);
            cfg.window = WindowConfig {
                t_min: 0.5,
                t_max: 6.0,
                points: 256,
            };
            cfg
        }
        Preset::Custom => return None,
    };
    cfg.preset = preset;
    Some(cfg)
}

/// Choices a preset makes that its figure does not state.
pub fn grid_notes(preset: Preset) -> &'static [&'static str] {
    match preset {
        Preset::Fig1 => &["n grid 8..512 doubling", "half-half evaluated at offset 0"],
        Preset::Fig2 => &[
            "c grid 0.05..0.45 step 0.05",
            "threshold bracket [0.002, 2], tolerance 1e-5",
            "the size inset is a size-sweep task with n_values",
        ],
        Preset::Fig3 => &["mu grid 0.2..2.0 step 0.2", "threshold bracket [0.005, 5], tolerance 1e-5"],
        Preset::Fig4 => &["c grid 0.05..0.45 step 0.05"],
        Preset::Fig5 => &["n grid 4..12 step 2", "half-half evaluated at offset 0"],
        Preset::Fig6 => &[
            "J grid 0.25..2.0 step 0.25",
            "threshold bracket [0.02, 20], tolerance 1e-5",
            "periodic boundary conditions",
            "the size inset is a size-sweep task with n_values",
        ],
        Preset::Fig7 => &["B grid 0..3 step 0.05", "periodic boundary conditions"],
        Preset::Fig8 => &["256 log-spaced probes on [0.5, 6]", "periodic boundary conditions"],
        Preset::Custom => &[],
    }
}
