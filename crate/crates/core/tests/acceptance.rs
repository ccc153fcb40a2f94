//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::f64::consts::PI;
use std::time::Instant;

use boundent::limit::{
    halfhalf_ppt_sufficient_finite, threshold_even_odd_limit, threshold_halfhalf_upper,
};
use boundent::negativity::{log_negativity, log_negativity_even_odd_analytic};
use boundent::partition::{Partition, PartitionKind};
use boundent::potential::Potential;
use boundent::scan::{
    area_law_probe, certify_bound_window, log_grid, threshold_temperature, HarmonicMethod,
    ModelFamily, ThermalSystem, NEGATIVITY_FLOOR, WINDOW_PROBE_POINTS,
};
use boundent::special::hurwitz_zeta;
use boundent::spin::{negativity, partial_transpose_matrix, DensityMatrix, SpinModel, SpinSystem};
use boundent::thermal::GaussianThermalSpec;
use boundent::Result;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

fn spec(n: usize, c: f64, t: f64) -> Result<GaussianThermalSpec> {
    GaussianThermalSpec::new(Potential::nearest(n, c)?, t)
}

fn harmonic(n: usize, c: f64) -> Result<ThermalSystem> {
    Ok(ThermalSystem::harmonic(Potential::nearest(n, c)?))
}

fn spin_xx(n: usize, j: f64, b: f64) -> Result<ThermalSystem> {
    Ok(ThermalSystem::spin(SpinSystem::new(n, SpinModel::Xx { j, b })?))
}

fn analytic_matches_dense() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut entangled = 0;
    for n in [8, 16, 64, 256] {
        for c in [0.1, 0.3, 0.45] {
            for t in [0.0, 0.2, 0.5] {
                let s = spec(n, c, t)?;
                let dense = log_negativity(&s, &Partition::even_odd(n)?)?.value;
                let closed = log_negativity_even_odd_analytic(&s)?.value;
                let scale = dense.abs().max(closed.abs());
                if scale > 0.0 {
                    entangled += 1;
                    worst = worst.max((dense - closed).abs() / scale);
                }
            }
        }
    }
    outcome(
        worst < 1e-8,
        format!("max relative difference {worst:.2e} over 36 points ({entangled} entangled)"),
    )
}

fn threshold_size_independence() -> Result<Outcome> {
    let exact = threshold_even_odd_limit(0.3)?;
    let mut found = Vec::new();
    for n in [16, 64, 256, 800] {
        let sys = harmonic(n, 0.3)?.with_method(HarmonicMethod::Dense);
        found.push(threshold_temperature(&sys, &Partition::even_odd(n)?, 2.0, 1e-6)?);
    }
    let lo = found.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = found.iter().copied().fold(0.0, f64::max);
    let off = found.iter().map(|t| (t - exact).abs()).fold(0.0, f64::max);
    outcome(
        hi - lo < 1e-3 && off < 1e-3,
        format!("T_eo over n = 16..800: {found:.6?}; spread {:.1e}; root {exact:.6}", hi - lo),
    )
}

fn harmonic_window() -> Result<Outcome> {
    let n = 256;
    let warm = spec(n, 0.4, 0.45)?;
    let eo_warm = log_negativity(&warm, &Partition::even_odd(n)?)?.value;
    let mut hh_warm: f64 = 0.0;
    for offset in 0..n / 2 {
        hh_warm = hh_warm.max(log_negativity(&warm, &Partition::half_half(n, offset)?)?.value);
    }
    let cold = spec(n, 0.4, 0.35)?;
    let eo_cold = log_negativity(&cold, &Partition::even_odd(n)?)?.value;
    let hh_cold = log_negativity(&cold, &Partition::half_half(n, 0)?)?.value;
    outcome(
        hh_warm <= NEGATIVITY_FLOOR
            && eo_warm > NEGATIVITY_FLOOR
            && eo_cold > NEGATIVITY_FLOOR
            && hh_cold > NEGATIVITY_FLOOR,
        format!(
            "T=0.45: e:o {eo_warm:.4}, max h:h over {} cuts {hh_warm:.1e}; T=0.35: e:o {eo_cold:.4}, h:h {hh_cold:.4}",
            n / 2
        ),
    )
}

fn area_laws() -> Result<Outcome> {
    let sizes = [32, 64, 128, 256, 512];
    let family = ModelFamily::HarmonicNearest;
    let eo = area_law_probe(&family, 0.4, 0.35, &sizes, PartitionKind::EvenOdd)?;
    let hh = area_law_probe(&family, 0.4, 0.35, &sizes, PartitionKind::HalfHalf { offset: 0 })?;
    outcome(
        eo.r_squared > 0.999 && hh.saturation < 1e-3,
        format!(
            "e:o slope {:.5}, R² = {:.9}; h:h |E(512) - E(256)| = {:.1e}",
            eo.slope, eo.r_squared, hh.saturation
        ),
    )
}

fn limit_soundness() -> Result<Outcome> {
    let mut lines = Vec::new();
    let mut pass = true;
    for i in 0..9 {
        let c = 0.05 + 0.05 * i as f64;
        let upper = threshold_halfhalf_upper(c, 10, 3)?;
        let eo = threshold_even_odd_limit(c)?;
        let finite = threshold_temperature(&harmonic(800, c)?, &Partition::half_half(800, 0)?, 2.0, 1e-5)?;
        pass &= upper >= finite && upper < eo;
        lines.push(format!("c={c:.2}: {finite:.4} <= {upper:.4} < {eo:.4}"));
    }
    outcome(pass, lines.join("; "))
}

fn finite_condition_soundness() -> Result<Outcome> {
    let n = 64;
    let (mut certified, mut counterexamples) = (0, 0);
    for i in 0..20 {
        let c = 0.02 + 0.47 * i as f64 / 19.0;
        let pot = std::sync::Arc::new(Potential::nearest(n, c)?);
        for k in 0..20 {
            let t = 0.05 + 0.95 * k as f64 / 19.0;
            let s = GaussianThermalSpec::new(pot.clone(), t)?;
            if halfhalf_ppt_sufficient_finite(&s)? {
                certified += 1;
                if log_negativity(&s, &Partition::half_half(n, 0)?)?.value > NEGATIVITY_FLOOR {
                    counterexamples += 1;
                }
            }
        }
    }
    outcome(
        counterexamples == 0 && certified > 0,
        format!("{certified} of 400 points certified PPT, {counterexamples} counterexamples"),
    )
}

fn spin_window() -> Result<Outcome> {
    let n = 10;
    let sys = spin_xx(n, 1.0, 1.9)?;
    let state = sys.prepare(2.6)?;
    let eo = state.negativity(&Partition::even_odd(n)?)?;
    let mut hh: f64 = 0.0;
    for offset in 0..n {
        hh = hh.max(state.negativity(&Partition::half_half(n, offset)?)?);
    }
    let window = certify_bound_window(&spin_xx(n, 1.0, 2.3)?, &log_grid(0.5, 6.0, WINDOW_PROBE_POINTS))?;
    let close = (window.t_low - 2.5).abs() <= 0.2 && (window.t_high - 3.2).abs() <= 0.2;
    outcome(
        eo > NEGATIVITY_FLOOR && hh <= NEGATIVITY_FLOOR && close && window.pair_coverage,
        format!(
            "B=1.9, T=2.6: e:o {eo:.4}, max h:h {hh:.1e}; B=2.3 window ({:.4}, {:.4})",
            window.t_low, window.t_high
        ),
    )
}

fn spin_ordering() -> Result<Outcome> {
    let tol = 1e-5;
    let mut pass = true;
    let mut lines = Vec::new();
    for j in [0.25, 0.5, 1.0, 1.5, 2.0] {
        let sys = spin_xx(10, j, 1.9)?;
        let t_max = 10.0 * j;
        let hh = threshold_temperature(&sys, &Partition::half_half(10, 0)?, t_max, tol)?;
        let one = threshold_temperature(&sys, &Partition::one_vs_rest(10, 0)?, t_max, tol)?;
        let eo = threshold_temperature(&sys, &Partition::even_odd(10)?, t_max, tol)?;
        pass &= hh <= one && one <= eo;
        lines.push(format!("J={j}: {hh:.4} <= {one:.4} <= {eo:.4}"));
    }
    let mut gaps = Vec::new();
    for n in [8, 10, 12] {
        let sys = spin_xx(n, 1.0, 1.9)?;
        let hh = threshold_temperature(&sys, &Partition::half_half(n, 0)?, 10.0, tol)?;
        let eo = threshold_temperature(&sys, &Partition::even_odd(n)?, 10.0, tol)?;
        gaps.push(eo - hh);
    }
    let lo = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = gaps.iter().copied().fold(0.0, f64::max);
    let variation = (hi - lo) / hi;
    pass &= variation < 0.25;
    lines.push(format!("gaps n=8,10,12: {gaps:.4?} (variation {:.1}%)", 100.0 * variation));
    outcome(pass, lines.join("; "))
}

fn oracle_suites() -> Result<Outcome> {
    let mut failures = Vec::new();

    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bell = DensityMatrix::from_pure_state(2, &[s, 0.0, 0.0, s])?;
    let ev = bell.partial_transpose_eigenvalues(&Partition::one_vs_rest(2, 0)?)?;
    if ev.iter().zip([-0.5, 0.5, 0.5, 0.5]).any(|(a, b)| (a - b).abs() > 1e-14) {
        failures.push(format!("Bell spectrum {ev:?}"));
    }

    let zeta = hurwitz_zeta(2.0, 1.0);
    if (zeta - PI * PI / 6.0).abs() > 1e-12 {
        failures.push(format!("zeta(2,1) = {zeta}"));
    }

    let n = 8;
    let mut cuts = vec![
        Partition::even_odd(n)?,
        Partition::one_vs_rest(n, 3)?,
        Partition::contiguous(n, 2)?,
    ];
    cuts.extend((0..n).map(|o| Partition::half_half(n, o)).collect::<Result<Vec<_>>>()?);
    let decoupled = [harmonic(n, 0.0)?, spin_xx(n, 0.0, 1.3)?];
    for sys in &decoupled {
        for t in [0.0, 0.1, 0.5, 2.0, 50.0] {
            let state = sys.prepare(t)?;
            for part in &cuts {
                let v = state.negativity(part)?;
                if v != 0.0 {
                    failures.push(format!("decoupled {} at T={t}: {v:e}", part.kind()));
                }
            }
        }
    }

    let rho = SpinSystem::new(8, SpinModel::Xx { j: 1.0, b: 0.4 })?.thermal_state(0.7)?.to_dense();
    for part in &cuts {
        let twice = partial_transpose_matrix(&partial_transpose_matrix(&rho, part.mask_a()), part.mask_a());
        if twice != rho {
            failures.push(format!("double transpose over {}", part.kind()));
        }
    }
    let bell_neg = negativity(&bell, &Partition::one_vs_rest(2, 0)?)?;
    if (bell_neg - 0.5).abs() > 1e-14 {
        failures.push(format!("Bell negativity {bell_neg}"));
    }

    let pass = failures.is_empty();
    let detail = if pass {
        "Bell transpose, zeta(2,1), decoupled negativities, double transpose".to_string()
    } else {
        failures.join("; ")
    };
    outcome(pass, detail)
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 9] = [
        ("analytic and dense even-odd log-negativity agree", analytic_matches_dense),
        ("even-odd threshold is size independent", threshold_size_independence),
        ("harmonic bound-entanglement window at c=0.4, n=256", harmonic_window),
        ("area law: even-odd linear, half-half saturating", area_laws),
        ("macroscopic-limit bound is sound and leaves a window", limit_soundness),
        ("finite-ring sufficient condition has no counterexamples", finite_condition_soundness),
        ("spin bound-entanglement window", spin_window),
        ("spin threshold ordering and gap trend", spin_ordering),
        ("oracle property suites", oracle_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        let (pass, detail) = match result {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {tag} {name} [{secs:.1}s] {detail}", i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
