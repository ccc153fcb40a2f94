//! Threshold temperatures, parameter sweeps and bound-entanglement windows.
//!
//! Every sweep evaluates its grid points independently (in parallel, in a
//! fixed order) and refines crossings with a fixed bisection schedule, so
//! identical inputs give bit-identical results.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::negativity::{log_negativity, log_negativity_auto};
use crate::partition::{half_cuts_cover_all_pairs, Partition, PartitionKind};
use crate::potential::Potential;
use crate::spin::{negativity, DensityMatrix, SpinModel, SpinSystem};
use crate::thermal::{GaussianThermalSpec, ZERO_TEMPERATURE};

/// Entanglement-detection floor for both `E_l` and `E_N`.
pub const NEGATIVITY_FLOOR: f64 = 1e-10;
/// Log-spaced points in the coarse threshold scan.
pub const THRESHOLD_SCAN_POINTS: usize = 64;
/// Log-spaced probe temperatures used by default for window searches.
pub const WINDOW_PROBE_POINTS: usize = 256;
/// Absolute accuracy of refined window edges.
pub const WINDOW_EDGE_TOLERANCE: f64 = 1e-4;
/// Half-half offsets sampled per temperature on circulant rings.
pub const SAMPLED_OFFSETS: usize = 4;
/// Largest allowed spread of the sampled half-half negativities.
pub const OFFSET_SPREAD_TOLERANCE: f64 = 1e-10;

/// How harmonic negativities are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HarmonicMethod {
    /// Closed-form spectrum for even-odd cuts of circulant potentials.
    #[default]
    Auto,
    /// Always diagonalize the dense symmetrized `Q`.
    Dense,
}

/// A system whose thermal states can be prepared at any temperature.
#[derive(Debug, Clone)]
pub enum ThermalSystem {
    Harmonic {
        potential: Arc<Potential>,
        method: HarmonicMethod,
    },
    Spin(Arc<SpinSystem>),
}

/// The thermal state of a [`ThermalSystem`] at one temperature.
#[derive(Debug, Clone)]
pub enum PreparedState {
    Gaussian {
        spec: GaussianThermalSpec,
        method: HarmonicMethod,
    },
    Spin {
        state: DensityMatrix,
        /// Zero-field state with the same PPT cuts, when it differs.
        zero_field: Option<DensityMatrix>,
    },
}

impl PreparedState {
    /// `E_l` for oscillators, `E_N` for spins.
    pub fn negativity(&self, part: &Partition) -> Result<f64> {
        match self {
            PreparedState::Gaussian { spec, method } => Ok(match method {
                HarmonicMethod::Auto => log_negativity_auto(spec, part)?.value,
                HarmonicMethod::Dense => log_negativity(spec, part)?.value,
            }),
            PreparedState::Spin { state, .. } => negativity(state, part),
        }
    }

    /// Whether the cut is NPPT, i.e. the negativity exceeds
    /// [`NEGATIVITY_FLOOR`]. Spin states in a field are judged on their
    /// zero-field counterpart (see [`SpinSystem::zero_field_thermal_state`]).
    pub fn is_npt(&self, part: &Partition) -> Result<bool> {
        let value = match self {
            PreparedState::Spin {
                zero_field: Some(rho), ..
            } => negativity(rho, part)?,
            _ => self.negativity(part)?,
        };
        Ok(value > NEGATIVITY_FLOOR)
    }
}

impl ThermalSystem {
    pub fn harmonic(potential: Potential) -> Self {
        ThermalSystem::Harmonic {
            potential: Arc::new(potential),
            method: HarmonicMethod::Auto,
        }
    }

    pub fn spin(system: SpinSystem) -> Self {
        ThermalSystem::Spin(Arc::new(system))
    }

    pub fn with_method(self, method: HarmonicMethod) -> Self {
        match self {
            ThermalSystem::Harmonic { potential, .. } => ThermalSystem::Harmonic { potential, method },
            spin => spin,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            ThermalSystem::Harmonic { potential, .. } => potential.n(),
            ThermalSystem::Spin(s) => s.n(),
        }
    }

    /// True for circulant potentials and periodic spin rings.
    pub fn is_translation_invariant(&self) -> bool {
        match self {
            ThermalSystem::Harmonic { potential, .. } => potential.is_circulant(),
            ThermalSystem::Spin(s) => s.boundary() == crate::spin::Boundary::Periodic,
        }
    }

    pub fn prepare(&self, t: f64) -> Result<PreparedState> {
        match self {
            ThermalSystem::Harmonic { potential, method } => Ok(PreparedState::Gaussian {
                spec: GaussianThermalSpec::new(potential.clone(), t)?,
                method: *method,
            }),
            ThermalSystem::Spin(s) => Ok(PreparedState::Spin {
                state: s.thermal_state(t)?,
                zero_field: spin_verdict_state(s, t)?,
            }),
        }
    }

    pub fn negativity(&self, t: f64, part: &Partition) -> Result<f64> {
        self.prepare(t)?.negativity(part)
    }

    pub fn is_npt(&self, t: f64, part: &Partition) -> Result<bool> {
        match self {
            ThermalSystem::Spin(s) => {
                let rho = match spin_verdict_state(s, t)? {
                    Some(rho) => rho,
                    None => s.thermal_state(t)?,
                };
                Ok(negativity(&rho, part)? > NEGATIVITY_FLOOR)
            }
            harmonic => harmonic.prepare(t)?.is_npt(part),
        }
    }
}

/// The zero-field state when it decides PPT in place of the thermal one:
/// at `T > 0` with a nonzero field. At `T = 0` the two ground spaces differ.
fn spin_verdict_state(s: &SpinSystem, t: f64) -> Result<Option<DensityMatrix>> {
    if t > ZERO_TEMPERATURE && s.model().field() != 0.0 {
        Ok(Some(s.zero_field_thermal_state(t)?))
    } else {
        Ok(None)
    }
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![hi];
    }
    let ratio = (hi / lo).ln();
    (0..n)
        .map(|i| lo * (ratio * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// `sup{T ∈ (0, T_max] : negativity(T) > ε}`.
///
/// Scans 64 log-spaced temperatures in `[T_max/1000, T_max]` and bisects the
/// last entangled-to-separable transition down to `tol`, so negativities
/// that vanish and revive in `T` are handled. Returns 0 when the cut is
/// never entangled (including at `T = 0`).
pub fn threshold_temperature(
    system: &ThermalSystem,
    part: &Partition,
    t_max: f64,
    tol: f64,
) -> Result<f64> {
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::BadTemperature { t: t_max });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let entangled = |t: f64| system.is_npt(t, part);
    let grid = log_grid(t_max / 1000.0, t_max, THRESHOLD_SCAN_POINTS);
    let verdicts = grid
        .par_iter()
        .map(|&t| entangled(t))
        .collect::<Result<Vec<bool>>>()?;
    if verdicts[verdicts.len() - 1] {
        return Err(Error::EntangledAtMax { t_max });
    }
    let (mut lo, mut hi) = match verdicts.iter().rposition(|&v| v) {
        Some(i) => (grid[i], grid[i + 1]),
        None => {
            // the ground state may still be entangled below the grid
            match entangled(0.0) {
                Ok(true) => (0.0, grid[0]),
                Ok(false) | Err(Error::GaplessAtZeroT) => return Ok(0.0),
                Err(e) => return Err(e),
            }
        }
    };
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if entangled(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// A one-parameter model family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelFamily {
    /// Parameter: coupling `c`.
    HarmonicNearest,
    /// Parameter: `μ`.
    HarmonicNextNearest,
    /// Parameter: `J` at fixed field.
    SpinXx { b: f64 },
    /// Parameter: field `B` at fixed `J`.
    SpinXxField { j: f64 },
    /// Parameter: field `B`.
    SpinXxx,
}

impl ModelFamily {
    pub fn tag(&self) -> &'static str {
        match self {
            ModelFamily::HarmonicNearest => "harmonic-nearest",
            ModelFamily::HarmonicNextNearest => "harmonic-next-nearest",
            ModelFamily::SpinXx { .. } | ModelFamily::SpinXxField { .. } => "spin-XX",
            ModelFamily::SpinXxx => "spin-XXX",
        }
    }

    pub fn parameter_name(&self) -> &'static str {
        match self {
            ModelFamily::HarmonicNearest => "c",
            ModelFamily::HarmonicNextNearest => "mu",
            ModelFamily::SpinXx { .. } => "J",
            ModelFamily::SpinXxField { .. } | ModelFamily::SpinXxx => "B",
        }
    }

    pub fn build(&self, n: usize, parameter: f64) -> Result<ThermalSystem> {
        Ok(match *self {
            ModelFamily::HarmonicNearest => ThermalSystem::harmonic(Potential::nearest(n, parameter)?),
            ModelFamily::HarmonicNextNearest => {
                ThermalSystem::harmonic(Potential::next_nearest(n, parameter)?)
            }
            ModelFamily::SpinXx { b } => {
                ThermalSystem::spin(SpinSystem::new(n, SpinModel::Xx { j: parameter, b })?)
            }
            ModelFamily::SpinXxField { j } => {
                ThermalSystem::spin(SpinSystem::new(n, SpinModel::Xx { j, b: parameter })?)
            }
            ModelFamily::SpinXxx => ThermalSystem::spin(SpinSystem::new(n, SpinModel::Xxx { b: parameter })?),
        })
    }
}

/// Solver settings shared by sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub t_max: f64,
    pub tol: f64,
    pub method: HarmonicMethod,
}

impl ScanOptions {
    pub fn new(t_max: f64, tol: f64) -> Self {
        Self {
            t_max,
            tol,
            method: HarmonicMethod::Auto,
        }
    }

    pub fn with_method(mut self, method: HarmonicMethod) -> Self {
        self.method = method;
        self
    }
}

/// Threshold temperatures of one partition family along a parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdCurve {
    pub family: &'static str,
    pub partition: String,
    /// Name of the swept quantity (`c`, `mu`, `J`, `B` or `n`).
    pub parameter: &'static str,
    /// `(parameter, T_th)` sorted by parameter.
    pub samples: Vec<(f64, f64)>,
    pub tolerance: f64,
    pub bracket: (f64, f64),
}

fn curve(
    family: &ModelFamily,
    kind: PartitionKind,
    parameter: &'static str,
    mut samples: Vec<(f64, f64)>,
    options: &ScanOptions,
) -> ThresholdCurve {
    samples.sort_by(|a, b| a.0.total_cmp(&b.0));
    ThresholdCurve {
        family: family.tag(),
        partition: kind.tag(),
        parameter,
        samples,
        tolerance: options.tol,
        bracket: (options.t_max / 1000.0, options.t_max),
    }
}

/// One threshold curve per partition kind over a parameter grid at size `n`.
pub fn phase_diagram(
    family: &ModelFamily,
    parameters: &[f64],
    kinds: &[PartitionKind],
    n: usize,
    options: &ScanOptions,
) -> Result<Vec<ThresholdCurve>> {
    if parameters.is_empty() || kinds.is_empty() {
        return Err(Error::InvalidArgument("empty parameter grid or partition list".into()));
    }
    let partitions = kinds
        .iter()
        .map(|&k| Partition::new(k, n))
        .collect::<Result<Vec<_>>>()?;
    let rows = parameters
        .par_iter()
        .map(|&p| {
            let system = family.build(n, p)?.with_method(options.method);
            partitions
                .iter()
                .map(|part| threshold_temperature(&system, part, options.t_max, options.tol))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(kinds
        .iter()
        .enumerate()
        .map(|(i, &kind)| {
            let samples = parameters.iter().zip(&rows).map(|(&p, r)| (p, r[i])).collect();
            curve(family, kind, family.parameter_name(), samples, options)
        })
        .collect())
}

/// One threshold curve per partition kind over system sizes.
pub fn size_scan(
    family: &ModelFamily,
    parameter: f64,
    sizes: &[usize],
    kinds: &[PartitionKind],
    options: &ScanOptions,
) -> Result<Vec<ThresholdCurve>> {
    if sizes.is_empty() || kinds.is_empty() {
        return Err(Error::InvalidArgument("empty size list or partition list".into()));
    }
    if let Some(&n) = sizes.iter().find(|&&n| n % 2 != 0) {
        return Err(Error::BadSize {
            n,
            reason: "size scans need even n",
        });
    }
    let rows = sizes
        .par_iter()
        .map(|&n| {
            let system = family.build(n, parameter)?.with_method(options.method);
            kinds
                .iter()
                .map(|&k| threshold_temperature(&system, &Partition::new(k, n)?, options.t_max, options.tol))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(kinds
        .iter()
        .enumerate()
        .map(|(i, &kind)| {
            let samples = sizes.iter().zip(&rows).map(|(&n, r)| (n as f64, r[i])).collect();
            curve(family, kind, "n", samples, options)
        })
        .collect())
}

/// How the half-half offsets were covered at one probe temperature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OffsetCoverage {
    /// A few random offsets agreed to within the spread tolerance.
    Sampled,
    /// Every distinct half-half cut was evaluated.
    All,
}

/// Evidence gathered at one probe temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRecord {
    pub t: f64,
    pub even_odd: f64,
    /// Largest negativity over the half-half offsets checked.
    pub half_half_max: f64,
    pub offsets: Vec<usize>,
    pub coverage: OffsetCoverage,
    pub even_odd_npt: bool,
    /// Some checked half-half cut is NPPT.
    pub half_half_npt: bool,
}

impl ProbeRecord {
    /// Even-odd NPPT while every half-half cut is PPT.
    pub fn is_bound(&self) -> bool {
        self.even_odd_npt && !self.half_half_npt
    }
}

/// A certified temperature interval of bound entanglement.
///
/// Certification covers distillation by fully local (single-site) LOCC only.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundWindow {
    pub t_low: f64,
    pub t_high: f64,
    /// Every pair of sites is split by some half-half cut.
    pub pair_coverage: bool,
    pub probes: Vec<ProbeRecord>,
}

/// Seed of the offset sampler; fixed so windows are reproducible.
const OFFSET_SEED: u64 = 0x5eed_0ff5;

fn probe(system: &ThermalSystem, t: f64, even_odd: &Partition, seed: u64) -> Result<ProbeRecord> {
    let n = system.n();
    let state = system.prepare(t)?;
    let eo = state.negativity(even_odd)?;
    let even_odd_npt = state.is_npt(even_odd)?;
    // offsets o and o + n/2 give the same bipartition
    let distinct = n / 2;
    let evaluate = |offsets: &[usize]| -> Result<Vec<f64>> {
        offsets
            .iter()
            .map(|&o| state.negativity(&Partition::half_half(n, o)?))
            .collect()
    };
    let sampled = matches!(system, ThermalSystem::Harmonic { .. })
        && system.is_translation_invariant()
        && distinct > SAMPLED_OFFSETS;
    if sampled {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut offsets = sample(&mut rng, distinct, SAMPLED_OFFSETS).into_vec();
        offsets.sort_unstable();
        let values = evaluate(&offsets)?;
        let (lo, hi) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        if hi - lo < OFFSET_SPREAD_TOLERANCE {
            return Ok(ProbeRecord {
                t,
                even_odd: eo,
                half_half_max: hi,
                offsets,
                coverage: OffsetCoverage::Sampled,
                even_odd_npt,
                half_half_npt: hi > NEGATIVITY_FLOOR,
            });
        }
    }
    let offsets: Vec<usize> = (0..distinct).collect();
    let values = evaluate(&offsets)?;
    let half_half_npt = match state {
        PreparedState::Spin { zero_field: Some(_), .. } => {
            let mut npt = false;
            for &o in &offsets {
                if state.is_npt(&Partition::half_half(n, o)?)? {
                    npt = true;
                    break;
                }
            }
            npt
        }
        _ => values.iter().any(|&v| v > NEGATIVITY_FLOOR),
    };
    Ok(ProbeRecord {
        t,
        even_odd: eo,
        half_half_max: values.into_iter().fold(0.0, f64::max),
        offsets,
        coverage: OffsetCoverage::All,
        even_odd_npt,
        half_half_npt,
    })
}

/// Longest run of probe temperatures at which the even-odd cut is NPPT and
/// all half-half cuts are PPT, with both edges refined by bisection to
/// [`WINDOW_EDGE_TOLERANCE`].
///
/// `t_grid` must be increasing. A run touching an end of the grid keeps that
/// grid point as its edge.
pub fn certify_bound_window(system: &ThermalSystem, t_grid: &[f64]) -> Result<BoundWindow> {
    let n = system.n();
    if n % 2 != 0 || n < 4 {
        return Err(Error::BadSize {
            n,
            reason: "windows need an even ring of at least 4 sites",
        });
    }
    if !system.is_translation_invariant() {
        return Err(Error::WrongKind {
            expected: "a translation-invariant ring",
        });
    }
    if t_grid.is_empty() || t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("temperature grid must be increasing and nonempty".into()));
    }
    let even_odd = Partition::even_odd(n)?;
    let probes = t_grid
        .par_iter()
        .enumerate()
        .map(|(i, &t)| probe(system, t, &even_odd, OFFSET_SEED + i as u64))
        .collect::<Result<Vec<_>>>()?;

    // longest run; earliest wins ties
    let mut best: Option<(usize, usize)> = None;
    let mut start = None;
    for (i, p) in probes.iter().enumerate() {
        match (p.is_bound(), start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                if best.is_none_or(|(a, b)| i - s > b - a + 1) {
                    best = Some((s, i - 1));
                }
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        let end = probes.len() - 1;
        if best.is_none_or(|(a, b)| end - s > b - a) {
            best = Some((s, end));
        }
    }
    let (first, last) = best.ok_or(Error::NoWindow)?;

    let inside = |t: f64| -> Result<bool> { Ok(probe(system, t, &even_odd, OFFSET_SEED)?.is_bound()) };
    let refine = |mut outside: f64, mut within: f64| -> Result<f64> {
        while (within - outside).abs() > WINDOW_EDGE_TOLERANCE {
            let mid = 0.5 * (outside + within);
            if inside(mid)? {
                within = mid;
            } else {
                outside = mid;
            }
        }
        Ok(within)
    };
    let t_low = if first == 0 {
        t_grid[0]
    } else {
        refine(t_grid[first - 1], t_grid[first])?
    };
    let t_high = if last == probes.len() - 1 {
        t_grid[last]
    } else {
        refine(t_grid[last + 1], t_grid[last])?
    };
    if t_low >= t_high {
        return Err(Error::NoWindow);
    }
    Ok(BoundWindow {
        t_low,
        t_high,
        pair_coverage: half_cuts_cover_all_pairs(n),
        probes,
    })
}

/// Least-squares line through `(n, E)` plus a saturation statistic.
#[derive(Debug, Clone, PartialEq)]
pub struct AreaLawReport {
    pub sizes: Vec<usize>,
    pub values: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Largest residual of the fit relative to the largest value.
    pub max_relative_residual: f64,
    /// `|E(n_last) - E(n_second_to_last)|`.
    pub saturation: f64,
}

/// Negativity of one partition kind across sizes at fixed parameter and `T`.
pub fn area_law_probe(
    family: &ModelFamily,
    parameter: f64,
    t: f64,
    sizes: &[usize],
    kind: PartitionKind,
) -> Result<AreaLawReport> {
    if sizes.len() < 4 {
        return Err(Error::InvalidArgument("area-law fits need at least 4 sizes".into()));
    }
    let values = sizes
        .par_iter()
        .map(|&n| family.build(n, parameter)?.negativity(t, &Partition::new(kind, n)?))
        .collect::<Result<Vec<f64>>>()?;
    let xs: Vec<f64> = sizes.iter().map(|&n| n as f64).collect();
    let (slope, intercept) = linear_fit(&xs, &values);
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let ss_tot: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    let residuals: Vec<f64> = xs
        .iter()
        .zip(&values)
        .map(|(x, v)| v - (slope * x + intercept))
        .collect();
    let ss_res: f64 = residuals.iter().map(|r| r * r).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let max_relative_residual = if scale == 0.0 {
        0.0
    } else {
        residuals.iter().fold(0.0f64, |m, r| m.max(r.abs())) / scale
    };
    let k = values.len();
    Ok(AreaLawReport {
        sizes: sizes.to_vec(),
        saturation: (values[k - 1] - values[k - 2]).abs(),
        values,
        slope,
        intercept,
        r_squared,
        max_relative_residual,
    })
}

fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    (slope, my - slope * mx)
}
