//! Macroscopic (`n → ∞`) limit of the nearest-neighbour ring.
//!
//! As `n` grows the circulant `ω±` approach Toeplitz operators with symbols
//!
//! ```text
//! d±(x) = (1 - 2c cos x)^{±1/2} tanh(√(1 - 2c cos x) / 2T),
//! ```
//!
//! whose Fourier coefficients `v±_l` are the matrix entries. The even-odd
//! cut becomes entangled exactly when `f(0) > 1`, which fixes `T^{e:o}`
//! independently of `n`, and its log-negativity grows linearly with a
//! density given by an integral over the Brillouin zone.
//!
//! For the half-half cut only a sufficient PPT condition is available,
//!
//! ```text
//! λ_min[W]^{-2} + 2 r(X ω⁺) < 1,
//! ```
//!
//! with `X` the off-diagonal blocks of `ω⁻`. Bounding the spectral radius by
//! max-row-sum norms, truncating the coefficient sums at order `m` and
//! bounding the remainder by `s`-fold integration by parts gives
//!
//! ```text
//! 2 (S⁺_m + C⁺_s ζ(s, m+1) / π) (S⁻_m + C⁻_s ζ(s, m+1) / 2π) + λ_min[W]^{-2} < 1.
//! ```

use std::f64::consts::PI;
use nalgebra::DMatrix;
use rustfft::{num_complex::Complex, FftPlanner};

use crate::error::{Error, Result};
use crate::negativity::even_odd_symbol;
use crate::potential::sorted_symmetric_eigenvalues;
use crate::special::hurwitz_zeta;
use crate::thermal::{thermal_factor, GaussianThermalSpec};

/// Largest trapezoidal grid tried before giving up.
pub const MAX_QUADRATURE_POINTS: usize = 1 << 18;
/// Successive grid doublings must agree to this (absolute) accuracy.
pub const QUADRATURE_TOLERANCE: f64 = 1e-12;
/// Temperature bracket shared by all threshold searches.
pub const T_BRACKET: (f64, f64) = (1e-4, 50.0);

/// Which of the two symbols `d⁺` / `d⁻`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// Parameters of the half-half sufficient condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitParams {
    pub c: f64,
    pub t: f64,
    /// Order of the explicit partial sums.
    pub m: usize,
    /// Number of integrations by parts in the remainder bound.
    pub s: u32,
}

impl LimitParams {
    pub const DEFAULT_M: usize = 10;
    pub const DEFAULT_S: u32 = 3;

    pub fn new(c: f64, t: f64) -> Self {
        Self {
            c,
            t,
            m: Self::DEFAULT_M,
            s: Self::DEFAULT_S,
        }
    }

    pub fn with_orders(mut self, m: usize, s: u32) -> Self {
        self.m = m;
        self.s = s;
        self
    }
}

fn check_coupling(c: f64) -> Result<()> {
    if !(0.0..0.5).contains(&c) {
        return Err(Error::CouplingOutOfRange { c });
    }
    Ok(())
}

fn check_positive_temperature(t: f64) -> Result<()> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::BadTemperature { t });
    }
    Ok(())
}

/// The symbol `d±(x)`.
pub fn d_pm(x: f64, c: f64, t: f64, branch: Branch) -> f64 {
    let lambda = 1.0 - 2.0 * c * x.cos();
    let tanh = thermal_factor(lambda, t);
    match branch {
        Branch::Plus => lambda.sqrt() * tanh,
        Branch::Minus => tanh / lambda.sqrt(),
    }
}

/// Fourier coefficients `v_l` (`l = 0..len`) of one symbol, converged by
/// grid doubling.
#[derive(Debug, Clone)]
pub struct SymbolSpectrum {
    coefficients: Vec<f64>,
    grid_points: usize,
}

fn trapezoid_coefficients(
    planner: &mut FftPlanner<f64>,
    c: f64,
    t: f64,
    branch: Branch,
    points: usize,
) -> Vec<f64> {
    let mut buffer: Vec<Complex<f64>> = (0..points)
        .map(|j| {
            let x = 2.0 * PI * j as f64 / points as f64;
            Complex::new(d_pm(x, c, t, branch), 0.0)
        })
        .collect();
    planner.plan_fft_forward(points).process(&mut buffer);
    // the symbol is real and even, so the transform is real
    buffer[..points / 2]
        .iter()
        .map(|z| z.re / points as f64)
        .collect()
}

impl SymbolSpectrum {
    /// Coefficients with at least `min_len` entries.
    pub fn compute(c: f64, t: f64, branch: Branch, min_len: usize) -> Result<Self> {
        check_coupling(c)?;
        check_positive_temperature(t)?;
        let mut planner = FftPlanner::new();
        let mut points = (2 * min_len).next_power_of_two().max(64);
        let mut previous = trapezoid_coefficients(&mut planner, c, t, branch, points);
        while points < MAX_QUADRATURE_POINTS {
            points *= 2;
            let current = trapezoid_coefficients(&mut planner, c, t, branch, points);
            let diff = previous
                .iter()
                .zip(&current)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            if diff < QUADRATURE_TOLERANCE {
                return Ok(Self {
                    coefficients: current,
                    grid_points: points,
                });
            }
            previous = current;
        }
        Err(Error::QuadratureNoConvergence {
            max_points: MAX_QUADRATURE_POINTS,
        })
    }

    /// `v_l` for `l = 0..self.len()`; `v_{-l} = v_l`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn grid_points(&self) -> usize {
        self.grid_points
    }

    /// Smallest `L` with `Σ_{l>L} |v_l| < rel · Σ_l |v_l|`.
    fn truncation(&self, rel: f64) -> usize {
        let total: f64 = self.coefficients.iter().map(|v| v.abs()).sum();
        let mut tail = 0.0;
        for l in (0..self.coefficients.len()).rev() {
            tail += self.coefficients[l].abs();
            if tail >= rel * total {
                return l;
            }
        }
        0
    }
}

/// Fourier coefficient `v±_l = (1/2π) ∫ d±(x) e^{ixl} dx`.
pub fn fourier_coeff(l: usize, c: f64, t: f64, branch: Branch) -> Result<f64> {
    Ok(SymbolSpectrum::compute(c, t, branch, l + 1)?.coefficients[l])
}

/// Partial sums `S⁺_m = Σ_{|l|≤m} |v⁺_l|` and `S⁻_m = Σ_{l=1}^{m} |v⁻_l|`.
pub fn partial_sums(c: f64, t: f64, m: usize) -> Result<(f64, f64)> {
    let plus = SymbolSpectrum::compute(c, t, Branch::Plus, m + 1)?;
    let minus = SymbolSpectrum::compute(c, t, Branch::Minus, m + 1)?;
    Ok(partial_sums_from(&plus, &minus, m))
}

fn partial_sums_from(plus: &SymbolSpectrum, minus: &SymbolSpectrum, m: usize) -> (f64, f64) {
    let vp = plus.coefficients();
    let vm = minus.coefficients();
    let s_plus = vp[0].abs() + 2.0 * vp[1..=m].iter().map(|v| v.abs()).sum::<f64>();
    let s_minus = vm[1..=m].iter().map(|v| v.abs()).sum();
    (s_plus, s_minus)
}

/// `C±_s = ∫₀^{2π} |d^s/dx^s d±(x)| dx` from the spectrally differentiated
/// Fourier series.
pub fn derivative_bound(c: f64, t: f64, s: u32, branch: Branch) -> Result<f64> {
    let spectrum = SymbolSpectrum::compute(c, t, branch, 64)?;
    Ok(derivative_bound_from(&spectrum, s))
}

fn derivative_bound_from(spectrum: &SymbolSpectrum, s: u32) -> f64 {
    if s == 0 {
        // not used by the bound, but keep the definition total
        let v = spectrum.coefficients();
        return 2.0 * PI * (v[0].abs());
    }
    let cutoff = spectrum.truncation(1e-10).max(1);
    let points = (16 * cutoff).next_power_of_two().max(1 << 16);
    // d^{(s)}(x) = Re Σ_{l≥1} 2 v_l l^s i^s e^{ilx}
    let phase = match s % 4 {
        0 => Complex::new(1.0, 0.0),
        1 => Complex::new(0.0, 1.0),
        2 => Complex::new(-1.0, 0.0),
        _ => Complex::new(0.0, -1.0),
    };
    let mut buffer = vec![Complex::new(0.0, 0.0); points];
    for (l, v) in spectrum
        .coefficients()
        .iter()
        .enumerate()
        .take(cutoff + 1)
        .skip(1)
    {
        buffer[l] = phase * (2.0 * v * (l as f64).powi(s as i32));
    }
    FftPlanner::new()
        .plan_fft_inverse(points)
        .process(&mut buffer);
    buffer.iter().map(|z| z.re.abs()).sum::<f64>() * 2.0 * PI / points as f64
}

/// Smallest eigenvalue of `W(T)` on the infinite ring,
/// `(e^{√(1+2c)/T} + 1) / (e^{√(1+2c)/T} - 1) = coth(√(1+2c) / 2T)`.
pub fn lambda_min_w(c: f64, t: f64) -> f64 {
    1.0 / thermal_factor(1.0 + 2.0 * c, t)
}

/// Terms of the half-half sufficient condition at one `(c, T)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfHalfBound {
    pub s_plus: f64,
    pub s_minus: f64,
    pub c_plus: f64,
    pub c_minus: f64,
    pub zeta: f64,
    /// Upper bound on `‖ω⁺‖`.
    pub omega_norm_bound: f64,
    /// Upper bound on `‖X‖`.
    pub x_norm_bound: f64,
    pub lambda_min_w: f64,
    /// Left-hand side; the cut is PPT when it is below one.
    pub lhs: f64,
}

impl HalfHalfBound {
    pub fn evaluate(params: &LimitParams) -> Result<Self> {
        check_coupling(params.c)?;
        check_positive_temperature(params.t)?;
        if params.m == 0 || params.s < 2 {
            return Err(Error::InvalidArgument(format!(
                "need m ≥ 1 and s ≥ 2, got m = {}, s = {}",
                params.m, params.s
            )));
        }
        let min_len = params.m + 1;
        let plus = SymbolSpectrum::compute(params.c, params.t, Branch::Plus, min_len)?;
        let minus = SymbolSpectrum::compute(params.c, params.t, Branch::Minus, min_len)?;
        let (s_plus, s_minus) = partial_sums_from(&plus, &minus, params.m);
        let c_plus = derivative_bound_from(&plus, params.s);
        let c_minus = derivative_bound_from(&minus, params.s);
        let zeta = hurwitz_zeta(params.s as f64, (params.m + 1) as f64);
        let omega_norm_bound = s_plus + c_plus * zeta / PI;
        let x_norm_bound = s_minus + c_minus * zeta / (2.0 * PI);
        let lambda_min_w = lambda_min_w(params.c, params.t);
        let lhs = 2.0 * omega_norm_bound * x_norm_bound + lambda_min_w.powi(-2);
        Ok(Self {
            s_plus,
            s_minus,
            c_plus,
            c_minus,
            zeta,
            omega_norm_bound,
            x_norm_bound,
            lambda_min_w,
            lhs,
        })
    }
}

/// True when the macroscopic-limit bound certifies a PPT half-half cut.
pub fn halfhalf_ppt_sufficient_limit(params: &LimitParams) -> Result<bool> {
    Ok(HalfHalfBound::evaluate(params)?.lhs < 1.0)
}

/// Log-spaced scan points over the shared bracket.
fn bracket_scan(points: usize) -> Vec<f64> {
    let (lo, hi) = T_BRACKET;
    let ratio = (hi / lo).ln();
    (0..points)
        .map(|i| lo * (ratio * i as f64 / (points - 1) as f64).exp())
        .collect()
}

/// Upper bound on the half-half threshold: the lowest `T` above which the
/// sufficient condition holds, to within `1e-6`.
///
/// The bracket is scanned and the last transition from "fails" to "holds"
/// is refined by bisection, so a left side that is not monotone in `T`
/// cannot produce a spurious early crossing.
pub fn threshold_halfhalf_upper(c: f64, m: usize, s: u32) -> Result<f64> {
    check_coupling(c)?;
    if c == 0.0 {
        // X = 0 and λ_min[W]^{-2} = tanh² < 1 for every T > 0
        return Ok(0.0);
    }
    let holds = |t: f64| halfhalf_ppt_sufficient_limit(&LimitParams::new(c, t).with_orders(m, s));
    let grid = bracket_scan(64);
    let verdicts = grid.iter().map(|&t| holds(t)).collect::<Result<Vec<bool>>>()?;
    if !verdicts[verdicts.len() - 1] {
        return Err(Error::NoCrossing { t_max: T_BRACKET.1 });
    }
    let Some(last_fail) = verdicts.iter().rposition(|&v| !v) else {
        return Ok(grid[0]);
    };
    let (mut lo, mut hi) = (grid[last_fail], grid[last_fail + 1]);
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if holds(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `T^{e:o}` on the infinite ring: root of `f(0, c, T) = 1`, to `1e-8`.
///
/// Returns zero for `c = 0`, where the even-odd cut is never entangled.
pub fn threshold_even_odd_limit(c: f64) -> Result<f64> {
    check_coupling(c)?;
    if c == 0.0 {
        return Ok(0.0);
    }
    let excess = |t: f64| even_odd_symbol(0.0, c, t) - 1.0;
    let (mut lo, mut hi) = T_BRACKET;
    if excess(lo) <= 0.0 || excess(hi) > 0.0 {
        return Err(Error::NoCrossing { t_max: hi });
    }
    while hi - lo > 1e-8 {
        let mid = 0.5 * (lo + hi);
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// Even-odd log-negativity per oscillator on the infinite ring,
/// `(1/π) ∫₀^{x̄} log₂ f(x) dx`, where `x̄` is the crossing `f(x̄) = 1`.
///
/// The two mirror branches `x` and `2π - x` are both counted, so
/// `n · density` approximates the finite-ring sum over all `n` modes.
pub fn logneg_density_limit(c: f64, t: f64) -> Result<f64> {
    check_coupling(c)?;
    if !t.is_finite() || t < 0.0 {
        return Err(Error::BadTemperature { t });
    }
    if c == 0.0 || even_odd_symbol(0.0, c, t) <= 1.0 {
        return Ok(0.0);
    }
    let x_bar = crossing_angle(c, t);
    let integrand = |x: f64| even_odd_symbol(x, c, t).log2().max(0.0);
    Ok(adaptive_simpson(&integrand, 0.0, x_bar, 1e-13) / PI)
}

/// `x̄(c, T)` with `f(x̄) = 1`; `f` decreases on `[0, π]`.
pub fn crossing_angle(c: f64, t: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, PI);
    if even_odd_symbol(hi, c, t) > 1.0 {
        return PI;
    }
    if even_odd_symbol(lo, c, t) <= 1.0 {
        return 0.0;
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if even_odd_symbol(mid, c, t) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `X`: the blocks of `ω⁻` coupling the first half `0..n/2` to the second
/// half, zero elsewhere.
pub fn half_split_coupling(spec: &GaussianThermalSpec) -> DMatrix<f64> {
    let n = spec.n();
    let (omega_minus, _) = spec.omega_matrices();
    DMatrix::from_fn(n, n, |i, j| {
        if (i < n / 2) != (j < n / 2) {
            omega_minus[(i, j)]
        } else {
            0.0
        }
    })
}

/// Maximum absolute row sum `‖A‖_∞`.
pub fn max_row_sum(m: &DMatrix<f64>) -> f64 {
    m.row_iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Finite-ring sufficient condition `λ_min[W]^{-2} + 2 r(X ω⁺) < 1` for a
/// PPT half-half cut.
pub fn halfhalf_ppt_sufficient_finite(spec: &GaussianThermalSpec) -> Result<bool> {
    Ok(halfhalf_finite_lhs(spec)? < 1.0)
}

/// Left side of the finite-ring sufficient condition.
///
/// `X ω⁺` is similar to the symmetric `(ω⁺)^{1/2} X (ω⁺)^{1/2}`, so the
/// spectral radius comes from a symmetric eigensolver.
pub fn halfhalf_finite_lhs(spec: &GaussianThermalSpec) -> Result<f64> {
    let (_, dp) = spec.mode_weights();
    if dp.iter().any(|v| !v.is_finite()) {
        return Err(Error::GaplessAtZeroT);
    }
    let root: Vec<f64> = dp.iter().map(|v| v.max(0.0).sqrt()).collect();
    let s = spec.potential().matrix_function_from_values(&root);
    let x = half_split_coupling(spec);
    let mut sym = &s * x * &s;
    crate::potential::symmetrize(&mut sym);
    let radius = sorted_symmetric_eigenvalues(sym)
        .iter()
        .map(|v| v.abs())
        .fold(0.0, f64::max);
    let lambda_min = spec
        .thermal_weights()
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Ok(lambda_min.powi(-2) + 2.0 * radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::Potential;
    use crate::thermal::d_minus;
    use approx::assert_relative_eq;

    fn nearest_spec(n: usize, c: f64, t: f64) -> Result<GaussianThermalSpec> {
        GaussianThermalSpec::new(Potential::nearest(n, c)?, t)
    }

    #[test]
    fn decoupled_symbol_is_constant() {
        let t = 0.4;
        for x in [0.0, 1.0, 3.0, 5.5] {
            assert_relative_eq!(d_pm(x, 0.0, t, Branch::Plus), (1.25f64).tanh(), epsilon = 1e-15);
            assert_relative_eq!(d_pm(x, 0.0, t, Branch::Minus), (1.25f64).tanh(), epsilon = 1e-15);
        }
        let v = SymbolSpectrum::compute(0.0, t, Branch::Minus, 8).unwrap();
        assert_relative_eq!(v.coefficients()[0], (1.25f64).tanh(), epsilon = 1e-15);
        assert!(v.coefficients()[1..].iter().all(|c| c.abs() < 1e-15));
    }

    #[test]
    fn symbol_endpoints() {
        let (c, t): (f64, f64) = (0.3, 0.3);
        let root = (1.0 - 2.0 * c).sqrt();
        assert_relative_eq!(
            d_pm(0.0, c, t, Branch::Plus),
            root * (root / (2.0 * t)).tanh(),
            epsilon = 1e-15
        );
        // cos(π/2) = 0 so Λ = 1
        assert_relative_eq!(
            d_pm(PI / 2.0, c, t, Branch::Minus),
            d_minus(1.0, t),
            epsilon = 1e-15
        );
        for x in [0.3, 1.1, 2.9] {
            assert_relative_eq!(
                d_pm(PI - x, c, t, Branch::Plus),
                d_pm(PI + x, c, t, Branch::Plus),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn coefficients_decay_geometrically() {
        let v = SymbolSpectrum::compute(0.3, 0.3, Branch::Minus, 40).unwrap();
        let c = v.coefficients();
        for l in 4..13 {
            assert!(c[l + 1].abs() > 1e-12);
            assert!(c[l + 1].abs() / c[l].abs() < 1.0);
        }
    }

    #[test]
    fn lambda_min_closed_forms() {
        assert_relative_eq!(lambda_min_w(0.0, 0.5), 1.0 / 1.0f64.tanh(), epsilon = 1e-15);
        assert_relative_eq!(lambda_min_w(0.0, 0.5), 1.3130352854993312, epsilon = 1e-15);
        assert_eq!(lambda_min_w(0.3, 1e-9), 1.0);
        assert_eq!(lambda_min_w(0.3, 1e-3), 1.0);
        let e = ((1.0 + 2.0 * 0.3f64).sqrt() / 0.4).exp();
        assert_relative_eq!(lambda_min_w(0.3, 0.4), (e + 1.0) / (e - 1.0), epsilon = 1e-14);
    }

    #[test]
    fn decoupled_partial_sums_and_bounds() {
        let (sp, sm) = partial_sums(0.0, 0.6, 10).unwrap();
        assert_relative_eq!(sp, (1.0 / 1.2f64).tanh(), epsilon = 1e-14);
        assert!(sm < 1e-14);
        for s in 2..=4 {
            assert!(derivative_bound(0.0, 0.6, s, Branch::Plus).unwrap() < 1e-10);
        }
        assert!(halfhalf_ppt_sufficient_limit(&LimitParams::new(0.0, 5.0)).unwrap());
        assert_eq!(threshold_halfhalf_upper(0.0, 10, 3).unwrap(), 0.0);
    }

    #[test]
    fn partial_sums_grow_with_order() {
        let mut last = (0.0, 0.0);
        for m in 1..20 {
            let (sp, sm) = partial_sums(0.4, 0.5, m).unwrap();
            assert!(sp >= last.0 && sm >= last.1);
            last = (sp, sm);
        }
    }

    #[test]
    fn even_odd_limit_threshold() {
        assert_eq!(threshold_even_odd_limit(0.0).unwrap(), 0.0);
        let t = threshold_even_odd_limit(0.4).unwrap();
        assert!((t - 0.54).abs() < 0.01, "{t}");
        assert_relative_eq!(even_odd_symbol(0.0, 0.4, t), 1.0, epsilon = 1e-7);
        assert!(threshold_even_odd_limit(0.49).unwrap() > t);
        assert!(threshold_even_odd_limit(0.5).is_err());
    }

    #[test]
    fn density_vanishes_outside_the_entangled_region() {
        assert_eq!(logneg_density_limit(0.0, 0.1).unwrap(), 0.0);
        let t_eo = threshold_even_odd_limit(0.3).unwrap();
        assert_eq!(logneg_density_limit(0.3, t_eo + 1e-3).unwrap(), 0.0);
        assert!(logneg_density_limit(0.3, t_eo - 1e-2).unwrap() > 0.0);
        assert!(logneg_density_limit(0.3, 0.0).unwrap() > 0.0);
    }

    #[test]
    fn finite_condition_for_decoupled_chain() {
        let spec = nearest_spec(16, 0.0, 0.7).unwrap();
        assert!(half_split_coupling(&spec).amax() < 1e-15);
        assert!(halfhalf_ppt_sufficient_finite(&spec).unwrap());
        let cold = nearest_spec(16, 0.2, 0.0).unwrap();
        assert!(!halfhalf_ppt_sufficient_finite(&cold).unwrap());
    }

    #[test]
    fn finite_radius_matches_general_eigensolver() {
        let spec = nearest_spec(12, 0.35, 0.4).unwrap();
        let (_, omega_plus) = spec.omega_matrices();
        let oracle = (half_split_coupling(&spec) * omega_plus)
            .complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let w_min = spec.thermal_weights().into_iter().fold(f64::INFINITY, f64::min);
        let lhs = halfhalf_finite_lhs(&spec).unwrap();
        assert_relative_eq!(lhs, w_min.powi(-2) + 2.0 * oracle, max_relative = 1e-10);
    }

    #[test]
    fn bound_rejects_bad_orders() {
        let p = LimitParams::new(0.3, 0.5).with_orders(0, 3);
        assert!(HalfHalfBound::evaluate(&p).is_err());
        let p = LimitParams::new(0.3, 0.5).with_orders(10, 1);
        assert!(HalfHalfBound::evaluate(&p).is_err());
    }
}
