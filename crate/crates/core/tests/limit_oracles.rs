//! Macroscopic-limit quantities checked against finite rings and
//! independent numerics.

use std::f64::consts::PI;

use boundent::limit::{
    d_pm, derivative_bound, half_split_coupling, lambda_min_w, logneg_density_limit,
    max_row_sum, partial_sums, threshold_halfhalf_upper, Branch, HalfHalfBound, LimitParams,
    SymbolSpectrum,
};
use boundent::negativity::log_negativity;
use boundent::partition::Partition;
use boundent::potential::Potential;
use boundent::special::hurwitz_zeta;
use boundent::thermal::GaussianThermalSpec;

fn nearest(n: usize, c: f64, t: f64) -> GaussianThermalSpec {
    GaussianThermalSpec::new(Potential::nearest(n, c).unwrap(), t).unwrap()
}

#[test]
fn coefficients_match_finite_first_row() {
    let n = 1024;
    let (c, t) = (0.3, 0.3);
    let (row_minus, row_plus) = nearest(n, c, t).omega_first_rows().unwrap();
    let minus = SymbolSpectrum::compute(c, t, Branch::Minus, n / 2 + 1).unwrap();
    let plus = SymbolSpectrum::compute(c, t, Branch::Plus, n / 2 + 1).unwrap();
    for l in 0..=n / 2 {
        assert!((minus.coefficients()[l] - row_minus[l]).abs() < 1e-8, "l = {l}");
        assert!((plus.coefficients()[l] - row_plus[l]).abs() < 1e-8, "l = {l}");
    }
}

/// Third derivative by a central stencil, Richardson-extrapolated in `h`.
fn third_derivative(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let stencil = |h: f64| {
        (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h * h * h)
    };
    (4.0 * stencil(h / 2.0) - stencil(h)) / 3.0
}

#[test]
fn derivative_bound_matches_finite_differences() {
    let (c, t) = (0.3, 0.4);
    for branch in [Branch::Plus, Branch::Minus] {
        let f = |x: f64| d_pm(x, c, t, branch);
        let points = 40_000;
        let dx = 2.0 * PI / points as f64;
        let oracle: f64 = (0..points)
            .map(|j| third_derivative(&f, j as f64 * dx, 4e-3).abs())
            .sum::<f64>()
            * dx;
        let value = derivative_bound(c, t, 3, branch).unwrap();
        assert!(
            ((value - oracle) / oracle).abs() < 1e-6,
            "{branch:?}: {value} vs {oracle}"
        );
    }
}

#[test]
fn partial_sums_move_less_than_the_tail_bound() {
    let (c, t) = (0.4, 0.5);
    let (sp10, sm10) = partial_sums(c, t, 10).unwrap();
    let (sp20, sm20) = partial_sums(c, t, 20).unwrap();
    let zeta = hurwitz_zeta(3.0, 11.0);
    let cp = derivative_bound(c, t, 3, Branch::Plus).unwrap();
    let cm = derivative_bound(c, t, 3, Branch::Minus).unwrap();
    assert!(sp20 >= sp10 && sm20 >= sm10);
    assert!(sp20 - sp10 < cp * zeta / PI);
    assert!(sm20 - sm10 < cm * zeta / (2.0 * PI));
}

#[test]
fn lambda_min_matches_finite_ring() {
    let (c, t) = (0.3, 0.4);
    let finite = nearest(1024, c, t)
        .thermal_weights()
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    assert!((lambda_min_w(c, t) - finite).abs() < 1e-10);
}

#[test]
fn finite_coupling_norm_is_within_the_bound() {
    let (n, c, t) = (2048, 0.3, 0.4);
    let x = half_split_coupling(&nearest(n, c, t));
    let norm = max_row_sum(&x);
    let v = SymbolSpectrum::compute(c, t, Branch::Minus, n / 2 + 1).unwrap();
    let v = v.coefficients();
    let m = 10;
    let head: f64 = v[1..=m].iter().map(|a| a.abs()).sum();
    let remainder: f64 = v[m + 1..=n / 2].iter().map(|a| a.abs()).sum();
    assert!((norm - (head + remainder)).abs() < 1e-10);
    let bound = HalfHalfBound::evaluate(&LimitParams::new(c, t)).unwrap();
    assert!((bound.s_minus - head).abs() < 1e-12);
    assert!(norm <= bound.x_norm_bound);
}

#[test]
fn far_coefficients_vanish_with_ring_size() {
    let (c, t) = (0.49, 0.05);
    let residual = |n: usize| {
        let v = SymbolSpectrum::compute(c, t, Branch::Minus, n / 2 + 1).unwrap();
        v.coefficients()[n / 4 + 1..=n / 2]
            .iter()
            .map(|a| a.abs())
            .sum::<f64>()
    };
    let (small, large) = (residual(256), residual(1024));
    assert!(small > 0.0);
    assert!(large * 10.0 <= small, "{small} -> {large}");
}

#[test]
fn density_predicts_finite_even_odd_negativity() {
    let (n, c, t) = (800, 0.4, 0.35);
    let spec = nearest(n, c, t);
    let finite = log_negativity(&spec, &Partition::even_odd(n).unwrap())
        .unwrap()
        .value;
    let predicted = n as f64 * logneg_density_limit(c, t).unwrap();
    assert!(finite > 0.0);
    assert!(((predicted - finite) / finite).abs() < 5e-3, "{predicted} vs {finite}");
}

#[test]
fn higher_orders_do_not_loosen_the_threshold() {
    let c = 0.3;
    let coarse = threshold_halfhalf_upper(c, 10, 3).unwrap();
    let fine = threshold_halfhalf_upper(c, 20, 4).unwrap();
    assert!(fine <= coarse + 1e-6, "{fine} vs {coarse}");
}
