//! Logarithmic negativity of Gaussian thermal states.
//!
//! For a bipartition encoded by the diagonal sign matrix `P`, the
//! log-negativity is `E_l = Σ_k log₂ max(1, λ_k(Q))` with
//! `Q = P ω⁻ P ω⁺`. `Q` is similar to the symmetric positive-definite
//! `M = (ω⁺)^{1/2} P ω⁻ P (ω⁺)^{1/2}`, which is what gets diagonalized.
//!
//! For circulant potentials and the even-odd cut, `P` maps Fourier mode `k`
//! to `k + n/2`, so the spectrum of `Q` is `{d⁻_k d⁺_{k+n/2}}` in closed form.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::partition::{Partition, PartitionKind};
use crate::potential::{sorted_symmetric_eigenvalues, symmetrize};
use crate::thermal::{d_minus, d_plus, thermal_factor, GaussianThermalSpec};

/// Eigenvalues of `Q` must exceed `1 + PPT_TOLERANCE` to count, and
/// negativities below it are reported as exactly zero.
pub const PPT_TOLERANCE: f64 = 1e-10;

/// Log-negativity (base 2) of one bipartition.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativityResult {
    pub value: f64,
    pub q_eigenvalues: Vec<f64>,
    pub contributing_count: usize,
    pub is_ppt: bool,
}

impl NegativityResult {
    /// Builds the result from the (unsorted) spectrum of `Q`.
    pub fn from_q_spectrum(mut q_eigenvalues: Vec<f64>) -> Self {
        q_eigenvalues.sort_by(f64::total_cmp);
        let contributing: Vec<f64> = q_eigenvalues
            .iter()
            .copied()
            .filter(|&l| l > 1.0 + PPT_TOLERANCE)
            .collect();
        let mut value: f64 = contributing.iter().map(|l| l.log2()).sum();
        let mut contributing_count = contributing.len();
        if value < PPT_TOLERANCE {
            value = 0.0;
            contributing_count = 0;
        }
        Self {
            value,
            q_eigenvalues,
            contributing_count,
            is_ppt: contributing_count == 0,
        }
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.q_eigenvalues.last().copied().unwrap_or(0.0)
    }
}

fn check_sizes(spec: &GaussianThermalSpec, part: &Partition) -> Result<()> {
    if part.n() != spec.n() {
        return Err(Error::BadPartitionParams(format!(
            "partition over {} sites applied to {} oscillators",
            part.n(),
            spec.n()
        )));
    }
    Ok(())
}

/// Spectrum of `Q = P ω⁻ P ω⁺`, ascending.
pub fn q_spectrum(spec: &GaussianThermalSpec, part: &Partition) -> Result<Vec<f64>> {
    check_sizes(spec, part)?;
    let (dm, dp) = spec.mode_weights();
    if dm.iter().any(|d| !d.is_finite()) {
        return Err(Error::GaplessAtZeroT);
    }
    let pot = spec.potential();
    let root_plus: Vec<f64> = dp.iter().map(|d| d.sqrt()).collect();
    let s = pot.matrix_function_from_values(&root_plus);
    let mut flipped = pot.matrix_function_from_values(&dm);
    let labels = part.labels();
    for j in 0..flipped.ncols() {
        for i in 0..flipped.nrows() {
            if labels[i] != labels[j] {
                flipped[(i, j)] = -flipped[(i, j)];
            }
        }
    }
    let mut m: DMatrix<f64> = &s * flipped * &s;
    symmetrize(&mut m);
    Ok(sorted_symmetric_eigenvalues(m))
}

/// `E_l` of the given bipartition via the dense symmetrized spectrum.
pub fn log_negativity(spec: &GaussianThermalSpec, part: &Partition) -> Result<NegativityResult> {
    Ok(NegativityResult::from_q_spectrum(q_spectrum(spec, part)?))
}

/// Nearest-neighbour ratio
/// `f(k) = √(Λ_{k+n/2}/Λ_k) · tanh(√Λ_k/2T) · tanh(√Λ_{k+n/2}/2T)`
/// with `Λ_k = 1 - 2c cos(2πk/n)`; defined for `n` divisible by four and
/// `0 ≤ k ≤ n/4`.
pub fn even_odd_f(k: usize, n: usize, c: f64, t: f64) -> Result<f64> {
    if n < 4 || n % 4 != 0 {
        return Err(Error::BadPartitionParams(format!(
            "n = {n} must be a positive multiple of 4"
        )));
    }
    if k > n / 4 {
        return Err(Error::BadPartitionParams(format!(
            "k = {k} outside [0, {}]",
            n / 4
        )));
    }
    if !(0.0..0.5).contains(&c) {
        return Err(Error::CouplingOutOfRange { c });
    }
    let x = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
    Ok(even_odd_symbol(x, c, t))
}

/// `f` as a function of the Fourier angle `x = 2πk/n`.
pub(crate) fn even_odd_symbol(x: f64, c: f64, t: f64) -> f64 {
    let low = 1.0 - 2.0 * c * x.cos();
    let high = 1.0 + 2.0 * c * x.cos();
    (high / low).sqrt() * thermal_factor(low, t) * thermal_factor(high, t)
}

/// Even-odd `E_l` of a circulant potential from the closed-form spectrum
/// `{d⁻_k d⁺_{(k+n/2) mod n} : k = 0..n}`.
pub fn log_negativity_even_odd_analytic(spec: &GaussianThermalSpec) -> Result<NegativityResult> {
    let pot = spec.potential();
    if !pot.is_circulant() {
        return Err(Error::WrongKind {
            expected: "a circulant potential",
        });
    }
    let n = pot.n();
    let t = spec.temperature();
    let spectrum = pot.spectrum();
    let q: Vec<f64> = (0..n)
        .map(|k| d_minus(spectrum[k], t) * d_plus(spectrum[(k + n / 2) % n], t))
        .collect();
    if q.iter().any(|v| !v.is_finite()) {
        return Err(Error::GaplessAtZeroT);
    }
    Ok(NegativityResult::from_q_spectrum(q))
}

/// Uses the closed form for the even-odd cut of a circulant potential and the
/// dense path otherwise.
pub fn log_negativity_auto(
    spec: &GaussianThermalSpec,
    part: &Partition,
) -> Result<NegativityResult> {
    if part.kind() == PartitionKind::EvenOdd && spec.potential().is_circulant() {
        check_sizes(spec, part)?;
        log_negativity_even_odd_analytic(spec)
    } else {
        log_negativity(spec, part)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::Potential;
    use approx::assert_relative_eq;

    fn spec(n: usize, c: f64, t: f64) -> GaussianThermalSpec {
        GaussianThermalSpec::new(Potential::nearest(n, c).unwrap(), t).unwrap()
    }

    #[test]
    fn identity_potential_is_ppt_everywhere() {
        let t = 0.6;
        let s = spec(8, 0.0, t);
        let bound = (1.0 / (2.0 * t)).tanh().powi(2);
        for part in [
            Partition::even_odd(8).unwrap(),
            Partition::half_half(8, 3).unwrap(),
            Partition::one_vs_rest(8, 5).unwrap(),
        ] {
            let q = q_spectrum(&s, &part).unwrap();
            for l in &q {
                assert_relative_eq!(*l, bound, epsilon = 1e-14);
            }
            let r = log_negativity(&s, &part).unwrap();
            assert!(r.is_ppt);
            assert_eq!(r.value, 0.0);
        }
    }

    #[test]
    fn ground_state_even_odd_matches_fourier_pairs() {
        let s = spec(8, 0.4, 0.0);
        let q = q_spectrum(&s, &Partition::even_odd(8).unwrap()).unwrap();
        let (dm, dp) = s.mode_weights();
        let mut expected: Vec<f64> = (0..8).map(|k| dm[k] * dp[(k + 4) % 8]).collect();
        expected.sort_by(f64::total_cmp);
        for (a, b) in q.iter().zip(&expected) {
            assert_relative_eq!(*a, *b, epsilon = 1e-10);
        }
    }

    #[test]
    fn symmetrized_matches_nonsymmetric_q() {
        // Oracle: general real eigensolver on P ω⁻ P ω⁺ itself.
        for (n, c, t) in [(6, 0.3, 0.2), (8, 0.45, 0.1), (12, 0.2, 0.4)] {
            let s = spec(n, c, t);
            for part in [
                Partition::half_half(n, 1).unwrap(),
                Partition::even_odd(n).unwrap(),
                Partition::one_vs_rest(n, 0).unwrap(),
            ] {
                let (om, op) = s.omega_matrices();
                let p = DMatrix::from_fn(n, n, |i, j| {
                    if i == j {
                        part.labels()[i] as f64
                    } else {
                        0.0
                    }
                });
                let q = &p * om * &p * op;
                let mut oracle: Vec<f64> = q
                    .complex_eigenvalues()
                    .iter()
                    .map(|z| {
                        assert!(z.im.abs() < 1e-9);
                        z.re
                    })
                    .collect();
                oracle.sort_by(f64::total_cmp);
                let got = q_spectrum(&s, &part).unwrap();
                for (a, b) in got.iter().zip(&oracle) {
                    assert!((a - b).abs() < 1e-9, "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn f_at_zero_temperature_and_zero_coupling() {
        let c = 0.3;
        assert_relative_eq!(
            even_odd_f(0, 16, c, 0.0).unwrap(),
            ((1.0 + 2.0 * c) / (1.0 - 2.0 * c)).sqrt(),
            epsilon = 1e-15
        );
        let t = 0.7;
        for k in 0..=4 {
            assert_relative_eq!(
                even_odd_f(k, 16, 0.0, t).unwrap(),
                (1.0 / (2.0 * t)).tanh().powi(2),
                epsilon = 1e-15
            );
        }
        assert!(even_odd_f(5, 16, c, t).is_err());
        assert!(even_odd_f(0, 18, c, t).is_err());
    }

    #[test]
    fn f_at_fig1_point_exceeds_one_and_matches_q_max() {
        let f0 = even_odd_f(0, 64, 0.4, 0.45).unwrap();
        assert!(f0 > 1.0);
        let r = log_negativity(&spec(64, 0.4, 0.45), &Partition::even_odd(64).unwrap()).unwrap();
        assert_relative_eq!(r.max_eigenvalue(), f0, epsilon = 1e-10);
    }

    #[test]
    fn analytic_even_odd_matches_dense() {
        let s = spec(16, 0.3, 0.2);
        let dense = log_negativity(&s, &Partition::even_odd(16).unwrap()).unwrap();
        let analytic = log_negativity_even_odd_analytic(&s).unwrap();
        assert!(analytic.value > 0.0);
        assert_relative_eq!(analytic.value, dense.value, max_relative = 1e-8);
        assert_eq!(analytic.contributing_count, dense.contributing_count);
    }

    #[test]
    fn analytic_vanishes_above_root_of_f0() {
        // T^{e:o} for c = 0.3 lies near 0.48
        let s = spec(32, 0.3, 0.49);
        assert!(even_odd_f(0, 32, 0.3, 0.49).unwrap() < 1.0);
        assert_eq!(log_negativity_even_odd_analytic(&s).unwrap().value, 0.0);
        assert_eq!(
            log_negativity_even_odd_analytic(&spec(32, 0.0, 0.1)).unwrap().value,
            0.0
        );
    }

    #[test]
    fn analytic_requires_circulant() {
        let pot = Potential::from_dense(Potential::nearest(8, 0.2).unwrap().matrix()).unwrap();
        let s = GaussianThermalSpec::new(pot, 0.3).unwrap();
        assert!(matches!(
            log_negativity_even_odd_analytic(&s),
            Err(Error::WrongKind { .. })
        ));
        // the dense path still works and agrees with the circulant one
        let a = log_negativity(&s, &Partition::even_odd(8).unwrap()).unwrap();
        let b = log_negativity_even_odd_analytic(&spec(8, 0.2, 0.3)).unwrap();
        assert_relative_eq!(a.value, b.value, max_relative = 1e-9);
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let s = spec(8, 0.2, 0.3);
        assert!(log_negativity(&s, &Partition::even_odd(10).unwrap()).is_err());
    }

    #[test]
    fn result_invariants() {
        let r = NegativityResult::from_q_spectrum(vec![2.0, 0.5, 4.0, 1.0 + 1e-12]);
        assert_eq!(r.q_eigenvalues, vec![0.5, 1.0 + 1e-12, 2.0, 4.0]);
        assert_eq!(r.contributing_count, 2);
        assert_relative_eq!(r.value, 3.0);
        assert!(!r.is_ppt);
        let r = NegativityResult::from_q_spectrum(vec![0.3, 1.0]);
        assert!(r.is_ppt && r.value == 0.0);
    }
}
