//! Gaussian thermal states of oscillator chains.
//!
//! With `H = ½(pᵀp + xᵀVx)` the thermal state at temperature `T` has no x–p
//! correlations and covariance `γ = [V^{-1/2} W] ⊕ [V^{1/2} W]`, where
//! `W(T) = coth(V^{1/2} / 2T)`. Entanglement only needs
//! `ω± = W⁻¹ V^{±1/2}`, whose eigenvalues are
//! `d±_k = Λ_k^{±1/2} tanh(√Λ_k / 2T)`.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::potential::{circulant_first_row, Potential};

/// Below this temperature the exact ground-state branch (`W = 𝟙`) is used.
pub const ZERO_TEMPERATURE: f64 = 1e-8;

/// `tanh(√Λ / 2T)`, equal to one at `T = 0`.
pub fn thermal_factor(lambda: f64, t: f64) -> f64 {
    if t < ZERO_TEMPERATURE {
        1.0
    } else {
        (lambda.sqrt() / (2.0 * t)).tanh()
    }
}

/// `d⁺ = √Λ tanh(√Λ / 2T)`.
pub fn d_plus(lambda: f64, t: f64) -> f64 {
    lambda.sqrt() * thermal_factor(lambda, t)
}

/// `d⁻ = tanh(√Λ / 2T) / √Λ`, continued to `1 / 2T` at `Λ = 0`.
///
/// Returns infinity for a zero mode at `T = 0`.
pub fn d_minus(lambda: f64, t: f64) -> f64 {
    let root = lambda.sqrt();
    if t < ZERO_TEMPERATURE {
        return 1.0 / root;
    }
    let y = root / (2.0 * t);
    if y < 1e-6 {
        // tanh(y)/√Λ = (1 - y²/3 + …) / 2T
        (1.0 - y * y / 3.0) / (2.0 * t)
    } else {
        y.tanh() / root
    }
}

/// Thermal weight `w = coth(√Λ / 2T) = 1 + 2 / (exp(√Λ/T) - 1)`.
pub fn thermal_weight(lambda: f64, t: f64) -> f64 {
    1.0 / thermal_factor(lambda, t)
}

/// A harmonic potential at a fixed temperature.
#[derive(Debug, Clone)]
pub struct GaussianThermalSpec {
    potential: Arc<Potential>,
    temperature: f64,
}

impl GaussianThermalSpec {
    pub fn new(potential: impl Into<Arc<Potential>>, temperature: f64) -> Result<Self> {
        let potential = potential.into();
        if !temperature.is_finite() || temperature < 0.0 {
            return Err(Error::BadTemperature { t: temperature });
        }
        if temperature < ZERO_TEMPERATURE && potential.is_gapless() {
            return Err(Error::GaplessAtZeroT);
        }
        Ok(Self {
            potential,
            temperature,
        })
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    pub fn shared_potential(&self) -> Arc<Potential> {
        Arc::clone(&self.potential)
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn n(&self) -> usize {
        self.potential.n()
    }

    /// `(d⁻_k, d⁺_k)` in the potential's spectrum order.
    pub fn mode_weights(&self) -> (Vec<f64>, Vec<f64>) {
        let t = self.temperature;
        let spectrum = self.potential.spectrum();
        (
            spectrum.iter().map(|&l| d_minus(l, t)).collect(),
            spectrum.iter().map(|&l| d_plus(l, t)).collect(),
        )
    }

    /// Eigenvalues `w_k ≥ 1` of `W(T)`.
    pub fn thermal_weights(&self) -> Vec<f64> {
        let t = self.temperature;
        self.potential
            .spectrum()
            .iter()
            .map(|&l| thermal_weight(l, t))
            .collect()
    }

    /// `W(T)` as a dense matrix.
    pub fn thermal_weight_matrix(&self) -> DMatrix<f64> {
        self.potential
            .matrix_function_from_values(&self.thermal_weights())
    }

    /// Covariance matrix in the ordering `(x_1..x_n, p_1..p_n)`.
    pub fn covariance(&self) -> Result<DMatrix<f64>> {
        if self.potential.is_gapless() {
            return Err(Error::GaplessPotential);
        }
        let n = self.n();
        let w = self.thermal_weights();
        let spectrum = self.potential.spectrum();
        let x_vals: Vec<f64> = spectrum.iter().zip(&w).map(|(l, w)| w / l.sqrt()).collect();
        let p_vals: Vec<f64> = spectrum.iter().zip(&w).map(|(l, w)| w * l.sqrt()).collect();
        let x_block = self.potential.matrix_function_from_values(&x_vals);
        let p_block = self.potential.matrix_function_from_values(&p_vals);
        let mut gamma = DMatrix::zeros(2 * n, 2 * n);
        gamma.view_mut((0, 0), (n, n)).copy_from(&x_block);
        gamma.view_mut((n, n), (n, n)).copy_from(&p_block);
        Ok(gamma)
    }

    /// `(ω⁻, ω⁺)` with `ω± = W(T)⁻¹ V^{±1/2}`.
    pub fn omega_matrices(&self) -> (DMatrix<f64>, DMatrix<f64>) {
        let (dm, dp) = self.mode_weights();
        (
            self.potential.matrix_function_from_values(&dm),
            self.potential.matrix_function_from_values(&dp),
        )
    }

    /// First rows `(v⁻_l, v⁺_l)` of the circulant `ω±`; `None` for dense potentials.
    pub fn omega_first_rows(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        if !self.potential.is_circulant() {
            return None;
        }
        let (dm, dp) = self.mode_weights();
        Some((circulant_first_row(&dm), circulant_first_row(&dp)))
    }
}
