//! Coupling matrices `V` of quadratic oscillator chains.
//!
//! A [`Potential`] couples `n` oscillators through their positions,
//! `H = ½(Σ p_i² + Σ x_i V_ij x_j)`. Translation-invariant rings are stored
//! as the first row of a circulant matrix, whose spectrum is a cosine sum and
//! whose matrix functions are again circulant. Anything else is stored dense
//! and diagonalized once at construction.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::eigen::{symmetric_eigen, symmetric_eigenvalues};

use crate::error::{Error, Result};

/// Eigenvalues in `(-TOL_PSD, 0]` are clamped to zero and the potential is
/// flagged gapless; anything below `-TOL_PSD` is rejected.
pub const TOL_PSD: f64 = 1e-10;

/// Which closed-form family a potential was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialKind {
    /// `circ(1, -c, 0, …, 0, -c)`.
    Nearest { c: f64 },
    /// `circ(2 + 4μ², -4μ, 1, 0, …, 0, 1, -4μ)`.
    NextNearest { mu: f64 },
    Custom,
}

#[derive(Debug, Clone)]
enum Storage {
    Circulant {
        first_row: Vec<f64>,
        /// Λ_k in Fourier-index order.
        spectrum: Vec<f64>,
    },
    Dense {
        matrix: DMatrix<f64>,
        /// Ascending eigenvalues and matching orthonormal eigenvectors.
        spectrum: Vec<f64>,
        vectors: DMatrix<f64>,
    },
}

/// A validated symmetric positive-semidefinite coupling matrix.
#[derive(Debug, Clone)]
pub struct Potential {
    n: usize,
    kind: PotentialKind,
    storage: Storage,
    gapless: bool,
}

fn check_even_size(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::BadSize {
            n,
            reason: "too few sites",
        });
    }
    if n % 2 != 0 {
        return Err(Error::BadSize {
            n,
            reason: "site count must be even",
        });
    }
    Ok(())
}

/// Clamps tiny negative eigenvalues to zero. Returns whether any eigenvalue
/// ended up (numerically) zero.
fn validate_spectrum(spectrum: &mut [f64]) -> Result<bool> {
    let mut gapless = false;
    for lambda in spectrum.iter_mut() {
        if *lambda < -TOL_PSD {
            return Err(Error::NotPositiveSemidefinite { eigenvalue: *lambda });
        }
        if *lambda <= TOL_PSD {
            *lambda = lambda.max(0.0);
            gapless = true;
        }
    }
    Ok(gapless)
}

/// `cos(2π j / n)` for `j = 0..n`; index with `(k * l) % n`.
pub(crate) fn cos_table(n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| (2.0 * PI * j as f64 / n as f64).cos())
        .collect()
}

/// Spectrum of the symmetric circulant matrix with the given first row.
pub fn circulant_spectrum(first_row: &[f64]) -> Vec<f64> {
    let n = first_row.len();
    let table = cos_table(n);
    let support: Vec<(usize, f64)> = first_row
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, r)| r != 0.0)
        .collect();
    (0..n)
        .map(|k| {
            support
                .iter()
                .map(|&(l, r)| r * table[(k * l) % n])
                .sum()
        })
        .collect()
}

/// First row of the symmetric circulant matrix with eigenvalues `values`
/// (Fourier-index order, `values[k] == values[n - k]`).
pub fn circulant_first_row(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let table = cos_table(n);
    let scale = 1.0 / n as f64;
    (0..n)
        .map(|l| {
            values
                .iter()
                .enumerate()
                .map(|(k, v)| v * table[(k * l) % n])
                .sum::<f64>()
                * scale
        })
        .collect()
}

/// Dense circulant matrix with row `r` equal to `first_row` shifted by `r`.
pub fn circulant_matrix(first_row: &[f64]) -> DMatrix<f64> {
    let n = first_row.len();
    DMatrix::from_fn(n, n, |i, j| first_row[(j + n - i) % n])
}

impl Potential {
    /// Symmetric circulant potential from its first row.
    pub fn build_circulant(first_row: Vec<f64>) -> Result<Self> {
        Self::circulant_with_kind(first_row, PotentialKind::Custom)
    }

    fn circulant_with_kind(first_row: Vec<f64>, kind: PotentialKind) -> Result<Self> {
        let n = first_row.len();
        check_even_size(n, 2)?;
        for l in 1..n {
            let (left, right) = (first_row[l], first_row[n - l]);
            let scale = 1.0_f64.max(left.abs()).max(right.abs());
            if (left - right).abs() > 1e-14 * scale {
                return Err(Error::AsymmetricRow {
                    index: l,
                    mirror: n - l,
                    left,
                    right,
                });
            }
        }
        let mut spectrum = circulant_spectrum(&first_row);
        let gapless = validate_spectrum(&mut spectrum)?;
        Ok(Self {
            n,
            kind,
            storage: Storage::Circulant {
                first_row,
                spectrum,
            },
            gapless,
        })
    }

    /// Nearest-neighbour ring `circ(1, -c, 0, …, 0, -c)`, `0 ≤ c < 1/2`.
    pub fn nearest(n: usize, c: f64) -> Result<Self> {
        if !(0.0..0.5).contains(&c) {
            return Err(Error::CouplingOutOfRange { c });
        }
        check_even_size(n, 4)?;
        let mut row = vec![0.0; n];
        row[0] = 1.0;
        row[1] = -c;
        row[n - 1] = -c;
        Self::circulant_with_kind(row, PotentialKind::Nearest { c })
    }

    /// Next-nearest-neighbour ring `circ(2 + 4μ², -4μ, 1, 0, …, 0, 1, -4μ)`.
    ///
    /// Its spectrum is `4(μ - cos x)²` on the Fourier grid, so it is gapless
    /// whenever `μ` equals some `cos(2πk/n)`.
    pub fn next_nearest(n: usize, mu: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::InvalidArgument(format!("mu = {mu} is not finite")));
        }
        check_even_size(n, 6)?;
        let mut row = vec![0.0; n];
        row[0] = 2.0 + 4.0 * mu * mu;
        row[1] = -4.0 * mu;
        row[n - 1] = -4.0 * mu;
        row[2] = 1.0;
        row[n - 2] = 1.0;
        Self::circulant_with_kind(row, PotentialKind::NextNearest { mu })
    }

    /// Arbitrary symmetric PSD potential, diagonalized densely.
    pub fn from_dense(matrix: DMatrix<f64>) -> Result<Self> {
        let n = matrix.nrows();
        if matrix.ncols() != n {
            return Err(Error::BadSize {
                n,
                reason: "matrix must be square",
            });
        }
        check_even_size(n, 2)?;
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (matrix[(i, j)], matrix[(j, i)]);
                if (a - b).abs() > 1e-12 * 1.0_f64.max(a.abs()) {
                    return Err(Error::AsymmetricMatrix { row: i, col: j });
                }
            }
        }
        let (values, vectors) = symmetric_eigen(&matrix);
        let mut spectrum: Vec<f64> = values.iter().copied().collect();
        let gapless = validate_spectrum(&mut spectrum)?;
        Ok(Self {
            n,
            kind: PotentialKind::Custom,
            storage: Storage::Dense {
                matrix,
                spectrum,
                vectors,
            },
            gapless,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> PotentialKind {
        self.kind
    }

    pub fn is_circulant(&self) -> bool {
        matches!(self.storage, Storage::Circulant { .. })
    }

    /// True when some eigenvalue is zero within [`TOL_PSD`].
    pub fn is_gapless(&self) -> bool {
        self.gapless
    }

    /// First row for circulant storage.
    pub fn first_row(&self) -> Option<&[f64]> {
        match &self.storage {
            Storage::Circulant { first_row, .. } => Some(first_row),
            Storage::Dense { .. } => None,
        }
    }

    /// Eigenvalues Λ_k: Fourier-index order for circulant storage, ascending
    /// for dense storage.
    pub fn spectrum(&self) -> &[f64] {
        match &self.storage {
            Storage::Circulant { spectrum, .. } | Storage::Dense { spectrum, .. } => spectrum,
        }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.spectrum().iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.spectrum()
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Materialized `n × n` matrix.
    pub fn matrix(&self) -> DMatrix<f64> {
        match &self.storage {
            Storage::Circulant { first_row, .. } => circulant_matrix(first_row),
            Storage::Dense { matrix, .. } => matrix.clone(),
        }
    }

    /// `g(V)` for a scalar function applied to each eigenvalue, given the
    /// already evaluated values `g(Λ_k)` in [`Potential::spectrum`] order.
    pub fn matrix_function_from_values(&self, values: &[f64]) -> DMatrix<f64> {
        assert_eq!(values.len(), self.n, "one value per eigenvalue");
        match &self.storage {
            Storage::Circulant { .. } => circulant_matrix(&circulant_first_row(values)),
            Storage::Dense { vectors, .. } => {
                let scaled = DMatrix::from_fn(self.n, self.n, |i, j| vectors[(i, j)] * values[j]);
                let mut out = scaled * vectors.transpose();
                symmetrize(&mut out);
                out
            }
        }
    }

    /// `g(V)` evaluated eigenvalue-wise.
    pub fn matrix_function(&self, g: impl Fn(f64) -> f64) -> DMatrix<f64> {
        let values: Vec<f64> = self.spectrum().iter().map(|&l| g(l)).collect();
        self.matrix_function_from_values(&values)
    }

    /// Eigenvectors for dense storage (columns, matching [`Potential::spectrum`]).
    pub fn eigenvectors(&self) -> Option<&DMatrix<f64>> {
        match &self.storage {
            Storage::Dense { vectors, .. } => Some(vectors),
            Storage::Circulant { .. } => None,
        }
    }
}

pub(crate) fn symmetrize(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
}

/// Cyclic shift permutation `(S x)_i = x_{i-1}`.
pub fn cyclic_shift(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |i, j| if (j + 1) % n == i { 1.0 } else { 0.0 })
}

/// Dense symmetric eigenvalues, ascending.
pub fn sorted_symmetric_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    symmetric_eigenvalues(&m)
}
