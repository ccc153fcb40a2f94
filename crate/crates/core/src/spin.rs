//! Spin-1/2 rings: exact diagonalization, thermal states and negativity.
//!
//! Two models on `n` sites, with Pauli matrices (no factor 1/2):
//!
//! ```text
//! XX:   H = -J Σ (σˣᵢσˣᵢ₊₁ + σʸᵢσʸᵢ₊₁) + B Σ σᶻᵢ
//! XXX:  H =    Σ (σˣᵢσˣᵢ₊₁ + σʸᵢσʸᵢ₊₁ + σᶻᵢσᶻᵢ₊₁) + B Σ σᶻᵢ
//! ```
//!
//! Basis state `x` has site `i` at bit `i`, with bit 0 meaning `σᶻ = +1`.
//! Both Hamiltonians are real and conserve the number of flipped spins, so
//! they are diagonalized one magnetization sector at a time and thermal
//! states are stored as real sector blocks.
//!
//! Partial transposition over group A maps `ρ(x', y')` to position `(x, y)`
//! where `x'`, `y'` exchange the A bits of `x` and `y`. This conserves
//! `q = |x_B| - |x_A|`, so the transposed matrix splits into `q` blocks.

use nalgebra::DMatrix;

use crate::eigen::{symmetric_eigen, symmetric_eigenvalues};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::thermal::ZERO_TEMPERATURE;

/// Largest supported ring.
pub const MAX_SITES: usize = 14;
/// Tolerance for declaring two energies degenerate at `T = 0`, relative to
/// `max(1, |E₀|)`.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpinModel {
    Xx { j: f64, b: f64 },
    Xxx { b: f64 },
}

impl SpinModel {
    pub fn field(&self) -> f64 {
        match *self {
            SpinModel::Xx { b, .. } | SpinModel::Xxx { b } => b,
        }
    }

    /// Amplitude of `|..01..⟩ ↔ |..10..⟩` for one bond.
    fn flip_amplitude(&self) -> f64 {
        match *self {
            SpinModel::Xx { j, .. } => -2.0 * j,
            SpinModel::Xxx { .. } => 2.0,
        }
    }

    fn has_zz(&self) -> bool {
        matches!(self, SpinModel::Xxx { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Boundary {
    #[default]
    Periodic,
    Open,
}

/// Eigenpairs of one magnetization sector.
#[derive(Debug, Clone)]
struct Sector {
    states: Vec<usize>,
    energies: Vec<f64>,
    vectors: DMatrix<f64>,
}

/// A diagonalized spin ring.
#[derive(Debug, Clone)]
pub struct SpinSystem {
    n: usize,
    model: SpinModel,
    boundary: Boundary,
    sectors: Vec<Sector>,
    ground_energy: f64,
}

fn check_sites(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::BadSize {
            n,
            reason: "a spin ring needs at least 2 sites",
        });
    }
    if n > MAX_SITES {
        return Err(Error::TooLarge { n, max: MAX_SITES });
    }
    Ok(())
}

/// States of `n` bits with `k` set bits, in increasing order.
fn sector_states(n: usize, k: usize) -> Vec<usize> {
    (0..1usize << n)
        .filter(|x| x.count_ones() as usize == k)
        .collect()
}

impl SpinSystem {
    /// Periodic ring.
    pub fn new(n: usize, model: SpinModel) -> Result<Self> {
        Self::with_boundary(n, model, Boundary::Periodic)
    }

    pub fn with_boundary(n: usize, model: SpinModel, boundary: Boundary) -> Result<Self> {
        check_sites(n)?;
        let mut system = Self {
            n,
            model,
            boundary,
            sectors: Vec::with_capacity(n + 1),
            ground_energy: f64::INFINITY,
        };
        for k in 0..=n {
            let states = sector_states(n, k);
            let h = system.block(&states);
            let (values, vectors) = symmetric_eigen(&h);
            let energies: Vec<f64> = values.iter().copied().collect();
            let lowest = energies.iter().copied().fold(f64::INFINITY, f64::min);
            system.ground_energy = system.ground_energy.min(lowest);
            system.sectors.push(Sector {
                states,
                energies,
                vectors,
            });
        }
        Ok(system)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn model(&self) -> SpinModel {
        self.model
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// Nearest-neighbour bonds; on a periodic ring of two sites the pair
    /// appears twice.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        match self.boundary {
            Boundary::Periodic => (0..n).map(|i| (i, (i + 1) % n)).collect(),
            Boundary::Open => (0..n - 1).map(|i| (i, i + 1)).collect(),
        }
    }

    fn diagonal(&self, x: usize, bonds: &[(usize, usize)]) -> f64 {
        let n = self.n as f64;
        let mut e = self.model.field() * (n - 2.0 * x.count_ones() as f64);
        if self.model.has_zz() {
            for &(i, j) in bonds {
                e += if (x >> i) & 1 == (x >> j) & 1 { 1.0 } else { -1.0 };
            }
        }
        e
    }

    /// Hamiltonian restricted to the span of `states` (which must be closed
    /// under the hopping terms, e.g. a magnetization sector).
    fn block(&self, states: &[usize]) -> DMatrix<f64> {
        let bonds = self.bonds();
        let flip = self.model.flip_amplitude();
        let mut position = vec![usize::MAX; self.dim()];
        for (p, &x) in states.iter().enumerate() {
            position[x] = p;
        }
        let mut h = DMatrix::zeros(states.len(), states.len());
        for (p, &x) in states.iter().enumerate() {
            h[(p, p)] = self.diagonal(x, &bonds);
            for &(i, j) in &bonds {
                if (x >> i) & 1 != (x >> j) & 1 {
                    let y = x ^ ((1 << i) | (1 << j));
                    h[(position[y], p)] += flip;
                }
            }
        }
        h
    }

    /// Full `2ⁿ × 2ⁿ` Hamiltonian in the computational basis.
    pub fn hamiltonian(&self) -> DMatrix<f64> {
        let states: Vec<usize> = (0..self.dim()).collect();
        self.block(&states)
    }

    /// All energies in ascending order.
    pub fn energies(&self) -> Vec<f64> {
        let mut e: Vec<f64> = self
            .sectors
            .iter()
            .flat_map(|s| s.energies.iter().copied())
            .collect();
        e.sort_by(f64::total_cmp);
        e
    }

    pub fn ground_energy(&self) -> f64 {
        self.ground_energy
    }

    /// Gibbs state `e^{-H/T} / Z`; at `T = 0` the normalized projector onto
    /// the ground space.
    pub fn thermal_state(&self, t: f64) -> Result<DensityMatrix> {
        self.gibbs(t, true)
    }

    /// Gibbs state of `H` with the field term dropped, reusing the
    /// eigenvectors: the field only shifts each magnetization sector.
    ///
    /// For `T > 0` the field state is `F ρ F` with `F` a product of invertible
    /// one-site operators, so both states have the same PPT cuts. This one
    /// avoids the sector weights `e^{±2B/T}` that a strong field puts on the
    /// other, which can push small negative eigenvalues of `ρ^{T_A}` below
    /// roundoff.
    pub fn zero_field_thermal_state(&self, t: f64) -> Result<DensityMatrix> {
        self.gibbs(t, false)
    }

    fn gibbs(&self, t: f64, with_field: bool) -> Result<DensityMatrix> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::BadTemperature { t });
        }
        let dropped = if with_field { 0.0 } else { self.model.field() };
        // sector k holds k flipped spins, with field energy B (n - 2k)
        let shift = |k: usize| dropped * (self.n as f64 - 2.0 * k as f64);
        let energies: Vec<Vec<f64>> = self
            .sectors
            .iter()
            .enumerate()
            .map(|(k, s)| s.energies.iter().map(|e| e - shift(k)).collect())
            .collect();
        let e0 = energies.iter().flatten().copied().fold(f64::INFINITY, f64::min);
        let weight = |e: f64| {
            if t <= ZERO_TEMPERATURE {
                let gap = DEGENERACY_TOLERANCE * e0.abs().max(1.0);
                if e - e0 <= gap {
                    1.0
                } else {
                    0.0
                }
            } else {
                (-(e - e0) / t).exp()
            }
        };
        let z: f64 = energies.iter().flatten().map(|&e| weight(e)).sum();
        let blocks = self
            .sectors
            .iter()
            .zip(&energies)
            .map(|(sector, energies)| {
                let dim = sector.states.len();
                let kept: Vec<(usize, f64)> = energies
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| (i, weight(e) / z))
                    .filter(|&(_, p)| p > 1e-18)
                    .collect();
                let matrix = if kept.is_empty() {
                    DMatrix::zeros(dim, dim)
                } else {
                    let scaled = DMatrix::from_fn(dim, kept.len(), |r, c| {
                        let (col, p) = kept[c];
                        sector.vectors[(r, col)] * p.sqrt()
                    });
                    &scaled * scaled.transpose()
                };
                Block {
                    states: sector.states.clone(),
                    matrix,
                }
            })
            .collect();
        Ok(DensityMatrix::from_blocks(self.n, blocks))
    }
}

/// One diagonal block of a density matrix, on the listed basis states.
#[derive(Debug, Clone)]
struct Block {
    states: Vec<usize>,
    matrix: DMatrix<f64>,
}

#[derive(Debug, Clone)]
enum Repr {
    Dense(DMatrix<f64>),
    Blocks {
        blocks: Vec<Block>,
        /// `(block, index)` of every basis state.
        position: Vec<(u32, u32)>,
    },
}

/// Real density matrix of `n` spins.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    n: usize,
    repr: Repr,
}

impl DensityMatrix {
    fn from_blocks(n: usize, blocks: Vec<Block>) -> Self {
        let mut position = vec![(u32::MAX, u32::MAX); 1 << n];
        for (b, block) in blocks.iter().enumerate() {
            for (i, &x) in block.states.iter().enumerate() {
                position[x] = (b as u32, i as u32);
            }
        }
        Self {
            n,
            repr: Repr::Blocks { blocks, position },
        }
    }

    /// Checks symmetry, unit trace and positivity.
    pub fn from_dense(n: usize, matrix: DMatrix<f64>) -> Result<Self> {
        if n == 0 || n > MAX_SITES {
            return Err(Error::BadDensityMatrix(format!("{n} sites outside [1, {MAX_SITES}]")));
        }
        let dim = 1usize << n;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::BadDensityMatrix(format!(
                "expected {dim}×{dim}, got {}×{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if (&matrix - matrix.transpose()).amax() > 1e-12 {
            return Err(Error::BadDensityMatrix("matrix is not symmetric".into()));
        }
        let trace = matrix.trace();
        if (trace - 1.0).abs() > 1e-10 {
            return Err(Error::BadDensityMatrix(format!("trace {trace} ≠ 1")));
        }
        let min = symmetric_eigenvalues(&matrix)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min < -1e-12 {
            return Err(Error::BadDensityMatrix(format!(
                "negative eigenvalue {min}"
            )));
        }
        Ok(Self {
            n,
            repr: Repr::Dense(matrix),
        })
    }

    /// `|ψ⟩⟨ψ|` for a real amplitude vector, normalized here.
    pub fn from_pure_state(n: usize, amplitudes: &[f64]) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 || amplitudes.len() != 1 << n {
            return Err(Error::BadDensityMatrix(
                "need a nonzero vector of length 2ⁿ".into(),
            ));
        }
        let psi = nalgebra::DVector::from_iterator(
            amplitudes.len(),
            amplitudes.iter().map(|a| a / norm),
        );
        Self::from_dense(n, &psi * psi.transpose())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Entry `⟨x|ρ|y⟩`.
    pub fn element(&self, x: usize, y: usize) -> f64 {
        match &self.repr {
            Repr::Dense(m) => m[(x, y)],
            Repr::Blocks { blocks, position } => {
                let (bx, ix) = position[x];
                let (by, iy) = position[y];
                if bx != by {
                    0.0
                } else {
                    blocks[bx as usize].matrix[(ix as usize, iy as usize)]
                }
            }
        }
    }

    pub fn trace(&self) -> f64 {
        match &self.repr {
            Repr::Dense(m) => m.trace(),
            Repr::Blocks { blocks, .. } => blocks.iter().map(|b| b.matrix.trace()).sum(),
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        match &self.repr {
            Repr::Dense(m) => m.clone(),
            Repr::Blocks { .. } => DMatrix::from_fn(self.dim(), self.dim(), |x, y| self.element(x, y)),
        }
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values: Vec<f64> = match &self.repr {
            Repr::Dense(m) => symmetric_eigenvalues(m),
            Repr::Blocks { blocks, .. } => blocks
                .iter()
                .flat_map(|b| symmetric_eigenvalues(&b.matrix))
                .collect(),
        };
        values.sort_by(f64::total_cmp);
        values
    }

    fn check_partition(&self, part: &Partition) -> Result<()> {
        if part.n() != self.n {
            return Err(Error::InvalidArgument(format!(
                "partition has {} sites, state has {}",
                part.n(),
                self.n
            )));
        }
        Ok(())
    }

    /// Dense partial transpose over group A.
    pub fn partial_transpose(&self, part: &Partition) -> Result<DMatrix<f64>> {
        self.check_partition(part)?;
        let mask = part.mask_a();
        Ok(DMatrix::from_fn(self.dim(), self.dim(), |x, y| {
            let (xs, ys) = swap_bits(x, y, mask);
            self.element(xs, ys)
        }))
    }

    /// Spectrum of the partial transpose, ascending. States built from
    /// sector blocks are transposed one `q` block at a time.
    pub fn partial_transpose_eigenvalues(&self, part: &Partition) -> Result<Vec<f64>> {
        self.check_partition(part)?;
        let mask = part.mask_a();
        if let Repr::Dense(m) = &self.repr {
            // no magnetization structure to exploit
            return Ok(symmetric_eigenvalues(&partial_transpose_matrix(m, mask)));
        }
        let mut values = Vec::with_capacity(self.dim());
        for block in charge_blocks(self.n, mask) {
            let m = DMatrix::from_fn(block.len(), block.len(), |r, c| {
                let (xs, ys) = swap_bits(block[r], block[c], mask);
                self.element(xs, ys)
            });
            values.extend(symmetric_eigenvalues(&m));
        }
        values.sort_by(f64::total_cmp);
        Ok(values)
    }
}

/// Exchanges the bits selected by `mask` between `x` and `y`.
fn swap_bits(x: usize, y: usize, mask: usize) -> (usize, usize) {
    ((x & !mask) | (y & mask), (y & !mask) | (x & mask))
}

/// Basis states grouped by `|x_B| - |x_A|`.
fn charge_blocks(n: usize, mask: usize) -> Vec<Vec<usize>> {
    let a = mask.count_ones() as usize;
    let mut blocks = vec![Vec::new(); n + 1];
    for x in 0..1usize << n {
        let in_a = (x & mask).count_ones() as usize;
        let in_b = x.count_ones() as usize - in_a;
        blocks[in_b + a - in_a].push(x);
    }
    blocks.retain(|b| !b.is_empty());
    blocks
}

/// Partial transpose of a dense `2ⁿ × 2ⁿ` matrix over the sites in `mask_a`.
pub fn partial_transpose_matrix(m: &DMatrix<f64>, mask_a: usize) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |x, y| {
        let (xs, ys) = swap_bits(x, y, mask_a);
        m[(xs, ys)]
    })
}

/// `E_N = Σ |λ|` over the negative eigenvalues of `ρ^{T_A}`, i.e.
/// `(‖ρ^{T_A}‖₁ - 1) / 2`.
pub fn negativity(rho: &DensityMatrix, part: &Partition) -> Result<f64> {
    Ok(rho
        .partial_transpose_eigenvalues(part)?
        .iter()
        .filter(|&&v| v < 0.0)
        .fold(0.0, |acc, v| acc - v))
}
