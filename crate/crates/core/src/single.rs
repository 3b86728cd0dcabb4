//! Single-mode dynamics: closed-form evolution of `Σ c_e,n |e,n> + c_g,n |g,n>`
//! and the atomic observables derived from it.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::block::BlockPropagator;
use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::model::{SingleModeParams, SpectralPoint};
use crate::spectral::{eigenvalues_2x2, HermitianMatrix};
use crate::states::FockVector;

/// Joint atom-field amplitudes. `c_e[n]` multiplies `|e,n>` for
/// `n = 0..=n_max`; `c_g[n]` multiplies `|g,n>` for `n = 0..=n_max+1`, since
/// `|e,n>` couples to `|g,n+1>`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleJointAmplitudes {
    pub c_e: Vec<C64>,
    pub c_g: Vec<C64>,
    pub time: f64,
}

/// 2x2 reduced atomic state, laid out as
/// `[[Σ|c_e|², Σ c_e* c_g], [Σ c_e c_g*, Σ|c_g|²]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomDensity {
    pub excited: f64,
    pub ground: f64,
    pub coherence: C64,
}

impl AtomDensity {
    pub(crate) fn from_amplitudes(c_e: &[C64], c_g: &[C64]) -> Self {
        let excited = c_e.iter().map(|z| z.norm_sqr()).sum();
        let ground = c_g.iter().map(|z| z.norm_sqr()).sum();
        let coherence = c_e.iter().zip(c_g).map(|(e, g)| e.conj() * g).sum();
        Self { excited, ground, coherence }
    }

    pub fn trace(&self) -> f64 {
        self.excited + self.ground
    }

    pub fn purity(&self) -> f64 {
        self.excited * self.excited + self.ground * self.ground + 2.0 * self.coherence.norm_sqr()
    }

    /// `2(1 - Tr ρ²)`, evaluated as `4 det ρ` (equal at unit trace) so
    /// that product states give exactly zero.
    pub fn linear_entropy(&self) -> f64 {
        4.0 * (self.excited * self.ground - self.coherence.norm_sqr())
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        eigenvalues_2x2(self.excited, self.ground, self.coherence)
    }

    pub fn to_matrix(&self) -> HermitianMatrix {
        HermitianMatrix::from_upper(2, |i, j| match (i, j) {
            (0, 0) => C64::new(self.excited, 0.0),
            (1, 1) => C64::new(self.ground, 0.0),
            _ => self.coherence,
        })
    }
}

impl SingleJointAmplitudes {
    /// Atom excited, field in `field`: `c_e,n(0) = f_n`, `c_g,n(0) = 0`.
    pub fn excited(field: &FockVector) -> Self {
        let c_e = field.amplitudes().to_vec();
        let c_g = vec![C64::new(0.0, 0.0); c_e.len() + 1];
        Self { c_e, c_g, time: 0.0 }
    }

    /// General initial data; `c_g` must be one longer than `c_e` and the
    /// state normalized to 1e-10.
    pub fn new(c_e: Vec<C64>, c_g: Vec<C64>, time: f64) -> Result<Self> {
        if c_e.is_empty() || c_g.len() != c_e.len() + 1 {
            return Err(Error::DimensionMismatch(c_g.len(), c_e.len() + 1));
        }
        let s = Self { c_e, c_g, time };
        if (s.norm_sqr() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidParameter(format!("state norm² {} is not 1", s.norm_sqr())));
        }
        Ok(s)
    }

    pub fn n_max(&self) -> usize {
        self.c_e.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c_e.iter().chain(&self.c_g).map(|z| z.norm_sqr()).sum()
    }

    pub fn inversion(&self) -> f64 {
        let e: f64 = self.c_e.iter().map(|z| z.norm_sqr()).sum();
        let g: f64 = self.c_g.iter().map(|z| z.norm_sqr()).sum();
        e - g
    }

    pub fn atomic_density(&self) -> AtomDensity {
        AtomDensity::from_amplitudes(&self.c_e, &self.c_g)
    }

    /// `|Σ_n c_e,n* c_g,n|`.
    pub fn coherence(&self) -> f64 {
        self.atomic_density().coherence.norm()
    }

    pub fn linear_entropy(&self) -> f64 {
        self.atomic_density().linear_entropy()
    }

    pub fn record(&self) -> SingleRecord {
        let rho = self.atomic_density();
        SingleRecord {
            time: self.time,
            inversion: rho.excited - rho.ground,
            linear_entropy: rho.linear_entropy(),
            coherence: rho.coherence.norm(),
        }
    }

    /// Multiplies each amplitude by `exp(-i E t)` with `E` the free energy
    /// `ω K†K ± ν/2` of its basis state, giving Schrödinger-picture amplitudes.
    pub fn to_schrodinger_frame(&self, params: &SingleModeParams) -> Self {
        let half_nu = 0.5 * params.nu();
        let field = |n: usize| {
            let n = n as f64;
            params.omega * n * (1.0 + params.k * (n - 1.0))
        };
        let rot = |z: &C64, e: f64| z * C64::from_polar(1.0, -e * self.time);
        Self {
            c_e: self.c_e.iter().enumerate().map(|(n, z)| rot(z, field(n) + half_nu)).collect(),
            c_g: self.c_g.iter().enumerate().map(|(n, z)| rot(z, field(n) - half_nu)).collect(),
            time: self.time,
        }
    }

    /// Flattens onto the product basis `index = 2n + a` (`a = 0` for `e`,
    /// `1` for `g`) with field cutoff `cutoff`.
    pub fn to_basis_vector(&self, cutoff: usize) -> Result<Vec<C64>> {
        if cutoff + 1 < self.c_g.len() {
            return Err(Error::DimensionMismatch(cutoff + 1, self.c_g.len()));
        }
        let mut v = vec![C64::new(0.0, 0.0); 2 * (cutoff + 1)];
        for (n, z) in self.c_e.iter().enumerate() {
            v[2 * n] = *z;
        }
        for (n, z) in self.c_g.iter().enumerate() {
            v[2 * n + 1] = *z;
        }
        Ok(v)
    }
}

/// One time sample of the single-mode observables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleRecord {
    pub time: f64,
    pub inversion: f64,
    pub linear_entropy: f64,
    pub coherence: f64,
}

/// Closed-form propagator with the per-block data computed once.
#[derive(Debug, Clone)]
pub struct SingleEvolver {
    blocks: Vec<BlockPropagator>,
}

impl SingleEvolver {
    pub fn new(params: &SingleModeParams, n_max: usize) -> Self {
        let points: Vec<SpectralPoint> = (0..=n_max).map(|n| params.spectral_point(n)).collect();
        Self::from_points(&points, params.lambda)
    }

    /// Uses the given block data verbatim (one point per `n = 0..=n_max`).
    pub fn from_points(points: &[SpectralPoint], lambda: f64) -> Self {
        Self { blocks: points.iter().map(|sp| BlockPropagator::new(sp, lambda)).collect() }
    }

    /// Evolves `initial` (given at `initial.time`) forward by `t`.
    pub fn evolve(&self, initial: &SingleJointAmplitudes, t: f64) -> Result<SingleJointAmplitudes> {
        if initial.c_e.len() != self.blocks.len() || initial.c_g.len() != self.blocks.len() + 1 {
            return Err(Error::DimensionMismatch(initial.c_e.len(), self.blocks.len()));
        }
        let mut c_e = Vec::with_capacity(initial.c_e.len());
        let mut c_g = Vec::with_capacity(initial.c_g.len());
        c_g.push(initial.c_g[0]);
        for (n, block) in self.blocks.iter().enumerate() {
            let (e, g) = block.apply(initial.c_e[n], initial.c_g[n + 1], initial.time, t);
            c_e.push(e);
            c_g.push(g);
        }
        Ok(SingleJointAmplitudes { c_e, c_g, time: initial.time + t })
    }
}

/// Atom initially excited, field `field0`; returns the state at time `t`.
pub fn evolve_single(field0: &FockVector, params: &SingleModeParams, t: f64) -> SingleJointAmplitudes {
    SingleEvolver::new(params, field0.n_max())
        .evolve(&SingleJointAmplitudes::excited(field0), t)
        .expect("dimensions agree by construction")
}

pub fn inversion_single(amps: &SingleJointAmplitudes) -> f64 {
    amps.inversion()
}

pub fn atomic_density_single(amps: &SingleJointAmplitudes) -> AtomDensity {
    amps.atomic_density()
}

pub fn coherence_single(amps: &SingleJointAmplitudes) -> f64 {
    amps.coherence()
}

pub fn linear_entropy_single(amps: &SingleJointAmplitudes) -> f64 {
    amps.linear_entropy()
}

/// Observables on every point of `grid` (absolute times).
pub fn single_timeseries(field0: &FockVector, params: &SingleModeParams, grid: &TimeGrid) -> Vec<SingleRecord> {
    let evolver = SingleEvolver::new(params, field0.n_max());
    let start = SingleJointAmplitudes::excited(field0);
    (0..grid.len())
        .into_par_iter()
        .map(|j| evolver.evolve(&start, grid.time(j)).expect("dimensions agree").record())
        .collect()
}

/// Trapezoidal `(1/T) ∫_0^T L dt` on a uniform grid of spacing `dt`.
pub fn mean_linear_entropy(field0: &FockVector, params: &SingleModeParams, t_max: f64, dt: f64) -> Result<f64> {
    let grid = TimeGrid::new(t_max, dt)?;
    let l: Vec<f64> = single_timeseries(field0, params, &grid).iter().map(|r| r.linear_entropy).collect();
    Ok(grid.trapezoid_mean(&l))
}
