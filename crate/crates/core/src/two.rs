//! Two-mode dynamics over paired states `Σ c_e,n |e,n,n> + c_g,n |g,n,n>`
//! and the bipartite entanglement measures of the atom–mode–mode system.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::block::BlockPropagator;
use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::model::{SpectralPoint, TwoModeParams};
use crate::single::AtomDensity;
use crate::spectral::{eigen_hermitian, eigenvalues_2x2, von_neumann_entropy, HermitianMatrix};
use crate::states::PairedFockVector;

/// Populations below this are left out of the field matrix before
/// diagonalizing; their entropy contribution is below double precision.
const SUPPORT_FLOOR: f64 = 1e-30;

/// Paired joint amplitudes; `c_e[n]` multiplies `|e,n,n>` (`n = 0..=n_max`),
/// `c_g[n]` multiplies `|g,n,n>` (`n = 0..=n_max+1`).
#[derive(Debug, Clone, PartialEq)]
pub struct PairedJointAmplitudes {
    pub c_e: Vec<C64>,
    pub c_g: Vec<C64>,
    pub time: f64,
}

/// Observables of one time sample. Averaged records carry the window length
/// in `time`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementRecord {
    pub time: f64,
    pub w_t: f64,
    pub tangle_a_ff: f64,
    pub tangle_af1_f2: f64,
    pub tangle_af2_f1: f64,
    pub relative_entropy: f64,
    pub coherence: f64,
}

impl PairedJointAmplitudes {
    pub fn excited(field: &PairedFockVector) -> Self {
        let c_e = field.amplitudes().to_vec();
        let c_g = vec![C64::new(0.0, 0.0); c_e.len() + 1];
        Self { c_e, c_g, time: 0.0 }
    }

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

    fn ce(&self, n: usize) -> C64 {
        self.c_e.get(n).copied().unwrap_or_default()
    }

    pub fn inversion(&self) -> f64 {
        self.atomic_density().excited - self.atomic_density().ground
    }

    pub fn atomic_density(&self) -> AtomDensity {
        AtomDensity::from_amplitudes(&self.c_e, &self.c_g)
    }

    pub fn coherence(&self) -> f64 {
        self.atomic_density().coherence.norm()
    }

    /// Linear entropy of the atom, `2(1 - Tr ρ_A²)`.
    pub fn tangle_a_ff(&self) -> f64 {
        self.atomic_density().linear_entropy()
    }

    /// `p_n = |c_e,n|² + |c_g,n|²`: the spectrum of either single-mode
    /// reduction, which is diagonal in the paired basis.
    pub fn pair_populations(&self) -> Vec<f64> {
        (0..self.c_g.len()).map(|n| self.ce(n).norm_sqr() + self.c_g[n].norm_sqr()).collect()
    }

    /// Atom plus first mode, basis index `2n + a` (`a = 0` for `e`).
    /// Block diagonal with one 2x2 block per `n`.
    pub fn rho_a_f1(&self) -> HermitianMatrix {
        let dim = 2 * self.c_g.len();
        HermitianMatrix::from_upper(dim, |i, j| {
            if i / 2 != j / 2 {
                return C64::new(0.0, 0.0);
            }
            let n = i / 2;
            let (e, g) = (self.ce(n), self.c_g[n]);
            match (i % 2, j % 2) {
                (0, 0) => C64::new(e.norm_sqr(), 0.0),
                (1, 1) => C64::new(g.norm_sqr(), 0.0),
                _ => e * g.conj(),
            }
        })
    }

    /// Eigenvalues of `ρ_{A⊗F}` for either mode, from its 2x2 blocks.
    fn cut_spectrum(&self) -> Vec<f64> {
        (0..self.c_g.len())
            .flat_map(|n| {
                let (e, g) = (self.ce(n), self.c_g[n]);
                eigenvalues_2x2(e.norm_sqr(), g.norm_sqr(), e * g.conj())
            })
            .collect()
    }

    /// `S(ρ_{A⊗F1})`, the entanglement of mode 2 with the rest.
    pub fn tangle_af1_f2(&self) -> Result<f64> {
        von_neumann_entropy(&self.cut_spectrum())
    }

    /// `S(ρ_{A⊗F2})`. Exchanging the modes leaves the paired amplitudes
    /// unchanged, so this is the same computation as [`Self::tangle_af1_f2`].
    pub fn tangle_af2_f1(&self) -> Result<f64> {
        von_neumann_entropy(&self.cut_spectrum())
    }

    /// `S(ρ_{F2}) = H(p_n)`; equal to the block-eigenvalue route above.
    pub fn field_mode_entropy(&self) -> Result<f64> {
        von_neumann_entropy(&self.pair_populations())
    }

    /// Field-field reduction `a_{n,m} = c_e,n c_e,m* + c_g,n c_g,m*` on `|n,n>`.
    pub fn rho_f1f2(&self) -> HermitianMatrix {
        let dim = self.c_g.len();
        HermitianMatrix::from_upper(dim, |n, m| self.ce(n) * self.ce(m).conj() + self.c_g[n] * self.c_g[m].conj())
    }

    /// `E = H(diag a) - S(a)`, the entropy gained by dephasing the field
    /// state in the paired basis.
    pub fn relative_entropy(&self) -> Result<f64> {
        let p = self.pair_populations();
        let support: Vec<usize> = (0..p.len()).filter(|&n| p[n] > SUPPORT_FLOOR).collect();
        let a = self.rho_f1f2().principal_submatrix(&support);
        let s = von_neumann_entropy(&eigen_hermitian(&a, None, false)?.eigenvalues)?;
        let e = von_neumann_entropy(&p)? - s;
        if e < -1e-10 {
            return Err(Error::InvalidDensity(format!("negative relative entropy {e:.3e}")));
        }
        Ok(e.max(0.0))
    }

    pub fn record(&self) -> Result<EntanglementRecord> {
        let rho = self.atomic_density();
        let tangle = self.tangle_af1_f2()?;
        Ok(EntanglementRecord {
            time: self.time,
            w_t: rho.excited - rho.ground,
            tangle_a_ff: rho.linear_entropy(),
            tangle_af1_f2: tangle,
            tangle_af2_f1: self.tangle_af2_f1()?,
            relative_entropy: self.relative_entropy()?,
            coherence: rho.coherence.norm(),
        })
    }

    /// Schrödinger-picture amplitudes: each basis state picks up
    /// `exp(-i E t)` with `E = (ω1+ω2) n(1 + k(n-1)) ± ν/2`.
    pub fn to_schrodinger_frame(&self, params: &TwoModeParams) -> Self {
        let half_nu = 0.5 * params.nu();
        let w = params.omega_sum();
        let field = |n: usize| {
            let n = n as f64;
            w * n * (1.0 + params.k * (n - 1.0))
        };
        let rot = |z: &C64, e: f64| z * C64::from_polar(1.0, -e * self.time);
        Self {
            c_e: self.c_e.iter().enumerate().map(|(n, z)| rot(z, field(n) + half_nu)).collect(),
            c_g: self.c_g.iter().enumerate().map(|(n, z)| rot(z, field(n) - half_nu)).collect(),
            time: self.time,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TwoEvolver {
    blocks: Vec<BlockPropagator>,
}

impl TwoEvolver {
    pub fn new(params: &TwoModeParams, n_max: usize) -> Self {
        let points: Vec<SpectralPoint> = (0..=n_max).map(|n| params.spectral_point(n)).collect();
        Self::from_points(&points, params.lambda)
    }

    /// Uses the given block data verbatim (one point per `n = 0..=n_max`).
    pub fn from_points(points: &[SpectralPoint], lambda: f64) -> Self {
        Self { blocks: points.iter().map(|sp| BlockPropagator::new(sp, lambda)).collect() }
    }

    /// Couples `(c_e,n, c_g,n+1)` for each `n`; `c_g,0` is untouched.
    pub fn evolve(&self, initial: &PairedJointAmplitudes, t: f64) -> Result<PairedJointAmplitudes> {
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
        Ok(PairedJointAmplitudes { c_e, c_g, time: initial.time + t })
    }
}

pub fn evolve_two(field0: &PairedFockVector, params: &TwoModeParams, t: f64) -> PairedJointAmplitudes {
    TwoEvolver::new(params, field0.n_max())
        .evolve(&PairedJointAmplitudes::excited(field0), t)
        .expect("dimensions agree by construction")
}

pub fn inversion_two(amps: &PairedJointAmplitudes) -> f64 {
    amps.inversion()
}

pub fn atomic_density_two(amps: &PairedJointAmplitudes) -> AtomDensity {
    amps.atomic_density()
}

pub fn tangle_a_ff(amps: &PairedJointAmplitudes) -> f64 {
    amps.tangle_a_ff()
}

pub fn rho_a_f1(amps: &PairedJointAmplitudes) -> HermitianMatrix {
    amps.rho_a_f1()
}

pub fn tangle_af1_f2(amps: &PairedJointAmplitudes) -> Result<f64> {
    amps.tangle_af1_f2()
}

pub fn tangle_af2_f1(amps: &PairedJointAmplitudes) -> Result<f64> {
    amps.tangle_af2_f1()
}

pub fn rho_f1f2(amps: &PairedJointAmplitudes) -> HermitianMatrix {
    amps.rho_f1f2()
}

pub fn relative_entropy(amps: &PairedJointAmplitudes) -> Result<f64> {
    amps.relative_entropy()
}

pub fn two_timeseries(
    field0: &PairedFockVector,
    params: &TwoModeParams,
    grid: &TimeGrid,
) -> Result<Vec<EntanglementRecord>> {
    let evolver = TwoEvolver::new(params, field0.n_max());
    let start = PairedJointAmplitudes::excited(field0);
    (0..grid.len()).into_par_iter().map(|j| evolver.evolve(&start, grid.time(j))?.record()).collect()
}

/// Trapezoidal time averages of every record field over `[0, T]`.
pub fn mean_measures(
    field0: &PairedFockVector,
    params: &TwoModeParams,
    t_max: f64,
    dt: f64,
) -> Result<EntanglementRecord> {
    let grid = TimeGrid::new(t_max, dt)?;
    let records = two_timeseries(field0, params, &grid)?;
    let mean = |f: fn(&EntanglementRecord) -> f64| grid.trapezoid_mean(&records.iter().map(f).collect::<Vec<_>>());
    Ok(EntanglementRecord {
        time: grid.t_max(),
        w_t: mean(|r| r.w_t),
        tangle_a_ff: mean(|r| r.tangle_a_ff),
        tangle_af1_f2: mean(|r| r.tangle_af1_f2),
        tangle_af2_f1: mean(|r| r.tangle_af2_f1),
        relative_entropy: mean(|r| r.relative_entropy),
        coherence: mean(|r| r.coherence),
    })
}
