//! Model parameters and the per-photon-number spectral quantities of the
//! deformed Jaynes-Cummings Hamiltonians.
//!
//! The field operators are deformed as `K = sqrt(1 + k a†a) a`. With this
//! choice the single-mode Hamiltonian
//!
//! ```text
//! H_S = ω K†K + ν/2 σz + λ (K† σ- + K σ+)
//! ```
//!
//! and its two-mode extension
//!
//! ```text
//! H_T = ω1 K1†K1 + ω2 K2†K2 + ν/2 σz + λ (K1† K2† σ- + K1 K2 σ+)
//! ```
//!
//! split into independent 2x2 blocks labelled by a photon number `n`. Each
//! block is characterized by an interaction matrix element `η`, an effective
//! detuning and a generalized Rabi frequency; all of them are collected here.
//!
//! Units are scaled: the single-mode field frequency is 1, and the two mode
//! frequencies default to 1/2 each so that `ω1 + ω2 = 1`.

use crate::error::{Error, Result};

fn check_common(lambda: f64, k: f64, delta: f64) -> Result<()> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidParameter(format!("coupling lambda must be > 0, got {lambda}")));
    }
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::InvalidParameter(format!("deformation k must lie in [0, 1], got {k}")));
    }
    if !delta.is_finite() {
        return Err(Error::InvalidParameter(format!("detuning must be finite, got {delta}")));
    }
    Ok(())
}

/// Parameters of the single-mode Hamiltonian. The atomic frequency is kept
/// implicitly through the detuning `Δ = ν - ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleModeParams {
    pub omega: f64,
    pub lambda: f64,
    pub k: f64,
    pub delta: f64,
}

impl SingleModeParams {
    pub fn new(omega: f64, lambda: f64, k: f64, delta: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidParameter(format!("field frequency must be > 0, got {omega}")));
        }
        check_common(lambda, k, delta)?;
        Ok(Self { omega, lambda, k, delta })
    }

    /// Scaled units, `ω = 1`.
    pub fn scaled(lambda: f64, k: f64, delta: f64) -> Result<Self> {
        Self::new(1.0, lambda, k, delta)
    }

    pub fn with_delta(self, delta: f64) -> Result<Self> {
        Self::new(self.omega, self.lambda, self.k, delta)
    }

    /// Atomic transition frequency `ν = Δ + ω`.
    pub fn nu(&self) -> f64 {
        self.delta + self.omega
    }

    /// Kerr strength `χ = kω`.
    pub fn kerr(&self) -> f64 {
        self.k * self.omega
    }

    pub fn spectral_point(&self, n: usize) -> SpectralPoint {
        SpectralPoint::new(n, eta_single(n, self.k), detuning_single(n, self), self.lambda)
    }
}

/// Parameters of the two-mode Hamiltonian with a common deformation `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeParams {
    pub omega1: f64,
    pub omega2: f64,
    pub lambda: f64,
    pub k: f64,
    pub delta: f64,
}

impl TwoModeParams {
    pub fn new(omega1: f64, omega2: f64, lambda: f64, k: f64, delta: f64) -> Result<Self> {
        for (name, w) in [("omega1", omega1), ("omega2", omega2)] {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be > 0, got {w}")));
            }
        }
        check_common(lambda, k, delta)?;
        Ok(Self { omega1, omega2, lambda, k, delta })
    }

    /// Scaled units, `ω1 = ω2 = 1/2`.
    pub fn scaled(lambda: f64, k: f64, delta: f64) -> Result<Self> {
        Self::new(0.5, 0.5, lambda, k, delta)
    }

    pub fn with_delta(self, delta: f64) -> Result<Self> {
        Self::new(self.omega1, self.omega2, self.lambda, self.k, delta)
    }

    pub fn omega_sum(&self) -> f64 {
        self.omega1 + self.omega2
    }

    /// `ν = Δ + ω1 + ω2`.
    pub fn nu(&self) -> f64 {
        self.delta + self.omega_sum()
    }

    pub fn spectral_point(&self, n: usize) -> SpectralPoint {
        SpectralPoint::new(n, eta_two(n, self.k), detuning_two(n, self), self.lambda)
    }
}

/// Block data for photon number `n`: `Ω_n = sqrt(Δ_n² + 4λ²η_n²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub n: usize,
    pub eta: f64,
    pub delta_n: f64,
    pub omega_n: f64,
}

impl SpectralPoint {
    fn new(n: usize, eta: f64, delta_n: f64, lambda: f64) -> Self {
        let omega_n = rabi(delta_n, lambda, eta);
        Self { n, eta, delta_n, omega_n }
    }
}

fn rabi(delta_n: f64, lambda: f64, eta: f64) -> f64 {
    (2.0 * lambda * eta).hypot(delta_n)
}

/// `η_n = sqrt((1+n)(1+kn))`.
pub fn eta_single(n: usize, k: f64) -> f64 {
    let n = n as f64;
    ((1.0 + n) * (1.0 + k * n)).sqrt()
}

/// `Δ_n = Δ - 2kωn`.
pub fn detuning_single(n: usize, params: &SingleModeParams) -> f64 {
    params.delta - 2.0 * params.k * params.omega * n as f64
}

pub fn rabi_single(n: usize, params: &SingleModeParams) -> f64 {
    rabi(detuning_single(n, params), params.lambda, eta_single(n, params.k))
}

/// Detuning at which the single-mode Rabi frequency is minimal at photon
/// number `n_bar`.
pub fn critical_detuning_single(n_bar: f64, params: &SingleModeParams) -> Result<f64> {
    let SingleModeParams { omega, lambda, k, .. } = *params;
    if k == 0.0 {
        return Err(Error::ZeroDeformation);
    }
    let l2 = lambda * lambda;
    Ok((n_bar * 2.0 * k * omega * (k + l2) + l2 * omega * omega * (1.0 + k)) / k)
}

/// Photon number at which the single-mode Rabi frequency is minimal for a
/// given detuning. Negative results mean the minimum lies outside the
/// physical range.
pub fn n_bar_single(delta: f64, params: &SingleModeParams) -> Result<f64> {
    let SingleModeParams { omega, lambda, k, .. } = *params;
    if k == 0.0 {
        return Err(Error::ZeroDeformation);
    }
    let l2 = lambda * lambda;
    Ok((k * delta - l2 * omega * omega * (1.0 + k)) / (2.0 * k * omega * (k + l2)))
}

/// `η_{n,n} = (1+n)(1+kn)`; no square root, since both modes contribute a
/// factor `sqrt((1+n)(1+kn))`.
pub fn eta_two(n: usize, k: f64) -> f64 {
    let n = n as f64;
    (1.0 + n) * (1.0 + k * n)
}

/// `Δ_{n,n} = Δ - 2kω1 n - 2kω2 n`.
pub fn detuning_two(n: usize, params: &TwoModeParams) -> f64 {
    let n = n as f64;
    params.delta - 2.0 * params.k * params.omega1 * n - 2.0 * params.k * params.omega2 * n
}

pub fn rabi_two(n: usize, params: &TwoModeParams) -> f64 {
    rabi(detuning_two(n, params), params.lambda, eta_two(n, params.k))
}

/// Two-mode critical detuning for total mean photon number `n_total = 2n̄`,
/// with `ω` read as `ω1 + ω2`.
pub fn critical_detuning_two(n_total: f64, params: &TwoModeParams) -> Result<f64> {
    let k = params.k;
    if k == 0.0 {
        return Err(Error::ZeroDeformation);
    }
    let omega = params.omega_sum();
    let g2 = params.lambda * params.lambda;
    let n = n_total;
    let bracket = (1.0 + k) * (2.0 + n + k * n + 1.5 * n * n * k) + 0.5 * n * n * n * k * k;
    Ok(k * omega * n + g2 / (k * omega) * bracket)
}
