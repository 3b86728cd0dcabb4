//! The 2x2 invariant-block propagator shared by both models.
//!
//! Amplitudes are kept in the interaction picture of the free Hamiltonian
//! (field energy plus `ν/2 σz`). For a block with effective detuning `Δ_n`,
//! coupling `λη` and Rabi frequency `Ω`:
//!
//! ```text
//! e^{-iΔ_n t/2} c_e(t) = [cos(Ωt/2) - i Δ_n/Ω sin(Ωt/2)] c_e(0) - i 2λη/Ω sin(Ωt/2) c_g(0)
//! e^{+iΔ_n t/2} c_g(t) = [cos(Ωt/2) + i Δ_n/Ω sin(Ωt/2)] c_g(0) - i 2λη/Ω sin(Ωt/2) c_e(0)
//! ```

use num_complex::Complex64 as C64;

use crate::model::SpectralPoint;

#[derive(Debug, Clone, Copy)]
pub(crate) struct BlockPropagator {
    delta_n: f64,
    omega_n: f64,
    coupling: f64,
}

impl BlockPropagator {
    pub(crate) fn new(sp: &SpectralPoint, lambda: f64) -> Self {
        Self { delta_n: sp.delta_n, omega_n: sp.omega_n, coupling: 2.0 * lambda * sp.eta }
    }

    /// Evolves `(c_e,n, c_g,n+1)` given at time `t0` forward by `t`. The
    /// interaction-picture coupling carries `e^{±iΔ_n t}`, so the start time
    /// matters unless the state starts at `t0 = 0`.
    #[inline]
    pub(crate) fn apply(&self, ce: C64, cg: C64, t0: f64, t: f64) -> (C64, C64) {
        let (ce, cg) = if t0 == 0.0 {
            (ce, cg)
        } else {
            let back = C64::from_polar(1.0, -0.5 * self.delta_n * t0);
            (ce * back, cg * back.conj())
        };
        let (s, c) = (0.5 * self.omega_n * t).sin_cos();
        // Ω = 0 only when both coupling and detuning vanish: the block is frozen.
        let (d, x) = if self.omega_n > 0.0 {
            (self.delta_n / self.omega_n, self.coupling / self.omega_n * s)
        } else {
            (0.0, 0.0)
        };
        let ee = C64::new(c, -d * s);
        let gg = C64::new(c, d * s);
        let off = C64::new(0.0, -x);
        let phase = C64::from_polar(1.0, 0.5 * self.delta_n * (t0 + t));
        ((ee * ce + off * cg) * phase, (gg * cg + off * ce) * phase.conj())
    }
}
