//! Initial field states as truncated Fock-amplitude vectors.
//!
//! Amplitudes come from ratio recurrences (in log-magnitude form), never
//! from factorials. Each constructor measures the probability mass lost
//! beyond `n_max` against the untruncated state, fails if it exceeds the
//! tolerance, and otherwise renormalizes the kept amplitudes to exactly one.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub const DEFAULT_TAIL_TOL: f64 = 1e-12;
/// Lower bound on automatic truncations.
pub const MIN_AUTO_NMAX: usize = 16;

/// Single-mode amplitudes `c_n` for `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amplitudes: Vec<C64>,
    truncated_mass: f64,
}

/// Two-mode state restricted to paired number states: entry `n` is the
/// coefficient of `|n, n>`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedFockVector {
    amplitudes: Vec<C64>,
    truncated_mass: f64,
}

macro_rules! fock_common {
    ($t:ty) => {
        impl $t {
            /// Wraps arbitrary amplitudes, normalizing them.
            pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
                if amplitudes.is_empty() {
                    return Err(Error::InvalidParameter("empty amplitude vector".into()));
                }
                if amplitudes.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
                    return Err(Error::InvalidParameter("non-finite amplitude".into()));
                }
                let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if norm == 0.0 {
                    return Err(Error::InvalidParameter("zero vector".into()));
                }
                Ok(Self { amplitudes: amplitudes.into_iter().map(|z| z / norm).collect(), truncated_mass: 0.0 })
            }

            pub fn amplitudes(&self) -> &[C64] {
                &self.amplitudes
            }

            pub fn n_max(&self) -> usize {
                self.amplitudes.len() - 1
            }

            /// Probability mass beyond `n_max` that was dropped before
            /// renormalization.
            pub fn truncated_mass(&self) -> f64 {
                self.truncated_mass
            }

            pub fn norm_sqr(&self) -> f64 {
                self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
            }

            pub fn probabilities(&self) -> Vec<f64> {
                self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
            }
        }
    };
}

fock_common!(FockVector);
fock_common!(PairedFockVector);

impl FockVector {
    pub fn mean_photon_number(&self) -> f64 {
        self.amplitudes.iter().enumerate().map(|(n, z)| n as f64 * z.norm_sqr()).sum()
    }
}

impl PairedFockVector {
    /// Total photon number over both modes, `Σ 2n |c_n|²`.
    pub fn mean_photon_number(&self) -> f64 {
        self.amplitudes.iter().enumerate().map(|(n, z)| 2.0 * n as f64 * z.norm_sqr()).sum()
    }
}

/// The four initial-state families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateFamily {
    Coherent {
        alpha: C64,
    },
    SqueezedVacuum {
        r: f64,
        theta: f64,
    },
    PairCoherent {
        zeta: C64,
    },
    /// `r` is the squeeze parameter; the paired amplitude ratio is `tanh r`.
    TwoModeSqueezed {
        r: f64,
    },
}

impl StateFamily {
    pub fn is_paired(&self) -> bool {
        matches!(self, Self::PairCoherent { .. } | Self::TwoModeSqueezed { .. })
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Self::Coherent { alpha } => alpha.re.is_finite() && alpha.im.is_finite(),
            Self::SqueezedVacuum { r, theta } => r.is_finite() && r >= 0.0 && theta.is_finite(),
            Self::PairCoherent { zeta } => zeta.re.is_finite() && zeta.im.is_finite(),
            Self::TwoModeSqueezed { r } => r.is_finite() && r >= 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("invalid state parameters {self:?}")))
        }
    }

    /// Mean photon number of the untruncated state (total over both modes
    /// for paired families).
    pub fn exact_mean(&self) -> f64 {
        match *self {
            Self::Coherent { alpha } => alpha.norm_sqr(),
            Self::SqueezedVacuum { r, .. } => r.sinh().powi(2),
            Self::PairCoherent { zeta } => {
                let x = zeta.norm();
                let (i0, i1) = bessel_i0_i1(2.0 * x);
                if x == 0.0 {
                    0.0
                } else {
                    2.0 * x * i1 / i0
                }
            }
            Self::TwoModeSqueezed { r } => 2.0 * r.sinh().powi(2),
        }
    }

    /// Complex amplitude at index `n` of the unnormalized-by-truncation
    /// state, generated lazily by the ratio recurrence.
    fn amplitudes(&self, len: usize) -> Vec<C64> {
        let mut out = Vec::with_capacity(len);
        match *self {
            Self::Coherent { alpha } => {
                // |c_n| = exp(-|α|²/2) |α|^n / sqrt(n!)
                let (mag, arg) = (alpha.norm(), alpha.arg());
                let ln_mag = mag.ln();
                let mut ln_c = -0.5 * mag * mag;
                for n in 0..len {
                    if n > 0 {
                        ln_c += ln_mag - 0.5 * (n as f64).ln();
                    }
                    out.push(polar(ln_c, n as f64 * arg, n == 0 || mag > 0.0));
                }
            }
            Self::SqueezedVacuum { r, theta } => {
                // c_{2l+2} / c_{2l} = -e^{iθ} tanh r sqrt((2l+1)/(2l+2))
                let ln_tanh = r.tanh().ln();
                let mut ln_c = -0.5 * r.cosh().ln();
                for n in 0..len {
                    if n % 2 == 1 {
                        out.push(C64::new(0.0, 0.0));
                        continue;
                    }
                    let l = n / 2;
                    if l > 0 {
                        ln_c += ln_tanh + 0.5 * (((2 * l - 1) as f64) / ((2 * l) as f64)).ln();
                    }
                    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                    out.push(sign * polar(ln_c, l as f64 * theta, l == 0 || r > 0.0));
                }
            }
            Self::PairCoherent { zeta } => {
                // c_n = ζ^n / n! / sqrt(I0(2|ζ|))
                let (mag, arg) = (zeta.norm(), zeta.arg());
                let ln_mag = mag.ln();
                let (i0, _) = bessel_i0_i1(2.0 * mag);
                let mut ln_c = -0.5 * i0.ln();
                for n in 0..len {
                    if n > 0 {
                        ln_c += ln_mag - (n as f64).ln();
                    }
                    out.push(polar(ln_c, n as f64 * arg, n == 0 || mag > 0.0));
                }
            }
            Self::TwoModeSqueezed { r } => {
                let mu = r.tanh();
                let ln_mu = mu.ln();
                let ln_c0 = 0.5 * (1.0 - mu * mu).ln();
                for n in 0..len {
                    let ln_c = if n == 0 { ln_c0 } else { ln_c0 + n as f64 * ln_mu };
                    out.push(polar(ln_c, 0.0, n == 0 || mu > 0.0));
                }
            }
        }
        out
    }

    /// Probability mass beyond `n_max`, summed from the far tail inwards.
    pub fn tail_mass(&self, n_max: usize) -> f64 {
        let mut tail = 0.0;
        let mut n = n_max + 1;
        // generate in chunks until terms stop contributing
        loop {
            let chunk = 256;
            let amps = self.amplitudes(n + chunk);
            let probs: Vec<f64> = amps[n..].iter().map(|z| z.norm_sqr()).collect();
            let add: f64 = probs.iter().rev().sum();
            tail += add;
            // compare windows so the zero odd entries of the squeezed
            // vacuum do not look like convergence
            let len = probs.len();
            let last = probs[len - 8..].iter().cloned().fold(0.0, f64::max);
            let before = probs[len - 16..len - 8].iter().cloned().fold(0.0, f64::max);
            if (last <= before && last <= 1e-300_f64.max(tail * 1e-18)) || add == 0.0 {
                return tail;
            }
            n += chunk;
            if n > 1 << 22 {
                return tail;
            }
        }
    }

    /// Smallest `n_max` (not below [`MIN_AUTO_NMAX`]) whose dropped tail is
    /// under `tail_tol`.
    pub fn auto_truncation(&self, tail_tol: f64) -> usize {
        // the tail is non-increasing in n_max, so bracket then bisect
        let mut n = MIN_AUTO_NMAX.max(self.exact_mean().floor() as usize);
        let mut step = 64;
        while self.tail_mass(n) >= tail_tol {
            n += step;
            step *= 2;
        }
        // binary refine in (n - step/2, n]
        let mut lo = n.saturating_sub(step / 2).max(MIN_AUTO_NMAX);
        let mut hi = n;
        if self.tail_mass(lo) < tail_tol {
            return lo;
        }
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.tail_mass(mid) < tail_tol {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    fn build(&self, n_max: usize, tail_tol: f64) -> Result<(Vec<C64>, f64)> {
        self.validate()?;
        if !(tail_tol > 0.0 && tail_tol < 1.0) {
            return Err(Error::InvalidParameter(format!("tail tolerance must be in (0, 1), got {tail_tol}")));
        }
        let tail = self.tail_mass(n_max);
        if tail >= tail_tol {
            return Err(Error::Truncation { n_max, tail, tol: tail_tol });
        }
        let mut amps = self.amplitudes(n_max + 1);
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut amps {
            *z /= norm;
        }
        Ok((amps, tail))
    }

    pub fn single(&self, n_max: usize, tail_tol: f64) -> Result<FockVector> {
        if self.is_paired() {
            return Err(Error::WrongRepresentation(format!("{self:?} is a paired two-mode state")));
        }
        let (amplitudes, truncated_mass) = self.build(n_max, tail_tol)?;
        Ok(FockVector { amplitudes, truncated_mass })
    }

    pub fn paired(&self, n_max: usize, tail_tol: f64) -> Result<PairedFockVector> {
        if !self.is_paired() {
            return Err(Error::WrongRepresentation(format!("{self:?} is a single-mode state")));
        }
        let (amplitudes, truncated_mass) = self.build(n_max, tail_tol)?;
        Ok(PairedFockVector { amplitudes, truncated_mass })
    }
}

fn polar(ln_mag: f64, arg: f64, nonzero: bool) -> C64 {
    if !nonzero {
        return C64::new(0.0, 0.0);
    }
    C64::from_polar(ln_mag.exp(), arg)
}

/// `I0(x)` and `I1(x)` by their power series, summed to convergence.
pub fn bessel_i0_i1(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let (mut t0, mut t1) = (1.0, 0.5 * x);
    let (mut i0, mut i1) = (t0, t1);
    let mut m = 0.0;
    loop {
        m += 1.0;
        t0 *= q / (m * m);
        t1 *= q / (m * (m + 1.0));
        i0 += t0;
        i1 += t1;
        if t0 <= i0 * 1e-17 && t1 <= i1 * 1e-17 && m > 0.5 * x {
            return (i0, i1);
        }
    }
}

pub fn coherent(alpha: C64, n_max: usize) -> Result<FockVector> {
    StateFamily::Coherent { alpha }.single(n_max, DEFAULT_TAIL_TOL)
}

pub fn squeezed_vacuum(r: f64, theta: f64, n_max: usize) -> Result<FockVector> {
    StateFamily::SqueezedVacuum { r, theta }.single(n_max, DEFAULT_TAIL_TOL)
}

pub fn pair_coherent(zeta: C64, n_max: usize) -> Result<PairedFockVector> {
    StateFamily::PairCoherent { zeta }.paired(n_max, DEFAULT_TAIL_TOL)
}

pub fn two_mode_squeezed_vacuum(r: f64, n_max: usize) -> Result<PairedFockVector> {
    StateFamily::TwoModeSqueezed { r }.paired(n_max, DEFAULT_TAIL_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn vacuum_limits() {
        let v = coherent(re(0.0), 20).unwrap();
        assert_eq!(v.amplitudes()[0], re(1.0));
        assert!(v.amplitudes()[1..].iter().all(|z| *z == re(0.0)));
        let v = squeezed_vacuum(0.0, 0.0, 20).unwrap();
        assert_abs_diff_eq!(v.amplitudes()[0].re, 1.0, epsilon = 1e-15);
        assert!(v.amplitudes()[1..].iter().all(|z| *z == re(0.0)));
        let v = pair_coherent(re(0.0), 20).unwrap();
        assert_eq!(v.amplitudes()[0], re(1.0));
        assert_eq!(v.mean_photon_number(), 0.0);
        let v = two_mode_squeezed_vacuum(0.0, 20).unwrap();
        assert_eq!(v.amplitudes()[0], re(1.0));
    }

    #[test]
    fn coherent_mean_thirty() {
        let v = coherent(re(30f64.sqrt()), 150).unwrap();
        assert_abs_diff_eq!(v.mean_photon_number(), 30.0, epsilon = 1e-9);
    }

    #[test]
    fn coherent_unit_amplitude_normalized_before_rescaling() {
        let fam = StateFamily::Coherent { alpha: re(1.0) };
        let raw: f64 = fam.amplitudes(33).iter().map(|z| z.norm_sqr()).sum();
        assert_abs_diff_eq!(raw, 1.0, epsilon = 1e-12);
        assert!(fam.tail_mass(32) < 1e-30);
    }

    #[test]
    fn coherent_recurrence() {
        let alpha = C64::new(1.3, -0.4);
        let v = coherent(alpha, 60).unwrap();
        let a = v.amplitudes();
        for n in 0..60 {
            let expected = a[n] * alpha / ((n + 1) as f64).sqrt();
            assert!((a[n + 1] - expected).norm() <= 1e-15 * (1.0 + a[n].norm()));
        }
    }

    #[test]
    fn squeezed_vacuum_odd_zero_and_mean() {
        let fam = StateFamily::SqueezedVacuum { r: 2.402, theta: 0.0 };
        assert_abs_diff_eq!(fam.exact_mean(), 30.0, epsilon = 0.1);
        let n_max = fam.auto_truncation(DEFAULT_TAIL_TOL);
        let v = fam.single(n_max, DEFAULT_TAIL_TOL).unwrap();
        assert!(v.amplitudes().iter().skip(1).step_by(2).all(|z| *z == re(0.0)));
        assert_abs_diff_eq!(v.mean_photon_number(), 30.0, epsilon = 0.1);
        // the first coefficients follow the closed form directly
        let t = 2.402f64.tanh();
        let c0 = 1.0 / 2.402f64.cosh().sqrt();
        assert_abs_diff_eq!(v.amplitudes()[2].re, -c0 * t * (2f64).sqrt() / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v.amplitudes()[4].re, c0 * t * t * (24f64).sqrt() / 8.0, epsilon = 1e-12);
    }

    #[test]
    fn squeezed_vacuum_mean_thirty_needs_long_tail() {
        let fam = StateFamily::SqueezedVacuum { r: 2.402, theta: 0.0 };
        assert!(matches!(fam.single(150, DEFAULT_TAIL_TOL), Err(Error::Truncation { .. })));
        assert!(fam.tail_mass(150) > 1e-2);
    }

    #[test]
    fn pair_coherent_mean_three() {
        let v = pair_coherent(re(1.778), 40).unwrap();
        assert_abs_diff_eq!(v.mean_photon_number(), 3.0, epsilon = 0.05);
        assert_abs_diff_eq!(v.norm_sqr(), 1.0, epsilon = 1e-12);
        assert!(v.amplitudes().iter().all(|z| z.re > 0.0 && z.im == 0.0));
        // before renormalization the kept mass already equals one
        let raw: f64 = StateFamily::PairCoherent { zeta: re(1.778) }.amplitudes(41).iter().map(|z| z.norm_sqr()).sum();
        assert_abs_diff_eq!(raw, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn two_mode_squeezed_geometric() {
        let r = 1.032;
        let mu = f64::tanh(r);
        let fam = StateFamily::TwoModeSqueezed { r };
        assert_abs_diff_eq!(fam.exact_mean(), 3.0, epsilon = 0.05);
        assert_abs_diff_eq!(fam.tail_mass(60), mu.powi(2 * 61), epsilon = 1e-20);
        let raw: f64 = fam.amplitudes(61).iter().map(|z| z.norm_sqr()).sum();
        assert_abs_diff_eq!(raw, 1.0 - mu.powi(2 * 61), epsilon = 1e-15);
        let v = fam.paired(60, DEFAULT_TAIL_TOL).unwrap();
        assert_abs_diff_eq!(v.mean_photon_number(), 3.0, epsilon = 0.05);
    }

    #[test]
    fn representation_checks() {
        assert!(StateFamily::PairCoherent { zeta: re(1.0) }.single(30, 1e-12).is_err());
        assert!(StateFamily::Coherent { alpha: re(1.0) }.paired(30, 1e-12).is_err());
        assert!(StateFamily::SqueezedVacuum { r: -1.0, theta: 0.0 }.single(30, 1e-12).is_err());
    }

    #[test]
    fn auto_truncation_ranges() {
        let tol = DEFAULT_TAIL_TOL;
        // Poisson(30) survival: P(N > 75) = 1.48e-12, P(N > 76) = 5.71e-13
        let n = StateFamily::Coherent { alpha: re(30f64.sqrt()) }.auto_truncation(tol);
        assert_eq!(n, 76);
        assert!(StateFamily::Coherent { alpha: re(30f64.sqrt()) }.tail_mass(n) < tol);
        assert!(StateFamily::Coherent { alpha: re(30f64.sqrt()) }.tail_mass(n - 1) >= tol);
        assert_eq!(StateFamily::Coherent { alpha: re(0.0) }.auto_truncation(tol), MIN_AUTO_NMAX);
        // geometric tail mu^(2(n+1)) with mu^2 = tanh(1.032)^2 drops below 1e-12 at n = 54
        let tsv = StateFamily::TwoModeSqueezed { r: 1.032 };
        assert_eq!(tsv.auto_truncation(tol), 54);
        // the pair coherent distribution falls off like 1/(n!)^2 and sits at the floor
        let pc = StateFamily::PairCoherent { zeta: re(1.778) };
        assert_eq!(pc.auto_truncation(tol), MIN_AUTO_NMAX);
        assert!(pc.tail_mass(MIN_AUTO_NMAX) < 1e-15);
    }

    #[test]
    fn bessel_series() {
        let (i0, i1) = bessel_i0_i1(1.0);
        assert_abs_diff_eq!(i0, 1.266065877752008, epsilon = 1e-14);
        assert_abs_diff_eq!(i1, 0.565159103992485, epsilon = 1e-14);
    }
}
