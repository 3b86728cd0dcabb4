//! Self-check suite: oracle comparisons, operator algebra, and the pointwise
//! identities of both models.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::model::{SingleModeParams, SpectralPoint, TwoModeParams};
use crate::oracle::{
    build_deformed_ops, build_hamiltonian_single, build_hamiltonian_two, check_algebra, compare, paired_leakage,
    Deviation, Propagator,
};
use crate::single::{SingleEvolver, SingleJointAmplitudes};
use crate::spectral::eigenvalues_2x2;
use crate::states::{coherent, pair_coherent, squeezed_vacuum, two_mode_squeezed_vacuum, FockVector, PairedFockVector};
use crate::two::{PairedJointAmplitudes, TwoEvolver};

/// Field cutoff of the oracle scenarios.
pub const ORACLE_NMAX: usize = 60;
pub const ORACLE_TIMES: [f64; 3] = [1.0, 10.0, 50.0];
pub const ORACLE_TOL: f64 = 1e-8;
pub const ALGEBRA_TOL: f64 = 1e-12;
pub const IDENTITY_TOL: f64 = 1e-12;
pub const ENTROPY_PATH_TOL: f64 = 1e-10;
pub const NORM_TOL: f64 = 1e-10;

/// Faults to inject into the closed form, for checking that the suite can
/// fail.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Mutation {
    pub flip_eta_sign: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: f64,
}

impl Check {
    fn new(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self { name: name.into(), value, limit }
    }

    pub fn passed(&self) -> bool {
        self.value <= self.limit
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Largest full-phase oracle deviation over all scenarios.
    pub fn max_oracle_deviation(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.name.starts_with("oracle.") && c.name.ends_with(".max_abs"))
            .map(|c| c.value)
            .fold(0.0, f64::max)
    }

    /// `key=value` lines between `[validation]` and `[end]`.
    pub fn machine_readable(&self) -> String {
        let mut out = String::from("[validation]\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{}.value={:e}\n{}.limit={:e}\n{}.pass={}\n",
                c.name,
                c.value,
                c.name,
                c.limit,
                c.name,
                c.passed()
            ));
        }
        out.push_str(&format!("max_oracle_deviation={:e}\n", self.max_oracle_deviation()));
        out.push_str(&format!("checks={}\nfailures={}\n", self.checks.len(), self.failures().count()));
        out.push_str(&format!("status={}\n[end]\n", if self.passed() { "pass" } else { "fail" }));
        out
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(f, "{tag}  {:<48} {:>12.3e}  (limit {:.0e})", c.name, c.value, c.limit)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

fn mutate(mut points: Vec<SpectralPoint>, m: Mutation) -> Vec<SpectralPoint> {
    if m.flip_eta_sign {
        for p in &mut points {
            p.eta = -p.eta;
        }
    }
    points
}

fn single_oracle(field: &FockVector, params: &SingleModeParams, m: Mutation) -> Result<(Deviation, f64)> {
    let cutoff = field.n_max() + 1;
    let prop = Propagator::new(&build_hamiltonian_single(params, cutoff)?)?;
    let points = mutate((0..=field.n_max()).map(|n| params.spectral_point(n)).collect(), m);
    let evolver = SingleEvolver::from_points(&points, params.lambda);
    let start = SingleJointAmplitudes::excited(field);
    let psi0 = start.to_basis_vector(cutoff)?;
    let mut worst = Deviation { max_abs: 0.0, max_phase_insensitive: 0.0 };
    let mut norm_err: f64 = 0.0;
    for lt in ORACLE_TIMES {
        let t = lt / params.lambda;
        let reference = prop.apply(&psi0, t)?;
        norm_err = norm_err.max((reference.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs());
        let closed = evolver.evolve(&start, t)?.to_schrodinger_frame(params).to_basis_vector(cutoff)?;
        worst = worst.worst(compare(&closed, &reference)?);
    }
    Ok((worst, norm_err))
}

fn two_oracle(field: &PairedFockVector, params: &TwoModeParams, m: Mutation) -> Result<(Deviation, f64)> {
    let cutoff = field.n_max() + 1;
    let prop = Propagator::new(&build_hamiltonian_two(params, cutoff)?)?;
    let points = mutate((0..=field.n_max()).map(|n| params.spectral_point(n)).collect(), m);
    let evolver = TwoEvolver::from_points(&points, params.lambda);
    let start = PairedJointAmplitudes::excited(field);
    let flatten = |s: &PairedJointAmplitudes| {
        let mut v = vec![C64::new(0.0, 0.0); 2 * (cutoff + 1)];
        for (n, z) in s.c_e.iter().enumerate() {
            v[2 * n] = *z;
        }
        for (n, z) in s.c_g.iter().enumerate() {
            v[2 * n + 1] = *z;
        }
        v
    };
    let psi0 = flatten(&start);
    let mut worst = Deviation { max_abs: 0.0, max_phase_insensitive: 0.0 };
    let mut norm_err: f64 = 0.0;
    for lt in ORACLE_TIMES {
        let t = lt / params.lambda;
        let reference = prop.apply(&psi0, t)?;
        norm_err = norm_err.max((reference.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs());
        let closed = flatten(&evolver.evolve(&start, t)?.to_schrodinger_frame(params));
        worst = worst.worst(compare(&closed, &reference)?);
    }
    Ok((worst, norm_err))
}

fn push_oracle(checks: &mut Vec<Check>, name: &str, (d, norm): (Deviation, f64)) {
    checks.push(Check::new(format!("oracle.{name}.max_abs"), d.max_abs, ORACLE_TOL));
    checks.push(Check::new(format!("oracle.{name}.phase_insensitive"), d.max_phase_insensitive, ORACLE_TOL));
    checks.push(Check::new(format!("oracle.{name}.unitarity"), norm, NORM_TOL));
}

/// Runs every check; the closed form is perturbed as described by `mutation`.
pub fn run_validation(mutation: Mutation) -> Result<ValidationReport> {
    let mut checks = Vec::new();

    // 100-dimensional truncation, last two levels excluded
    for k in [0.0, 1e-4, 1e-3, 0.5, 1.0] {
        let ops = build_deformed_ops(99, k)?;
        checks.push(Check::new(format!("algebra.k={k}"), check_algebra(&ops, 97)?, ALGEBRA_TOL));
    }

    let single = SingleModeParams::scaled(1e-3, 1e-3, 0.01)?;
    let two = TwoModeParams::scaled(2e-3, 2e-3, 0.0161)?;

    let h = build_hamiltonian_single(&single, 21)?;
    let gap = (0..20)
        .map(|n| {
            let (e, g) = (2 * n, 2 * n + 3);
            let [lo, hi] = eigenvalues_2x2(h.get(e, e).re, h.get(g, g).re, h.get(e, g));
            ((hi - lo) - single.spectral_point(n).omega_n).abs()
        })
        .fold(0.0, f64::max);
    checks.push(Check::new("hamiltonian.single.block_gap", gap, IDENTITY_TOL));
    let h = build_hamiltonian_two(&two, 21)?;
    let gap = (0..20)
        .map(|n| {
            let (e, g) = (2 * n, 2 * n + 3);
            let [lo, hi] = eigenvalues_2x2(h.get(e, e).re, h.get(g, g).re, h.get(e, g));
            ((hi - lo) - two.spectral_point(n).omega_n).abs()
        })
        .fold(0.0, f64::max);
    checks.push(Check::new("hamiltonian.two.block_gap", gap, IDENTITY_TOL));
    checks.push(Check::new("hamiltonian.two.paired_leakage", paired_leakage(&two, 8)?, 0.0));

    let cs = coherent(C64::new(5f64.sqrt(), 0.0), ORACLE_NMAX)?;
    let sv = squeezed_vacuum(0.5, 0.0, ORACLE_NMAX)?;
    let pc = pair_coherent(C64::new(1.778, 0.0), ORACLE_NMAX)?;
    let tsv = two_mode_squeezed_vacuum(1.032, ORACLE_NMAX)?;
    push_oracle(&mut checks, "single.coherent", single_oracle(&cs, &single, mutation)?);
    push_oracle(&mut checks, "single.squeezed_vacuum", single_oracle(&sv, &single, mutation)?);
    push_oracle(&mut checks, "two.pair_coherent", two_oracle(&pc, &two, mutation)?);
    push_oracle(&mut checks, "two.two_mode_squeezed", two_oracle(&tsv, &two, mutation)?);

    // pointwise identities along λt ∈ [0, 100] (single) and [0, 20] (two)
    let field = coherent(C64::new(30f64.sqrt(), 0.0), 100)?;
    let p = SingleModeParams::scaled(1e-3, 1e-4, 0.016061)?;
    let ev = SingleEvolver::new(&p, field.n_max());
    let start = SingleJointAmplitudes::excited(&field);
    let (mut ident, mut norm) = (0.0f64, 0.0f64);
    for j in 0..=200 {
        let s = ev.evolve(&start, 0.5 * j as f64 / p.lambda)?;
        let (w, c) = (s.inversion(), s.coherence());
        ident = ident.max((s.linear_entropy() - (1.0 - w * w - 4.0 * c * c)).abs());
        norm = norm.max((s.norm_sqr() - 1.0).abs());
    }
    checks.push(Check::new("identity.single.linear_entropy", ident, IDENTITY_TOL));
    checks.push(Check::new("identity.single.norm", norm, NORM_TOL));

    let (mut ident, mut sym, mut paths, mut norm) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for field in [pair_coherent(C64::new(1.778, 0.0), 40)?, two_mode_squeezed_vacuum(1.032, 54)?] {
        let ev = TwoEvolver::new(&two, field.n_max());
        let start = PairedJointAmplitudes::excited(&field);
        for j in 0..=100 {
            let s = ev.evolve(&start, 0.2 * j as f64 / two.lambda)?;
            let r = s.record()?;
            ident = ident.max((r.w_t * r.w_t - (1.0 - r.tangle_a_ff - 4.0 * r.coherence * r.coherence)).abs());
            sym = sym.max((r.tangle_af1_f2 - r.tangle_af2_f1).abs());
            paths = paths.max((s.field_mode_entropy()? - r.tangle_af1_f2).abs());
            norm = norm.max((s.norm_sqr() - 1.0).abs());
        }
    }
    checks.push(Check::new("identity.two.inversion_tangle", ident, IDENTITY_TOL));
    checks.push(Check::new("identity.two.exchange_symmetry", sym, 0.0));
    checks.push(Check::new("identity.two.entropy_paths", paths, ENTROPY_PATH_TOL));
    checks.push(Check::new("identity.two.norm", norm, NORM_TOL));

    Ok(ValidationReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_build_passes() {
        let report = run_validation(Mutation::default()).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.max_oracle_deviation() < ORACLE_TOL);
        let text = report.machine_readable();
        assert!(text.starts_with("[validation]\n") && text.ends_with("status=pass\n[end]\n"));
    }

    #[test]
    fn eta_sign_flip_is_caught() {
        let report = run_validation(Mutation { flip_eta_sign: true }).unwrap();
        assert!(!report.passed());
        assert!(!report.get("oracle.single.coherent.max_abs").unwrap().passed());
        assert!(!report.get("oracle.two.pair_coherent.max_abs").unwrap().passed());
    }
}
