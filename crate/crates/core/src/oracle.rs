//! Brute-force reference: dense truncated operators, Hamiltonians assembled
//! from operator products, and exact exponentiation by diagonalization.
//! Nothing here uses the closed-form block solution.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::model::{SingleModeParams, TwoModeParams};
use crate::spectral::{eigen_hermitian, HermitianMatrix};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Dense square matrix on a truncated Fock space (or a product of them).
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    dim: usize,
    data: Vec<C64>,
}

impl TruncatedOperator {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { C64::new(1.0, 0.0) } else { ZERO })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.data[i * n + l];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.data[l * n + j];
                }
            }
        }
        Self { dim: n, data: out }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.matmul(other).sub(&other.matmul(self))
    }

    /// Kronecker product; `self` is the slow (outer) index.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        Self::from_fn(a * b, |i, j| self.get(i / b, j / b) * other.get(i % b, j % b))
    }

    /// Largest `|entry|` with both indices below `interior_dim`.
    pub fn max_abs_interior(&self, interior_dim: usize) -> f64 {
        let m = interior_dim.min(self.dim);
        (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| self.get(i, j).norm()).fold(0.0, f64::max)
    }

    pub fn to_hermitian(&self) -> Result<HermitianMatrix> {
        HermitianMatrix::from_row_major(self.dim, self.data.clone())
    }
}

/// `K`, `K†` and `K0` on Fock states `0..=n_max`. `k_minus_lo[n]` holds
/// the rounding residual of `<n-1|K|n>` so the algebra can be checked in
/// double-double arithmetic.
#[derive(Debug, Clone)]
pub struct DeformedOps {
    pub k_minus: TruncatedOperator,
    pub k_plus: TruncatedOperator,
    pub k0: TruncatedOperator,
    pub k: f64,
    pub k_minus_lo: Vec<f64>,
}

pub fn build_deformed_ops(n_max: usize, k: f64) -> Result<DeformedOps> {
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!("n_max must be at least 2, got {n_max}")));
    }
    if !(k.is_finite() && k >= 0.0) {
        return Err(Error::InvalidParameter(format!("k must be >= 0, got {k}")));
    }
    let dim = n_max + 1;
    // <n-1|K|n> = sqrt(n (1 + k(n-1)))
    let ladder: Vec<Dd> = (0..dim).map(|n| ladder_element(n, k)).collect();
    let k_minus = TruncatedOperator::from_fn(dim, |i, j| if j == i + 1 { C64::new(ladder[j].hi, 0.0) } else { ZERO });
    let k_plus = k_minus.adjoint();
    let k0 = TruncatedOperator::from_fn(dim, |i, j| if i == j { C64::new(k * i as f64 + 0.5, 0.0) } else { ZERO });
    Ok(DeformedOps { k_minus, k_plus, k0, k, k_minus_lo: ladder.iter().map(|d| d.lo).collect() })
}

fn ladder_element(n: usize, k: f64) -> Dd {
    let n = n as f64;
    Dd::from(n).mul(Dd::from(1.0).add(Dd::prod(k, n - 1.0))).sqrt()
}

/// Largest interior violation of `[K,K†] = 2K0`, `[K0,K†] = kK†` and
/// `[K0,K] = -kK` (at `k = 0` the first is `[a,a†] = 1`). The products are
/// formed in double-double precision from the stored entries plus their
/// residuals, so the result reflects the algebra rather than round-off.
pub fn check_algebra(ops: &DeformedOps, interior_dim: usize) -> Result<f64> {
    let dim = ops.k0.dim();
    if interior_dim + 3 > dim {
        return Err(Error::InvalidParameter(format!(
            "interior_dim {interior_dim} must be at most n_max - 2 = {}",
            dim as i64 - 3
        )));
    }
    let k_minus = DdMatrix::from_fn(dim, |i, j| {
        let hi = ops.k_minus.get(i, j).re;
        if j == i + 1 {
            Dd { hi, lo: ops.k_minus_lo[j] }
        } else {
            Dd::from(hi)
        }
    });
    let k_plus = k_minus.transpose();
    let k0 = DdMatrix::from_fn(dim, |i, j| Dd::from(ops.k0.get(i, j).re));
    let k = Dd::from(ops.k);
    let first = k_minus.commutator(&k_plus).sub(&k0.scale(Dd::from(2.0)));
    let second = k0.commutator(&k_plus).sub(&k_plus.scale(k));
    let third = k0.commutator(&k_minus).add(&k_minus.scale(k));
    Ok([first, second, third].iter().map(|m| m.max_abs_interior(interior_dim)).fold(0.0, f64::max))
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl From<f64> for Dd {
    fn from(hi: f64) -> Self {
        Self { hi, lo: 0.0 }
    }
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        Self { hi: s, lo: (a - (s - bb)) + (b - bb) }
    }

    fn quick(a: f64, b: f64) -> Self {
        let s = a + b;
        Self { hi: s, lo: b - (s - a) }
    }

    /// Exact product of two doubles.
    fn prod(a: f64, b: f64) -> Self {
        let p = a * b;
        Self { hi: p, lo: a.mul_add(b, -p) }
    }

    fn add(self, o: Self) -> Self {
        let s = Self::two_sum(self.hi, o.hi);
        let t = Self::two_sum(self.lo, o.lo);
        let u = Self::quick(s.hi, s.lo + t.hi);
        Self::quick(u.hi, u.lo + t.lo)
    }

    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }

    fn mul(self, o: Self) -> Self {
        let p = Self::prod(self.hi, o.hi);
        Self::quick(p.hi, p.lo + (self.hi * o.lo + self.lo * o.hi))
    }

    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::ZERO;
        }
        let r = self.hi.sqrt();
        // one Newton step: r + (x - r²) / 2r
        let residual = self.add(Self::prod(r, r).neg());
        Self::quick(r, residual.hi / (2.0 * r))
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

#[derive(Debug, Clone)]
struct DdMatrix {
    dim: usize,
    data: Vec<Dd>,
}

impl DdMatrix {
    fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Dd) -> Self {
        let data = (0..dim * dim).map(|ij| f(ij / dim, ij % dim)).collect();
        Self { dim, data }
    }

    fn get(&self, i: usize, j: usize) -> Dd {
        self.data[i * self.dim + j]
    }

    fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i))
    }

    fn matmul(&self, o: &Self) -> Self {
        let n = self.dim;
        let mut out = vec![Dd::ZERO; n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.data[i * n + l];
                if a.hi == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let b = o.data[l * n + j];
                    if b.hi != 0.0 {
                        out[i * n + j] = out[i * n + j].add(a.mul(b));
                    }
                }
            }
        }
        Self { dim: n, data: out }
    }

    fn scale(&self, s: Dd) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|a| a.mul(s)).collect() }
    }

    fn add(&self, o: &Self) -> Self {
        Self { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(*b)).collect() }
    }

    fn sub(&self, o: &Self) -> Self {
        Self { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b.neg())).collect() }
    }

    fn commutator(&self, o: &Self) -> Self {
        self.matmul(o).sub(&o.matmul(self))
    }

    fn max_abs_interior(&self, interior_dim: usize) -> f64 {
        let m = interior_dim.min(self.dim);
        (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| self.get(i, j).to_f64().abs()).fold(0.0, f64::max)
    }
}

/// Atom operators on `{|e>, |g>}` (index 0 = e).
fn sigma_z() -> TruncatedOperator {
    TruncatedOperator::from_fn(2, |i, j| match (i, j) {
        (0, 0) => C64::new(1.0, 0.0),
        (1, 1) => C64::new(-1.0, 0.0),
        _ => ZERO,
    })
}

/// `σ- = |g><e|`.
fn sigma_minus() -> TruncatedOperator {
    TruncatedOperator::from_fn(2, |i, j| if (i, j) == (1, 0) { C64::new(1.0, 0.0) } else { ZERO })
}

/// `ω K†K + ν/2 σz + λ(K† σ- + K σ+)` on field states `0..=n_max`, basis
/// index `2n + a`.
pub fn build_hamiltonian_single(params: &SingleModeParams, n_max: usize) -> Result<HermitianMatrix> {
    let ops = build_deformed_ops(n_max, params.k)?;
    let dim = n_max + 1;
    let field = ops.k_plus.matmul(&ops.k_minus).scale(params.omega).kron(&TruncatedOperator::identity(2));
    let atom = TruncatedOperator::identity(dim).kron(&sigma_z()).scale(0.5 * params.nu());
    let raise = ops.k_plus.kron(&sigma_minus()).scale(params.lambda);
    field.add(&atom).add(&raise).add(&raise.adjoint()).to_hermitian()
}

/// Paired restriction of `O1 ⊗ O2`: `<m,m| O1 ⊗ O2 |n,n> = O1_mn O2_mn`.
fn paired_restriction(o1: &TruncatedOperator, o2: &TruncatedOperator) -> TruncatedOperator {
    TruncatedOperator::from_fn(o1.dim(), |m, n| o1.get(m, n) * o2.get(m, n))
}

/// `ω1 K1†K1 + ω2 K2†K2 + ν/2 σz + λ(K1†K2† σ- + K1K2 σ+)` restricted to
/// paired states `|n,n>`, `n = 0..=n_max`, basis index `2n + a`.
pub fn build_hamiltonian_two(params: &TwoModeParams, n_max: usize) -> Result<HermitianMatrix> {
    let ops = build_deformed_ops(n_max, params.k)?;
    let dim = n_max + 1;
    let id = TruncatedOperator::identity(dim);
    let number = ops.k_plus.matmul(&ops.k_minus);
    let field = paired_restriction(&number.scale(params.omega1), &id)
        .add(&paired_restriction(&id, &number.scale(params.omega2)))
        .kron(&TruncatedOperator::identity(2));
    let atom = id.kron(&sigma_z()).scale(0.5 * params.nu());
    let raise = paired_restriction(&ops.k_plus, &ops.k_plus).kron(&sigma_minus()).scale(params.lambda);
    field.add(&atom).add(&raise).add(&raise.adjoint()).to_hermitian()
}

/// Weight that `H` on the full two-mode product space sends from paired
/// states `|n,n>` (with `n + 1 <= n_max`) to unpaired ones; zero when the
/// paired subspace is invariant.
pub fn paired_leakage(params: &TwoModeParams, n_max: usize) -> Result<f64> {
    let ops = build_deformed_ops(n_max, params.k)?;
    let dim = n_max + 1;
    let id = TruncatedOperator::identity(dim);
    let number = ops.k_plus.matmul(&ops.k_minus);
    let field = number.scale(params.omega1).kron(&id).add(&id.kron(&number.scale(params.omega2)));
    let pair_up = ops.k_plus.kron(&ops.k_plus);
    let id2 = TruncatedOperator::identity(2);
    let h = field
        .kron(&id2)
        .add(&id.kron(&id).kron(&sigma_z()).scale(0.5 * params.nu()))
        .add(&pair_up.kron(&sigma_minus()).scale(params.lambda))
        .add(&pair_up.adjoint().kron(&sigma_minus().adjoint()).scale(params.lambda));
    // product index: (n1 * dim + n2) * 2 + a
    let mut leak: f64 = 0.0;
    for n in 0..n_max {
        for a in 0..2 {
            let col = (n * dim + n) * 2 + a;
            for row in 0..h.dim() {
                let (pair, _) = (row / 2, row % 2);
                if pair / dim != pair % dim {
                    leak = leak.max(h.get(row, col).norm());
                }
            }
        }
    }
    Ok(leak)
}

/// `exp(-iHt)` through a full eigendecomposition of `H`.
#[derive(Debug, Clone)]
pub struct Propagator {
    energies: Vec<f64>,
    vectors: Vec<Vec<C64>>,
}

impl Propagator {
    pub fn new(h: &HermitianMatrix) -> Result<Self> {
        let spectrum = eigen_hermitian(h, Some(0.0), true)?;
        let vectors = spectrum.vectors.expect("eigenvectors were requested");
        Ok(Self { energies: spectrum.eigenvalues, vectors })
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn apply(&self, psi0: &[C64], t: f64) -> Result<Vec<C64>> {
        let dim = self.energies.len();
        if psi0.len() != dim {
            return Err(Error::DimensionMismatch(psi0.len(), dim));
        }
        let mut out = vec![ZERO; dim];
        for (e, v) in self.energies.iter().zip(&self.vectors) {
            let overlap: C64 = v.iter().zip(psi0).map(|(a, b)| a.conj() * b).sum();
            let coeff = overlap * C64::from_polar(1.0, -e * t);
            for (o, a) in out.iter_mut().zip(v) {
                *o += coeff * a;
            }
        }
        Ok(out)
    }
}

pub fn integrate(h: &HermitianMatrix, psi0: &[C64], t: f64) -> Result<Vec<C64>> {
    Propagator::new(h)?.apply(psi0, t)
}

/// Largest amplitude difference, with and without phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviation {
    pub max_abs: f64,
    pub max_phase_insensitive: f64,
}

impl Deviation {
    pub fn worst(self, other: Self) -> Self {
        Self {
            max_abs: self.max_abs.max(other.max_abs),
            max_phase_insensitive: self.max_phase_insensitive.max(other.max_phase_insensitive),
        }
    }
}

pub fn compare(closed_form: &[C64], oracle_state: &[C64]) -> Result<Deviation> {
    if closed_form.len() != oracle_state.len() {
        return Err(Error::DimensionMismatch(closed_form.len(), oracle_state.len()));
    }
    let mut d = Deviation { max_abs: 0.0, max_phase_insensitive: 0.0 };
    for (a, b) in closed_form.iter().zip(oracle_state) {
        d.max_abs = d.max_abs.max((a - b).norm());
        d.max_phase_insensitive = d.max_phase_insensitive.max((a.norm() - b.norm()).abs());
    }
    Ok(d)
}
