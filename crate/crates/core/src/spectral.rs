//! Dense hermitian eigendecomposition (cyclic complex Jacobi) and the
//! entropy functionals built on it. Entropies are in bits throughout.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Largest tolerated `|m_ij - conj(m_ji)|` for input matrices.
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;
/// Eigenvalues above `-NEGATIVE_FLOOR` are treated as round-off and clamped.
pub const NEGATIVE_FLOOR: f64 = 1e-12;

/// Dense complex matrix, row-major, hermitian on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl HermitianMatrix {
    /// Builds from row-major entries and checks hermiticity.
    pub fn from_row_major(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("matrix dimension must be >= 1".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch(data.len(), dim * dim));
        }
        let m = Self { dim, data };
        let asym = m.max_asymmetry();
        if asym.is_nan() || asym > HERMITIAN_TOL {
            return Err(Error::NotHermitian(asym));
        }
        Ok(m)
    }

    /// Builds from the upper triangle `f(i, j)` for `i <= j`; the lower
    /// triangle is mirrored, and the diagonal is taken real.
    pub fn from_upper(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(dim > 0, "matrix dimension must be >= 1");
        let mut data = vec![C64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = C64::new(f(i, i).re, 0.0);
            for j in i + 1..dim {
                let v = f(i, j);
                data[i * dim + j] = v;
                data[j * dim + i] = v.conj();
            }
        }
        Self { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_upper(dim, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_asymmetry(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = (self.data[i * n + j] - self.data[j * n + i].conj()).norm();
                worst = worst.max(if d.is_nan() { f64::INFINITY } else { d });
            }
        }
        worst
    }

    /// Principal submatrix on the given (sorted, distinct) indices.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        Self::from_upper(indices.len(), |a, b| self.get(indices[a], indices[b]))
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        let n = self.dim;
        (0..n).map(|i| self.data[i * n..(i + 1) * n].iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}

/// Eigenvalues in ascending order, with optional unit eigenvectors.
/// `vectors[k]` belongs to `eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub vectors: Option<Vec<Vec<C64>>>,
    pub sweeps: usize,
}

/// Cyclic complex Jacobi. Iterates until the off-diagonal Frobenius norm is
/// at most `tol`; `tol = None` means `1e-12 * ||m||_F`. A `tol` of zero runs
/// to machine precision (negligible elements are then zeroed exactly).
pub fn eigen_hermitian(m: &HermitianMatrix, tol: Option<f64>, want_vectors: bool) -> Result<Spectrum> {
    let n = m.dim;
    let asym = m.max_asymmetry();
    if asym.is_nan() || asym > HERMITIAN_TOL {
        return Err(Error::NotHermitian(asym));
    }
    let tol = tol.unwrap_or(1e-12 * m.frobenius_norm());

    let mut a = m.data.clone();
    for i in 0..n {
        a[i * n + i].im = 0.0;
    }
    // column-major eigenvector accumulator: v[col * n + row]
    let mut v = if want_vectors {
        let mut v = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            v[i * n + i] = C64::new(1.0, 0.0);
        }
        v
    } else {
        Vec::new()
    };

    let off_norm = |a: &[C64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += a[i * n + j].norm_sqr();
            }
        }
        (2.0 * s).sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= tol {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        // early sweeps only rotate the larger elements
        let threshold = if sweeps < 4 { 0.2 * off / (n * n) as f64 } else { 0.0 };
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let g = apq.norm();
                if g == 0.0 || g < threshold {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                // past the first sweeps, elements below the diagonal's
                // resolution are set to zero rather than rotated
                if sweeps > 3 && app.abs() + 100.0 * g == app.abs() && aqq.abs() + 100.0 * g == aqq.abs() {
                    a[p * n + q] = C64::new(0.0, 0.0);
                    a[q * n + p] = C64::new(0.0, 0.0);
                    continue;
                }
                let phase = apq / g; // e^{iφ}
                let theta = (aqq - app) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                // U = D R with D = diag(1, conj(phase)) on (p, q) and the real
                // rotation R = [[c, s], [-s, c]]; A <- U† A U.
                let ph_c = phase.conj();
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q] * ph_c;
                    let new_rp = arp * c - arq * s;
                    let new_rq = arp * s + arq * c;
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp.conj();
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq.conj();
                }
                a[p * n + p] = C64::new(app - t * g, 0.0);
                a[q * n + q] = C64::new(aqq + t * g, 0.0);
                a[p * n + q] = C64::new(0.0, 0.0);
                a[q * n + p] = C64::new(0.0, 0.0);
                if want_vectors {
                    for r in 0..n {
                        let vrp = v[p * n + r];
                        let vrq = v[q * n + r] * ph_c;
                        v[p * n + r] = vrp * c - vrq * s;
                        v[q * n + r] = vrp * s + vrq * c;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let eigenvalues = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = want_vectors.then(|| order.iter().map(|&i| v[i * n..(i + 1) * n].to_vec()).collect());
    Ok(Spectrum { eigenvalues, vectors, sweeps })
}

/// Eigenvalues of a 2x2 hermitian matrix `[[a, b], [conj(b), d]]`, ascending.
pub fn eigenvalues_2x2(a: f64, d: f64, b: C64) -> [f64; 2] {
    let mean = 0.5 * (a + d);
    let radius = (0.5 * (a - d)).hypot(b.norm());
    [mean - radius, mean + radius]
}

/// Shannon/von Neumann entropy `-Σ p log2 p` of a probability vector (or a
/// density matrix spectrum). Round-off negatives above `-1e-12` count as
/// zero; anything more negative, or a sum off 1 by more than `1e-8`, is
/// rejected.
pub fn von_neumann_entropy(probabilities: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    let mut h = 0.0;
    for &p in probabilities {
        if p.is_nan() || p < -NEGATIVE_FLOOR {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {p:.3e}")));
        }
        sum += p;
        if p > 0.0 {
            h -= p * p.log2();
        }
    }
    if (sum - 1.0).abs() > 1e-8 {
        return Err(Error::InvalidDensity(format!("eigenvalues sum to {sum}, not 1")));
    }
    Ok(h.max(0.0))
}

pub fn entropy_of(m: &HermitianMatrix) -> Result<f64> {
    von_neumann_entropy(&eigen_hermitian(m, None, false)?.eigenvalues)
}

/// `2(1 - Tr m²)`, computed from the entries without diagonalizing.
pub fn linear_entropy_of(m: &HermitianMatrix) -> Result<f64> {
    let tr = m.trace();
    if (tr - 1.0).abs() > 1e-8 {
        return Err(Error::InvalidDensity(format!("trace {tr}, expected 1")));
    }
    let purity: f64 = m.data.iter().map(|z| z.norm_sqr()).sum();
    Ok(2.0 * (1.0 - purity))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_spectrum() {
        let s = eigen_hermitian(&HermitianMatrix::identity(5), None, true).unwrap();
        assert!(s.eigenvalues.iter().all(|&l| l == 1.0));
    }

    #[test]
    fn pauli_x() {
        let m = HermitianMatrix::from_row_major(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        let s = eigen_hermitian(&m, None, false).unwrap();
        assert_abs_diff_eq!(s.eigenvalues[0], -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.eigenvalues[1], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn complex_2x2_matches_closed_form() {
        let b = c(0.3, -0.7);
        let m = HermitianMatrix::from_upper(2, |i, j| match (i, j) {
            (0, 0) => c(0.2, 0.0),
            (1, 1) => c(-1.1, 0.0),
            _ => b,
        });
        let s = eigen_hermitian(&m, Some(0.0), true).unwrap();
        let e = eigenvalues_2x2(0.2, -1.1, b);
        assert_abs_diff_eq!(s.eigenvalues[0], e[0], epsilon = 1e-14);
        assert_abs_diff_eq!(s.eigenvalues[1], e[1], epsilon = 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let r = HermitianMatrix::from_row_major(2, vec![c(0., 0.), c(1., 0.), c(2., 0.), c(0., 0.)]);
        assert!(matches!(r, Err(Error::NotHermitian(_))));
        let r = HermitianMatrix::from_row_major(2, vec![c(0., 0.); 3]);
        assert!(matches!(r, Err(Error::DimensionMismatch(3, 4))));
    }

    #[test]
    fn entropy_values() {
        assert_eq!(von_neumann_entropy(&[1.0, 0.0]).unwrap(), 0.0);
        assert_abs_diff_eq!(von_neumann_entropy(&[0.5, 0.5]).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(von_neumann_entropy(&[0.25; 4]).unwrap(), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(von_neumann_entropy(&[0.5, 0.5, -1e-14]).unwrap(), 1.0, epsilon = 1e-13);
        assert!(von_neumann_entropy(&[1.1, -0.1]).is_err());
        assert!(von_neumann_entropy(&[0.5, 0.4]).is_err());
    }

    #[test]
    fn linear_entropy_values() {
        let pure = HermitianMatrix::from_upper(2, |_, _| c(0.5, 0.0));
        assert_abs_diff_eq!(linear_entropy_of(&pure).unwrap(), 0.0, epsilon = 1e-15);
        let mixed = HermitianMatrix::from_upper(2, |i, j| c(if i == j { 0.5 } else { 0.0 }, 0.0));
        assert_abs_diff_eq!(linear_entropy_of(&mixed).unwrap(), 1.0, epsilon = 1e-15);
        let bad = HermitianMatrix::identity(2);
        assert!(linear_entropy_of(&bad).is_err());
    }
}
