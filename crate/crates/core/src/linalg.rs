//! Small dense complex linear algebra.
//!
//! Everything here works on square matrices of modest size (two-qubit
//! operators are 4×4, the joint output of a two-qubit cloner is 16×16).
//! Matrices are compared with the maximum absolute entry difference.
//!
//! Two-qubit operators use the basis order |00⟩, |01⟩, |10⟩, |11⟩ with the
//! first qubit as the most significant index.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Complex = Complex64;

/// Tolerance for Hermiticity checks on inputs.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues in `[-PSD_CLAMP, 0)` are treated as roundoff and clamped to zero.
pub const PSD_CLAMP: f64 = 1e-10;

const JACOBI_OFF_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

pub(crate) const fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Dense square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. Rejects non-square input and
    /// non-finite entries.
    pub fn new(dim: usize, data: Vec<Complex>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::dim(format!("{dim}x{dim} entries"), data.len()));
        }
        if let Some(k) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: k / dim,
                col: k % dim,
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<Complex>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::dim(format!("row of length {dim}"), bad.len()));
        }
        Self::new(dim, rows.iter().flatten().copied().collect())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| c(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Internal constructor for values computed from already-valid matrices.
    pub(crate) fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| Complex::ZERO)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(
            dim,
            |i, j| if i == j { Complex::ONE } else { Complex::ZERO },
        )
    }

    pub fn diag(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                c(values[i], 0.0)
            } else {
                Complex::ZERO
            }
        })
    }

    /// Outer product |u⟩⟨v|.
    pub fn outer(u: &[Complex], v: &[Complex]) -> Self {
        assert_eq!(u.len(), v.len(), "outer product of unequal lengths");
        Self::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn trace(&self) -> Complex {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)] * s)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute entry difference; `f64::INFINITY` when dimensions differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// (M + M†)/2.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    pub fn matvec(&self, v: &[Complex]) -> Vec<Complex> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    fn assert_same_dim(&self, other: &Self) {
        assert_eq!(
            self.dim, other.dim,
            "matrix dimension mismatch: {} vs {}",
            self.dim, other.dim
        );
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.assert_same_dim(rhs);
        ComplexMatrix::from_fn(self.dim, |i, j| self[(i, j)] + rhs[(i, j)])
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.assert_same_dim(rhs);
        ComplexMatrix::from_fn(self.dim, |i, j| self[(i, j)] - rhs[(i, j)])
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.assert_same_dim(rhs);
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Eigenvalues in descending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<Complex>>,
}

impl SpectralDecomposition {
    /// V·diag(f(λ))·V†.
    pub fn rebuild_with(&self, mut f: impl FnMut(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let mut out = ComplexMatrix::zeros(n);
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            let w = f(*lambda);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vi = v[i] * w;
                for j in 0..n {
                    out[(i, j)] += vi * v[j].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.rebuild_with(|x| x)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation first removes the phase of the pivot `a[p][q]` with a
/// diagonal unitary and then applies the real Jacobi rotation that
/// annihilates the now-real pivot. Converges when the off-diagonal Frobenius
/// norm drops below 1e-13.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<SpectralDecomposition> {
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian { defect });
    }
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&a);
    while off >= JACOBI_OFF_TOL {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                off_norm: off,
                sweeps,
            });
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let g = a[(p, q)];
                let r = g.norm();
                if r < 1e-300 {
                    continue;
                }
                let phase = g / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;

                // column transform U on (p, q): U = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
                let upp = c(cs, 0.0);
                let upq = c(sn, 0.0);
                let uqp = -phase.conj() * sn;
                let uqq = phase.conj() * cs;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * upp + akq * uqp;
                    a[(k, q)] = akp * upq + akq * uqq;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * upp + vkq * uqp;
                    v[(k, q)] = vkp * upq + vkq * uqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
                    a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
                }
                a[(p, q)] = Complex::ZERO;
                a[(q, p)] = Complex::ZERO;
                a[(p, p)] = c(a[(p, p)].re, 0.0);
                a[(q, q)] = c(a[(q, q)].re, 0.0);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = order
        .iter()
        .map(|&j| (0..n).map(|i| v[(i, j)]).collect())
        .collect();
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    let min = eig.min_eigenvalue();
    if min < -PSD_CLAMP {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    Ok(eig.rebuild_with(|x| x.max(0.0).sqrt()))
}

/// Kronecker product A ⊗ B.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let db = b.dim();
    ComplexMatrix::from_fn(a.dim() * db, |r, s| {
        a[(r / db, s / db)] * b[(r % db, s % db)]
    })
}

/// Which subsystem survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

/// Partial trace of an operator on a dA·dB space.
pub fn partial_trace(m: &ComplexMatrix, dims: (usize, usize), keep: Keep) -> Result<ComplexMatrix> {
    let (da, db) = dims;
    if da == 0 || db == 0 || m.dim() != da * db {
        return Err(Error::dim(format!("{da}*{db}"), m.dim()));
    }
    Ok(match keep {
        Keep::First => ComplexMatrix::from_fn(da, |a, b| {
            (0..db).map(|k| m[(a * db + k, b * db + k)]).sum()
        }),
        Keep::Second => ComplexMatrix::from_fn(db, |k, l| {
            (0..da).map(|a| m[(a * db + k, a * db + l)]).sum()
        }),
    })
}

/// Transpose on the second tensor factor of a dA·dB operator.
pub(crate) fn partial_transpose_dims(
    m: &ComplexMatrix,
    dims: (usize, usize),
) -> Result<ComplexMatrix> {
    let (da, db) = dims;
    if m.dim() != da * db {
        return Err(Error::dim(format!("{da}*{db}"), m.dim()));
    }
    Ok(ComplexMatrix::from_fn(m.dim(), |r, s| {
        let (a, n) = (r / db, r % db);
        let (b, mm) = (s / db, s % db);
        m[(a * db + mm, b * db + n)]
    }))
}

/// Partial transpose of a two-qubit operator on the second qubit:
/// `out[2a+n][2b+m] = in[2a+m][2b+n]`.
pub fn partial_transpose(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if m.dim() != 4 {
        return Err(Error::dim("4", m.dim()));
    }
    partial_transpose_dims(m, (2, 2))
}

/// Pauli matrices σ_x, σ_y, σ_z.
pub fn pauli() -> [ComplexMatrix; 3] {
    let z = Complex::ZERO;
    let one = Complex::ONE;
    let i = Complex::I;
    [
        ComplexMatrix::from_fn(2, |r, s| if r != s { one } else { z }),
        ComplexMatrix::from_fn(2, |r, s| match (r, s) {
            (0, 1) => -i,
            (1, 0) => i,
            _ => z,
        }),
        ComplexMatrix::diag(&[1.0, -1.0]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        random_matrix(rng, n).hermitian_part()
    }

    fn singlet_projector() -> ComplexMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = vec![Complex::ZERO, c(s, 0.0), c(-s, 0.0), Complex::ZERO];
        ComplexMatrix::outer(&v, &v)
    }

    #[test]
    fn eig_identity() {
        let eig = hermitian_eig(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0; 4]);
    }

    #[test]
    fn eig_pauli_x() {
        let eig = hermitian_eig(&pauli()[0]).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] + 1.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // eigenvectors up to a global phase
        let v0 = &eig.eigenvectors[0];
        let ov0 = (v0[0] * s + v0[1] * s).norm();
        assert!((ov0 - 1.0).abs() < 1e-12);
        let v1 = &eig.eigenvectors[1];
        let ov1 = (v1[0] * s - v1[1] * s).norm();
        assert!((ov1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2, 3, 4, 8, 16] {
            for _ in 0..20 {
                let h = random_hermitian(&mut rng, n);
                let eig = hermitian_eig(&h).unwrap();
                assert!(eig.reconstruct().max_abs_diff(&h) < 1e-12, "n={n}");
                assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
                for (i, u) in eig.eigenvectors.iter().enumerate() {
                    for (j, w) in eig.eigenvectors.iter().enumerate() {
                        let dot: Complex = u.iter().zip(w).map(|(a, b)| a.conj() * b).sum();
                        let want = if i == j { 1.0 } else { 0.0 };
                        assert!((dot - want).norm() < 1e-10);
                    }
                }
                let sum: f64 = eig.eigenvalues.iter().sum();
                assert!((sum - h.trace().re).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn sqrt_cases() {
        let id = ComplexMatrix::identity(4);
        assert!(psd_sqrt(&id).unwrap().max_abs_diff(&id) < 1e-14);
        let r = psd_sqrt(&ComplexMatrix::diag(&[4.0, 1.0, 0.0, 9.0])).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::diag(&[2.0, 1.0, 0.0, 3.0])) < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 4);
            let m = &a.adjoint() * &a;
            let r = psd_sqrt(&m).unwrap();
            assert!((&r * &r).max_abs_diff(&m) < 1e-9);
            assert!(r.hermitian_defect() < 1e-12);
        }
        assert!(matches!(
            psd_sqrt(&ComplexMatrix::diag(&[1.0, -0.1])),
            Err(Error::NotPsd { .. })
        ));
        assert!(psd_sqrt(&ComplexMatrix::diag(&[1.0, -1e-11])).is_ok());
    }

    #[test]
    fn kron_cases() {
        let [sx, sy, sz] = pauli();
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        assert_eq!(kron(&sz, &sz), ComplexMatrix::diag(&[1.0, -1.0, -1.0, 1.0]));
        let k = kron(&sx, &sy);
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        assert_eq!(k[(i * 2 + p, j * 2 + q)], sx[(i, j)] * sy[(p, q)]);
                    }
                }
            }
        }
    }

    #[test]
    fn partial_transpose_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_hermitian(&mut rng, 2);
        let b = random_hermitian(&mut rng, 2);
        let pt = partial_transpose(&kron(&a, &b)).unwrap();
        assert!(pt.max_abs_diff(&kron(&a, &b.transpose())) < 1e-15);

        let eig = hermitian_eig(&partial_transpose(&singlet_projector()).unwrap()).unwrap();
        assert!((eig.min_eigenvalue() + 0.5).abs() < 1e-12);

        let m = random_matrix(&mut rng, 4);
        assert_eq!(
            partial_transpose(&partial_transpose(&m).unwrap()).unwrap(),
            m
        );
        assert!((partial_transpose(&m).unwrap().trace() - m.trace()).norm() < 1e-15);

        assert!(matches!(
            partial_transpose(&ComplexMatrix::identity(3)),
            Err(Error::BadDimension { .. })
        ));
    }

    #[test]
    fn partial_trace_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_hermitian(&mut rng, 2);
        let b = ComplexMatrix::diag(&[0.3, 0.7]);
        let pa = partial_trace(&kron(&a, &b), (2, 2), Keep::First).unwrap();
        assert!(pa.max_abs_diff(&a) < 1e-15);

        let alpha: f64 = 0.6;
        let beta = (1.0 - alpha * alpha).sqrt();
        let v = vec![Complex::ZERO, c(alpha, 0.0), c(-beta, 0.0), Complex::ZERO];
        let rho = ComplexMatrix::outer(&v, &v);
        // index-sum oracle: (Tr_B ρ)_{ab} = Σ_k ρ_{(a,k),(b,k)}
        let mut oracle = ComplexMatrix::zeros(2);
        for a in 0..2 {
            for b in 0..2 {
                for k in 0..2 {
                    oracle[(a, b)] += rho[(2 * a + k, 2 * b + k)];
                }
            }
        }
        let red = partial_trace(&rho, (2, 2), Keep::First).unwrap();
        assert!(red.max_abs_diff(&oracle) < 1e-15);
        assert!(red.max_abs_diff(&ComplexMatrix::diag(&[alpha * alpha, beta * beta])) < 1e-15);

        let mixed = ComplexMatrix::identity(4).scale(0.25);
        let rb = partial_trace(&mixed, (2, 2), Keep::Second).unwrap();
        assert!(rb.max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-15);

        assert!(partial_trace(&mixed, (2, 3), Keep::First).is_err());
    }

    #[test]
    fn constructor_rejects_nan() {
        let r = ComplexMatrix::from_real_rows(&[vec![1.0, f64::NAN], vec![0.0, 1.0]]);
        assert!(matches!(r, Err(Error::NonFinite { row: 0, col: 1 })));
    }
}
