//! CHSH correlations of two-qubit states.
//!
//! With `T_ij = Tr[ρ σ_i ⊗ σ_j]` the correlation of spin measurements along
//! unit vectors `a` and `b` is `E(a, b) = aᵀ T b`, and the CHSH quantity is
//!
//! ```text
//! B = |E(a,b) − E(a′,b) + E(a,b′) + E(a′,b′)|
//! ```
//!
//! Its maximum over all measurement directions is `2√(u₁ + u₂)`, where
//! `u₁ ≥ u₂` are the two largest eigenvalues of `TᵀT`.

use std::f64::consts::{FRAC_PI_4, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eig, kron, pauli, ComplexMatrix};
use crate::states::DensityMatrix;

const UNIT_TOL: f64 = 1e-12;
const IMAG_TOL: f64 = 1e-10;

pub const DEFAULT_RESTARTS: usize = 64;

/// Unit 3-vector giving a spin measurement direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementVector([f64; 3]);

impl MeasurementVector {
    pub fn new(components: [f64; 3]) -> Result<Self> {
        let norm = norm3(&components);
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::OutOfRange {
                name: "measurement vector norm",
                value: norm,
                range: "1 +/- 1e-12",
            });
        }
        Ok(Self(components))
    }

    /// Direction at polar angle `theta` from ẑ and azimuth `phi` from x̂.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self([
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
            theta.cos(),
        ])
    }

    pub fn x() -> Self {
        Self([1.0, 0.0, 0.0])
    }

    pub fn y() -> Self {
        Self([0.0, 1.0, 0.0])
    }

    pub fn z() -> Self {
        Self([0.0, 0.0, 1.0])
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }
}

/// Directions a, a′ for the first qubit and b, b′ for the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshConfig {
    pub a: MeasurementVector,
    pub a_prime: MeasurementVector,
    pub b: MeasurementVector,
    pub b_prime: MeasurementVector,
}

/// Real 3×3 matrix `T_ij = Tr[ρ σ_i ⊗ σ_j]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMatrix(pub [[f64; 3]; 3]);

impl CorrelationMatrix {
    pub fn apply(&self, v: &[f64; 3]) -> [f64; 3] {
        let t = &self.0;
        [
            t[0][0] * v[0] + t[0][1] * v[1] + t[0][2] * v[2],
            t[1][0] * v[0] + t[1][1] * v[1] + t[1][2] * v[2],
            t[2][0] * v[0] + t[2][1] * v[1] + t[2][2] * v[2],
        ]
    }

    /// Eigenvalues of TᵀT in descending order.
    pub fn singular_spectrum(&self) -> [f64; 3] {
        let t = &self.0;
        let u = ComplexMatrix::from_fn(3, |i, j| c((0..3).map(|k| t[k][i] * t[k][j]).sum(), 0.0));
        let eig = hermitian_eig(&u).expect("TᵀT is real symmetric");
        [
            eig.eigenvalues[0].max(0.0),
            eig.eigenvalues[1].max(0.0),
            eig.eigenvalues[2].max(0.0),
        ]
    }
}

fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn dot3(u: &[f64; 3], v: &[f64; 3]) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub fn correlation_matrix(rho: &DensityMatrix) -> Result<CorrelationMatrix> {
    rho.require_two_qubit()?;
    let sigma = pauli();
    let mut t = [[0.0; 3]; 3];
    for (i, si) in sigma.iter().enumerate() {
        for (j, sj) in sigma.iter().enumerate() {
            let value = (rho.matrix() * &kron(si, sj)).trace();
            debug_assert!(
                value.im.abs() < IMAG_TOL,
                "Tr[ρ σ⊗σ] has imaginary part {}",
                value.im
            );
            t[i][j] = value.re;
        }
    }
    Ok(CorrelationMatrix(t))
}

/// E(a, b) = Σ aᵢ bⱼ T_ij.
pub fn correlation(
    rho: &DensityMatrix,
    a: &MeasurementVector,
    b: &MeasurementVector,
) -> Result<f64> {
    let t = correlation_matrix(rho)?;
    Ok(dot3(&a.0, &t.apply(&b.0)))
}

fn chsh_from_t(t: &CorrelationMatrix, cfg: &ChshConfig) -> f64 {
    let e = |a: &MeasurementVector, b: &MeasurementVector| dot3(&a.0, &t.apply(&b.0));
    (e(&cfg.a, &cfg.b) - e(&cfg.a_prime, &cfg.b)
        + e(&cfg.a, &cfg.b_prime)
        + e(&cfg.a_prime, &cfg.b_prime))
    .abs()
}

pub fn chsh_value(rho: &DensityMatrix, cfg: &ChshConfig) -> Result<f64> {
    Ok(chsh_from_t(&correlation_matrix(rho)?, cfg))
}

/// Coplanar directions in the x–z plane, consecutive ones π/4 apart, in the
/// order b, a, b′, a′ starting from ẑ. This ordering reaches 2√2 on the singlet
/// under the CHSH sign pattern.
pub fn planar_pi4_config() -> ChshConfig {
    let at = |k: f64| MeasurementVector::from_angles(k * FRAC_PI_4, 0.0);
    ChshConfig {
        b: at(0.0),
        a: at(1.0),
        b_prime: at(2.0),
        a_prime: at(3.0),
    }
}

/// Closed-form maximal CHSH value `2√(u₁ + u₂)`.
pub fn bmax(rho: &DensityMatrix) -> Result<f64> {
    let u = correlation_matrix(rho)?.singular_spectrum();
    Ok(2.0 * (u[0] + u[1]).sqrt())
}

/// With a and a′ chosen optimally, `B(b, b′) = ‖T(b+b′)‖ + ‖T(b′−b)‖`.
fn reduced_chsh(t: &CorrelationMatrix, p: &[f64; 4]) -> f64 {
    let b = MeasurementVector::from_angles(p[0], p[1]).0;
    let bp = MeasurementVector::from_angles(p[2], p[3]).0;
    let sum = [b[0] + bp[0], b[1] + bp[1], b[2] + bp[2]];
    let diff = [bp[0] - b[0], bp[1] - b[1], bp[2] - b[2]];
    norm3(&t.apply(&sum)) + norm3(&t.apply(&diff))
}

/// Compass search on the four angles of (b, b′).
fn refine(t: &CorrelationMatrix, mut p: [f64; 4]) -> f64 {
    let mut best = reduced_chsh(t, &p);
    let mut step = 0.5;
    while step > 1e-11 {
        let mut improved = false;
        for k in 0..4 {
            for dir in [1.0, -1.0] {
                let mut q = p;
                q[k] += dir * step;
                let value = reduced_chsh(t, &q);
                if value > best {
                    best = value;
                    p = q;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best
}

/// Maximal CHSH value found by direct search over measurement directions,
/// as an independent check of [`bmax`]. Deterministic for a given seed.
pub fn bmax_numeric(rho: &DensityMatrix, restarts: usize, seed: u64) -> Result<f64> {
    if restarts == 0 {
        return Err(Error::OutOfRange {
            name: "restarts",
            value: 0.0,
            range: ">= 1",
        });
    }
    let t = correlation_matrix(rho)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts: Vec<[f64; 4]> = (0..restarts)
        .map(|_| {
            [
                rng.gen_range(0.0..PI),
                rng.gen_range(0.0..2.0 * PI),
                rng.gen_range(0.0..PI),
                rng.gen_range(0.0..2.0 * PI),
            ]
        })
        .collect();
    Ok(starts
        .into_iter()
        .map(|p| refine(&t, p))
        .fold(0.0, f64::max))
}
