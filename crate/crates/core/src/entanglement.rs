//! Concurrence and entanglement of formation for two-qubit states.
//!
//! The spin-flipped state is `ρ̃ = (σ_y ⊗ σ_y) ρ* (σ_y ⊗ σ_y)`. The λᵢ are the
//! square roots of the eigenvalues of `ρρ̃`, which has the same spectrum as
//! the Hermitian `√ρ ρ̃ √ρ`, so no general eigensolver is needed.
//!
//! Entanglement of formation uses the binary entropy
//! `h(x) = −x log₂ x − (1−x) log₂(1−x)`; with `log₂ x` in both terms the
//! singlet would not come out at 1.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, kron, pauli, psd_sqrt, ComplexMatrix};
use crate::states::DensityMatrix;

const X_SHAPE_TOL: f64 = 1e-12;
/// Eigenvalues of √ρ ρ̃ √ρ below this are roundoff and count as zero, which
/// puts the resolution of each λᵢ at 1e-7.
const SPECTRUM_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceResult {
    /// √eig(ρρ̃), descending.
    pub lambdas: [f64; 4],
    pub concurrence: f64,
}

pub fn spin_flip(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    rho.require_two_qubit()?;
    let sy = &pauli()[1];
    let yy = kron(sy, sy);
    Ok(&(&yy * &rho.matrix().conj()) * &yy)
}

pub fn concurrence(rho: &DensityMatrix) -> Result<ConcurrenceResult> {
    let flipped = spin_flip(rho)?;
    let root = psd_sqrt(rho.matrix())?;
    let r = (&(&root * &flipped) * &root).hermitian_part();
    let eig = hermitian_eig(&r)?;
    let mut lambdas = [0.0; 4];
    for (slot, value) in lambdas.iter_mut().zip(&eig.eigenvalues) {
        *slot = if *value < SPECTRUM_FLOOR {
            0.0
        } else {
            value.sqrt()
        };
    }
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(ConcurrenceResult {
        lambdas,
        concurrence: c.clamp(0.0, 1.0),
    })
}

/// Binary entropy in bits, with `0·log₂0 = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// `h((1 + √(1−C²))/2)`.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    if c == 0.0 {
        return 0.0;
    }
    binary_entropy(0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt())).clamp(0.0, 1.0)
}

pub fn entanglement_of_formation(rho: &DensityMatrix) -> Result<f64> {
    Ok(eof_from_concurrence(concurrence(rho)?.concurrence))
}

/// Closed-form concurrence of a state supported on the diagonal and the two
/// anti-diagonal coherences (01,10) and (00,11).
pub fn concurrence_xstate_oracle(rho: &DensityMatrix) -> Result<f64> {
    rho.require_two_qubit()?;
    let m = rho.matrix();
    for i in 0..4 {
        for j in 0..4 {
            if i == j || i + j == 3 {
                continue;
            }
            let magnitude = m[(i, j)].norm();
            if magnitude > X_SHAPE_TOL {
                return Err(Error::NotXShape {
                    row: i,
                    col: j,
                    magnitude,
                });
            }
        }
    }
    let d = |i: usize| m[(i, i)].re.max(0.0);
    let singlet_like = m[(1, 2)].norm() - (d(0) * d(3)).sqrt();
    let triplet_like = m[(0, 3)].norm() - (d(1) * d(2)).sqrt();
    Ok(2.0 * singlet_like.max(triplet_like).max(0.0))
}
