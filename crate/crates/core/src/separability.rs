//! Partial-transpose (Peres–Horodecki) test for two-qubit states.
//!
//! For qubit ⊗ qubit a state is separable exactly when its partial transpose
//! has no negative eigenvalue.

use crate::cloning::Scheme;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, partial_transpose};
use crate::states::{bell_state, density_from_pure, BellKind, DensityMatrix};

pub const DEFAULT_PPT_TOL: f64 = 1e-10;
pub const DEFAULT_INTERVAL_TOL: f64 = 1e-8;
const MAX_BISECTIONS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparabilityVerdict {
    pub min_pt_eigenvalue: f64,
    pub entangled: bool,
    pub tolerance: f64,
}

/// Smallest eigenvalue of ρ^{T₂}.
pub fn min_pt_eigenvalue(rho: &DensityMatrix) -> Result<f64> {
    rho.require_two_qubit()?;
    let pt = partial_transpose(rho.matrix())?;
    Ok(hermitian_eig(&pt)?.min_eigenvalue())
}

/// Entangled iff the partial transpose has an eigenvalue below `-tol`.
/// Values within `tol` of zero count as separable.
pub fn ppt_verdict(rho: &DensityMatrix, tol: f64) -> Result<SeparabilityVerdict> {
    let min = min_pt_eigenvalue(rho)?;
    Ok(SeparabilityVerdict {
        min_pt_eigenvalue: min,
        entangled: min < -tol,
        tolerance: tol,
    })
}

/// Range of α² over which the scheme's output on |Ψ⁻(α)⟩ is entangled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaSquaredInterval {
    pub low: f64,
    pub high: f64,
}

impl AlphaSquaredInterval {
    pub fn contains(&self, alpha_sq: f64) -> bool {
        self.low <= alpha_sq && alpha_sq <= self.high
    }

    pub fn width(&self) -> f64 {
        self.high - self.low
    }
}

fn pt_min_at(scheme: Scheme, alpha_sq: f64) -> Result<f64> {
    let psi = bell_state(BellKind::PsiMinus, alpha_sq.clamp(0.0, 1.0).sqrt())?;
    let out = scheme.apply(&density_from_pure(&psi))?;
    min_pt_eigenvalue(&out)
}

/// Bisects on the sign change of the minimal partial-transpose eigenvalue,
/// with `separable` the end of the bracket where it is non-negative.
fn bisect(scheme: Scheme, mut separable: f64, mut entangled: f64, tol: f64) -> Result<f64> {
    for _ in 0..MAX_BISECTIONS {
        if (entangled - separable).abs() <= tol {
            break;
        }
        let mid = 0.5 * (separable + entangled);
        if pt_min_at(scheme, mid)? < 0.0 {
            entangled = mid;
        } else {
            separable = mid;
        }
    }
    Ok(0.5 * (separable + entangled))
}

/// Endpoints of the inseparability interval in α², located to within `tol`
/// by bisection on `[0, 1/2]` and `[1/2, 1]`.
pub fn entanglement_interval(scheme: Scheme, tol: f64) -> Result<AlphaSquaredInterval> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::OutOfRange {
            name: "tol",
            value: tol,
            range: "(0, inf)",
        });
    }
    let low = bisect(scheme, 0.0, 0.5, tol)?;
    let high = bisect(scheme, 1.0, 0.5, tol)?;
    Ok(AlphaSquaredInterval { low, high })
}
