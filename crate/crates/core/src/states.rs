//! Two-qubit pure states in the Bell basis and validated density matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eig, Complex, ComplexMatrix, HERMITIAN_TOL, PSD_CLAMP};

/// Tolerance on unit trace for a valid density matrix.
pub const TRACE_TOL: f64 = 1e-10;
const NORM_TOL: f64 = 1e-12;

/// The four Bell-basis families with real amplitudes α and β = √(1−α²):
///
/// ```text
/// |Ψ±(α)⟩ = α|01⟩ ± β|10⟩
/// |Φ±(α)⟩ = α|00⟩ ± β|11⟩
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellKind {
    PsiMinus,
    PsiPlus,
    PhiMinus,
    PhiPlus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [
        BellKind::PsiMinus,
        BellKind::PsiPlus,
        BellKind::PhiMinus,
        BellKind::PhiPlus,
    ];
}

/// Normalized state vector on a register of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::dim("a power of two >= 2", len));
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Scales an arbitrary nonzero vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm <= 0.0 {
            return Err(Error::NotNormalized { norm });
        }
        amplitudes.iter_mut().for_each(|z| *z /= norm);
        Self::new(amplitudes)
    }

    /// Computational basis state |index⟩ on `len` amplitudes.
    pub fn basis(len: usize, index: usize) -> Result<Self> {
        if index >= len {
            return Err(Error::dim(format!("index < {len}"), index));
        }
        let mut amps = vec![Complex::ZERO; len];
        amps[index] = Complex::ONE;
        Self::new(amps)
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn inner(&self, other: &PureState) -> Complex {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }
}

/// Bell-basis state of the given kind with amplitude α ∈ [0, 1].
pub fn bell_state(kind: BellKind, alpha: f64) -> Result<PureState> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
            range: "[0, 1]",
        });
    }
    let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
    let (lo, hi, sign) = match kind {
        BellKind::PsiMinus => (1, 2, -1.0),
        BellKind::PsiPlus => (1, 2, 1.0),
        BellKind::PhiMinus => (0, 3, -1.0),
        BellKind::PhiPlus => (0, 3, 1.0),
    };
    let mut amps = vec![Complex::ZERO; 4];
    amps[lo] = c(alpha, 0.0);
    amps[hi] = c(sign * beta, 0.0);
    PureState::new(amps)
}

/// The singlet |Ψ⁻⟩ = (|01⟩ − |10⟩)/√2.
pub fn singlet() -> PureState {
    bell_state(BellKind::PsiMinus, std::f64::consts::FRAC_1_SQRT_2).expect("valid amplitude")
}

/// Hermitian, unit-trace, positive semidefinite operator on a dA·dB space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: (usize, usize),
}

impl DensityMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn is_two_qubit(&self) -> bool {
        self.dims == (2, 2)
    }

    pub(crate) fn require_two_qubit(&self) -> Result<()> {
        if self.is_two_qubit() {
            Ok(())
        } else {
            Err(Error::dim("4 (qubit x qubit)", self.dim()))
        }
    }

    /// I/d with default subsystem split.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
            dims: default_dims(dim),
        }
    }

    /// Wraps a matrix produced by a trace- and positivity-preserving map of a
    /// valid state. Only the Hermitian part is kept.
    pub(crate) fn from_channel_output(matrix: ComplexMatrix, dims: (usize, usize)) -> Self {
        debug_assert_eq!(matrix.dim(), dims.0 * dims.1);
        Self {
            matrix: matrix.hermitian_part(),
            dims,
        }
    }

    /// Convex combination Σ wᵢ ρᵢ of equally shaped states.
    pub fn mixture(parts: &[(f64, DensityMatrix)]) -> Result<DensityMatrix> {
        let first = parts
            .first()
            .ok_or_else(|| Error::dim("at least one component", 0))?;
        let mut acc = ComplexMatrix::zeros(first.1.dim());
        for (w, rho) in parts {
            if rho.dims != first.1.dims {
                return Err(Error::dim(format!("{}", first.1.dim()), rho.dim()));
            }
            acc = &acc + &rho.matrix.scale(*w);
        }
        validate_density_with_dims(&acc, first.1.dims)
    }

    pub fn to_json(&self) -> String {
        let file = DensityFile::from(&self.matrix);
        serde_json::to_string(&file).expect("density matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DensityFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        validate_density(&file.into_matrix()?)
    }
}

fn default_dims(dim: usize) -> (usize, usize) {
    if dim == 4 {
        (2, 2)
    } else {
        (dim, 1)
    }
}

/// |ψ⟩⟨ψ| for a normalized state.
pub fn density_from_pure(psi: &PureState) -> DensityMatrix {
    DensityMatrix {
        matrix: psi.projector(),
        dims: default_dims(psi.dim()),
    }
}

/// Validates a candidate density matrix. A 4×4 input is read as qubit ⊗ qubit.
pub fn validate_density(m: &ComplexMatrix) -> Result<DensityMatrix> {
    validate_density_with_dims(m, default_dims(m.dim()))
}

/// Checks Hermiticity, positivity and unit trace (in that order). The stored
/// matrix is the Hermitian part of the input; eigenvalues in `[-1e-10, 0)` are
/// clamped to zero.
pub fn validate_density_with_dims(
    m: &ComplexMatrix,
    dims: (usize, usize),
) -> Result<DensityMatrix> {
    if m.dim() != dims.0 * dims.1 {
        return Err(Error::dim(format!("{}*{}", dims.0, dims.1), m.dim()));
    }
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian { defect });
    }
    let h = m.hermitian_part();
    let eig = hermitian_eig(&h)?;
    let min = eig.min_eigenvalue();
    if min < -PSD_CLAMP {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    let trace = h.trace().re;
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(Error::BadTrace { trace });
    }
    let matrix = if min < 0.0 {
        eig.rebuild_with(|x| x.max(0.0))
    } else {
        h
    };
    Ok(DensityMatrix { matrix, dims })
}

/// On-disk density matrix: `{ "dim": d, "re": [[..]], "im": [[..]] }`, row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl DensityFile {
    pub fn into_matrix(self) -> Result<ComplexMatrix> {
        let d = self.dim;
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == d && rows.iter().all(|r| r.len() == d);
        if !shape_ok(&self.re) || !shape_ok(&self.im) {
            return Err(Error::Parse(format!(
                "\"re\" and \"im\" must both be {d}x{d}"
            )));
        }
        let rows: Vec<Vec<Complex>> = self
            .re
            .iter()
            .zip(&self.im)
            .map(|(r, i)| r.iter().zip(i).map(|(&a, &b)| c(a, b)).collect())
            .collect();
        ComplexMatrix::from_rows(&rows)
    }
}

impl From<&ComplexMatrix> for DensityFile {
    fn from(m: &ComplexMatrix) -> Self {
        let d = m.dim();
        let part = |f: fn(Complex) -> f64| -> Vec<Vec<f64>> {
            (0..d)
                .map(|i| (0..d).map(|j| f(m[(i, j)])).collect())
                .collect()
        };
        Self {
            dim: d,
            re: part(|z| z.re),
            im: part(|z| z.im),
        }
    }
}
