//! Universal cloning of two-qubit states.
//!
//! A single clone produced by an optimal universal symmetric 1→2 cloner on a
//! d-dimensional system is the input shrunk towards the maximally mixed state,
//! `ρ → η·ρ + (1−η)·I/d` with `η = (d+2)/(2(d+1))`. Two ways of copying a
//! two-qubit state follow from that:
//!
//! * non-local: the register is cloned as one 4-level system, `η = 3/5`;
//! * local: each party clones its own qubit, so the joint map is the tensor
//!   product of two single-qubit shrinks with `η = 2/3`.
//!
//! For a Bell-basis input the local output has `5/36` on the `|00⟩⟨00|` and
//! `|11⟩⟨11|` diagonal and a `(01,10)` coherence of `−16αβ/36`. Writing
//! `−4αβ/36` on that diagonal with a constant `5/36` coherence instead gives a
//! matrix with negative diagonal entries, which is not a state (see the
//! `negative_corner_variant_is_not_a_state` test). Both agree on the
//! `(24α²+1)/36` and `(25−24α²)/36` terms; only the channel form yields the
//! inseparability range `1/2 − √39/16 ≤ α² ≤ 1/2 + √39/16`.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, kron, partial_trace, ComplexMatrix, Keep};
use crate::states::{validate_density_with_dims, DensityMatrix};

/// Largest allowed disagreement between the spectral remix and the channel
/// applied directly.
pub const REMIX_TOL: f64 = 1e-10;

/// Shrink factor of the optimal symmetric 1→2 cloner for a d-level system.
pub fn optimal_shrink(d: usize) -> f64 {
    (d as f64 + 2.0) / (2.0 * (d as f64 + 1.0))
}

/// How an entangled pair is copied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CloneScheme {
    /// Each qubit cloned separately (per-qubit shrink 2/3).
    Local,
    /// The pair cloned as one 4-level system (shrink 3/5).
    NonLocal,
}

impl CloneScheme {
    pub fn shrink(self) -> f64 {
        match self {
            CloneScheme::Local => optimal_shrink(2),
            CloneScheme::NonLocal => optimal_shrink(4),
        }
    }

    /// One cloning step applied directly as a channel.
    pub fn apply(self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        match self {
            CloneScheme::Local => clone_local(rho),
            CloneScheme::NonLocal => clone_nonlocal(rho),
        }
    }
}

/// The state handed to the measures: either the pure input or one clone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Pure,
    Local,
    NonLocal,
}

impl Scheme {
    pub fn cloner(self) -> Option<CloneScheme> {
        match self {
            Scheme::Pure => None,
            Scheme::Local => Some(CloneScheme::Local),
            Scheme::NonLocal => Some(CloneScheme::NonLocal),
        }
    }

    pub fn apply(self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        match self.cloner() {
            None => Ok(rho.clone()),
            Some(scheme) => scheme.apply(rho),
        }
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if eta > 0.0 && eta <= 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "eta",
            value: eta,
            range: "(0, 1]",
        })
    }
}

fn shrink_matrix(m: &ComplexMatrix, eta: f64) -> ComplexMatrix {
    let d = m.dim();
    let noise = ComplexMatrix::identity(d).scale((1.0 - eta) / d as f64);
    &m.scale(eta) + &noise
}

/// `η·ρ + (1−η)·I/d` on the whole space of `rho`.
pub fn shrink_channel(rho: &DensityMatrix, eta: f64) -> Result<DensityMatrix> {
    check_eta(eta)?;
    Ok(DensityMatrix::from_channel_output(
        shrink_matrix(rho.matrix(), eta),
        rho.dims(),
    ))
}

/// Non-local cloning: the two-qubit register is copied as one 4-level system.
pub fn clone_nonlocal(rho: &DensityMatrix) -> Result<DensityMatrix> {
    rho.require_two_qubit()?;
    shrink_channel(rho, CloneScheme::NonLocal.shrink())
}

/// Single-qubit shrink with factor `eta` applied to each side of a two-qubit
/// operator:
///
/// ```text
/// η²ρ + η(1−η)(ρ_A ⊗ I/2 + I/2 ⊗ ρ_B) + (1−η)² I/4
/// ```
pub(crate) fn local_shrink_matrix(m: &ComplexMatrix, eta: f64) -> Result<ComplexMatrix> {
    let half_id = ComplexMatrix::identity(2).scale(0.5);
    let rho_a = partial_trace(m, (2, 2), Keep::First)?;
    let rho_b = partial_trace(m, (2, 2), Keep::Second)?;
    let trace = m.trace().re;
    let marginals = &kron(&rho_a, &half_id) + &kron(&half_id, &rho_b);
    let out = &(&m.scale(eta * eta) + &marginals.scale(eta * (1.0 - eta)))
        + &ComplexMatrix::identity(4).scale(trace * (1.0 - eta) * (1.0 - eta) / 4.0);
    Ok(out)
}

/// Local cloning: each qubit is cloned on its own by a single-qubit cloner.
pub fn clone_local(rho: &DensityMatrix) -> Result<DensityMatrix> {
    rho.require_two_qubit()?;
    let out = local_shrink_matrix(rho.matrix(), CloneScheme::Local.shrink())?;
    Ok(DensityMatrix::from_channel_output(out, (2, 2)))
}

/// A state followed by its successive clones; `states[0]` is the input.
#[derive(Debug, Clone)]
pub struct CloneSequence {
    pub scheme: CloneScheme,
    pub states: Vec<DensityMatrix>,
}

impl CloneSequence {
    pub fn last(&self) -> &DensityMatrix {
        self.states
            .last()
            .expect("sequence holds at least the input")
    }

    pub fn steps(&self) -> usize {
        self.states.len() - 1
    }
}

/// One cloning step done by diagonalizing `rho = Σ aᵢ|φᵢ⟩⟨φᵢ|`, cloning every
/// eigenvector on its own and remixing the clones with weights `aᵢ`.
///
/// The result is checked against the channel applied to `rho` directly.
pub fn clone_by_spectral_remix(rho: &DensityMatrix, scheme: CloneScheme) -> Result<DensityMatrix> {
    rho.require_two_qubit()?;
    let eig = hermitian_eig(rho.matrix())?;
    let mut remixed = ComplexMatrix::zeros(rho.dim());
    for (weight, phi) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
        if *weight == 0.0 {
            continue;
        }
        let projector = DensityMatrix::from_channel_output(ComplexMatrix::outer(phi, phi), (2, 2));
        let cloned = scheme.apply(&projector)?;
        remixed = &remixed + &cloned.matrix().scale(*weight);
    }
    let direct = scheme.apply(rho)?;
    let defect = remixed.max_abs_diff(direct.matrix());
    if defect > REMIX_TOL {
        return Err(Error::RemixMismatch { defect });
    }
    validate_density_with_dims(&remixed, (2, 2))
}

/// Applies `n` cloning steps, keeping every intermediate state.
pub fn iterate(rho: &DensityMatrix, scheme: CloneScheme, n: usize) -> Result<CloneSequence> {
    rho.require_two_qubit()?;
    let mut states = Vec::with_capacity(n + 1);
    states.push(rho.clone());
    for _ in 0..n {
        let next = clone_by_spectral_remix(states.last().expect("non-empty"), scheme)?;
        states.push(next);
    }
    Ok(CloneSequence { scheme, states })
}

fn swap_operator(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d * d, |r, s| {
        let (i, j) = (r / d, r % d);
        if s == j * d + i {
            crate::linalg::Complex::ONE
        } else {
            crate::linalg::Complex::ZERO
        }
    })
}

/// Joint state of both clones from the optimal symmetric 1→2 cloner:
/// `2/(d+1) · S(ρ ⊗ I)S` with `S` the projector onto the symmetric subspace.
/// Accepts a qubit (d = 2) or a qubit pair (d = 4).
pub fn symmetric_cloner_joint(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let d = rho.dim();
    if d != 2 && d != 4 {
        return Err(Error::dim("2 or 4", d));
    }
    let sym = (&ComplexMatrix::identity(d * d) + &swap_operator(d)).scale(0.5);
    let embedded = kron(rho.matrix(), &ComplexMatrix::identity(d));
    let joint = (&(&sym * &embedded) * &sym).scale(2.0 / (d as f64 + 1.0));
    validate_density_with_dims(&joint, (d, d))
}

/// One clone taken out of a joint cloner output.
pub fn reduced_clone(joint: &DensityMatrix, keep: Keep) -> Result<DensityMatrix> {
    let (da, db) = joint.dims();
    let reduced = partial_trace(joint.matrix(), (da, db), keep)?;
    let d = reduced.dim();
    validate_density_with_dims(&reduced, if d == 4 { (2, 2) } else { (d, 1) })
}
