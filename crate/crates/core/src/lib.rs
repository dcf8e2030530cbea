//! Universal quantum cloning of entangled qubit pairs and the entanglement
//! left in the copies.
//!
//! A two-qubit state can be copied locally (each party runs its own qubit
//! cloner) or non-locally (the pair is cloned as one 4-level system). The
//! crate builds both channels, iterates them, and measures what survives with
//! the partial-transpose test, the CHSH quantity and its maximum, Wootters
//! concurrence and entanglement of formation.

pub mod bell;
pub mod cli;
pub mod cloning;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod separability;
pub mod states;

pub use bell::{
    bmax, bmax_numeric, chsh_value, correlation, correlation_matrix, planar_pi4_config, ChshConfig,
    CorrelationMatrix, MeasurementVector,
};
pub use cloning::{
    clone_by_spectral_remix, clone_local, clone_nonlocal, iterate, reduced_clone, shrink_channel,
    symmetric_cloner_joint, CloneScheme, CloneSequence, Scheme,
};
pub use entanglement::{
    binary_entropy, concurrence, concurrence_xstate_oracle, entanglement_of_formation,
    eof_from_concurrence, spin_flip, ConcurrenceResult,
};
pub use error::{Error, Result};
pub use linalg::{
    hermitian_eig, kron, partial_trace, partial_transpose, psd_sqrt, Complex, ComplexMatrix, Keep,
    SpectralDecomposition,
};
pub use separability::{
    entanglement_interval, min_pt_eigenvalue, ppt_verdict, AlphaSquaredInterval,
    SeparabilityVerdict,
};
pub use states::{
    bell_state, density_from_pure, singlet, validate_density, validate_density_with_dims, BellKind,
    DensityFile, DensityMatrix, PureState,
};
