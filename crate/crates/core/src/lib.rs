//! Phase-space toolkit for two Gaussian modes mixed by a bilinear exchange
//! interaction `g (a b† + a† b)`.
//!
//! All covariance matrices use the convention in which the vacuum has
//! covariance `I/2` (ħ = 1, `q = (a + a†)/√2`, `p = (a − a†)/(i√2)`).
//! Every threshold in this crate, most visibly the separability boundary
//! `λ̃ = 1/2`, assumes that normalization. Two-mode quantities are ordered
//! `(q1, p1, q2, p2)`.
//!
//! Module map:
//!
//! * [`gaussian`]: parameters, single- and two-mode states, physicality.
//! * [`evolution`]: the exchange (beam-splitter) map and reduced states.
//! * [`entanglement`]: partial transpose, symplectic spectrum, Simon verdict.
//! * [`fidelity`]: Uhlmann fidelity of single-mode Gaussians and the
//!   entanglement threshold quantities built on it.
//! * [`verify`]: sweep and certification drivers pairing both verdict chains.

pub mod entanglement;
pub mod error;
pub mod evolution;
pub mod fidelity;
pub mod gaussian;
pub mod par;
pub mod verify;

pub use entanglement::{
    is_entangled, lambda_min_closed_form, partial_transpose, symplectic_eigenvalues, EntanglementReport, BOUNDARY_TOL,
};
pub use error::{Error, Result};
pub use evolution::{mix, reduce, CouplingSpec, Mode};
pub use fidelity::{
    coupling_function, displaced_threshold, fidelity_min_over_psi, fidelity_threshold, gaussian_fidelity,
    psi_threshold, FidelityBreakdown, PsiThreshold, ThresholdReport,
};
pub use gaussian::{purity, state_from_params, validate_physical, GaussianParams, SingleModeState, TwoModeState};
pub use par::Execution;
