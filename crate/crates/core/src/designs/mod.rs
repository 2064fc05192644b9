//! Diagnostics for the 2-design condition on Gaussian ensembles.
//!
//! Two copies of a state live in `L²(x₁)⊗L²(x₂) ≅ L²(x₊)⊗L²(x₋)`. Displacements
//! act only on the `x₊` factor and SWAP acts as parity on `x₋`, so for a
//! displacement-covariant, rotation-invariant ensemble the 2-design question
//! reduces to whether the `x₋` average is flat on the even-parity subspace.
//! [`spectrum`] computes that average's diagonal; [`twirl`], [`schmidt`] and
//! [`frame`] check the structural steps numerically.

pub mod frame;
pub mod schmidt;
pub mod spectrum;
pub mod twirl;

pub use frame::{coherent_grid_ensemble, frame_operator_2copy, symmetric_projector, FrameReport};
pub use schmidt::{minus_factor_state, two_copy_schmidt};
pub use spectrum::{
    ensemble_average_spectrum, gamma_coeff, heterodyne_limit_spectrum, sqrt_bound,
    two_design_deviation, EnsembleSpec, SpectrumReport,
};
pub use twirl::{hw_partial_twirl, twirl_summary, vacuum_twirl_exact, TwirlSummary};
