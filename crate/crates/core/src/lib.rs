//! Numerics for Gaussian pure states of one bosonic mode and the question of
//! whether ensembles of them can reproduce the second moments of the Haar
//! ensemble.
//!
//! The crate is split along the lines of the computation:
//!
//! * [`symplectic`]: Sp(1,ℝ) matrices, the squeeze-shear (parabolic) subgroup,
//!   Iwasawa factors, invariant densities and the `(u,v)`, `(s,θ)`, `(E,θ)`
//!   charts on squeezed vacua.
//! * [`gaussian`]: squeezed-vacuum wavefunctions, G-matrices, Wigner functions
//!   and the number-basis overlaps `p_k(E)` in closed form and by quadrature.
//! * [`fock`]: truncated number-basis linear algebra (quadratures,
//!   displacement and squeeze unitaries, parity, the 50:50 `x±` refactorization).
//! * [`designs`]: twirls, two-copy Schmidt analysis, ensemble-averaged spectra
//!   and the design-deviation diagnostics built on the modules above.
//!
//! Conventions: `ħ = 1`, `H = X² + P²`, `X = (a + a†)/√2`, so the vacuum has
//! `⟨X²⟩ = ⟨P²⟩ = 1/2` and energy `E = (⟨X²⟩ + ⟨P²⟩)/2 = 1/2`.

// `!(x > 0.0)` is used on purpose so that NaN is rejected as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod designs;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod quadrature;
pub mod special;
pub mod symplectic;

pub use error::{Error, Result};
