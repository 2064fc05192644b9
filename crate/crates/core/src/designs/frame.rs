//! Two-copy frame operators of finite weighted ensembles.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::fock::{coherent_state, swap, FockVector, TruncatedOperator};

/// Average of `|ψ⟩⟨ψ|^{⊗2}` with its comparison to the normalized symmetric
/// projector.
#[derive(Debug, Clone)]
pub struct FrameReport {
    /// `Σ w |ψ⟩⟨ψ|⊗|ψ⟩⟨ψ|` on `d²` dimensions.
    pub two_copy: TruncatedOperator,
    /// `Σ w |ψ⟩⟨ψ|`; equal to the partial trace of `two_copy` when every state
    /// is supported below the cutoff.
    pub single_copy: TruncatedOperator,
    /// Operator-norm distance from `two_copy` to `Π_symm / Tr Π_symm`.
    pub symmetric_distance: f64,
}

/// Projector onto the symmetric subspace of two `d`-level modes,
/// `(1 + SWAP)/2`, with trace `d(d+1)/2`.
pub fn symmetric_projector(d: usize) -> TruncatedOperator {
    (&TruncatedOperator::identity(d * d) + &swap(d)).scale(0.5)
}

/// Weighted two-copy average of `states`, each resized to `d` levels.
/// Weights must sum to 1; states may be truncations with norm below 1.
pub fn frame_operator_2copy(states: &[(FockVector, f64)], d: usize) -> Result<FrameReport> {
    if states.is_empty() {
        return Err(domain("ensemble is empty"));
    }
    if d == 0 {
        return Err(domain("cutoff must be positive"));
    }
    let total: f64 = states.iter().map(|(_, w)| w).sum();
    if (total - 1.0).abs() > 1e-9 || states.iter().any(|(_, w)| !(*w >= 0.0)) {
        return Err(domain(format!("weights must be nonnegative and sum to 1 (sum {total})")));
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut two = DMatrix::from_element(d * d, d * d, zero);
    let mut one = DMatrix::from_element(d, d, zero);
    for (psi, w) in states {
        if psi.norm() > 1.0 + 1e-12 {
            return Err(domain(format!("state has norm {} > 1", psi.norm())));
        }
        let psi = psi.resized(d);
        let w = Complex64::new(*w, 0.0);
        let v: DVector<Complex64> = psi.tensor(&psi);
        two.gerc(w, &v, &v, Complex64::new(1.0, 0.0));
        one.gerc(w, psi.amplitudes(), psi.amplitudes(), Complex64::new(1.0, 0.0));
    }
    let two_copy = TruncatedOperator::new(two);
    let target = symmetric_projector(d).scale(2.0 / (d * (d + 1)) as f64);
    let symmetric_distance = (&two_copy - &target).hermitian_spectral_norm();
    Ok(FrameReport {
        two_copy,
        single_copy: TruncatedOperator::new(one),
        symmetric_distance,
    })
}

/// Coherent states `D(x,p)|0⟩` on a square grid of the given spacing and
/// half-width, truncated to `d` levels, with equal weights summing to 1.
///
/// Used to realize the displacement orbit of the vacuum as a finite ensemble;
/// a half-width of at least `4 + 2√d` covers the support of the low levels.
pub fn coherent_grid_ensemble(d: usize, spacing: f64, half_width: f64) -> Result<Vec<(FockVector, f64)>> {
    if !(spacing > 0.0) || !(half_width > 0.0) {
        return Err(domain("grid spacing and half-width must be positive"));
    }
    let steps = (half_width / spacing).floor() as i64;
    let side = (2 * steps + 1) as usize;
    let w = 1.0 / (side * side) as f64;
    let mut out = Vec::with_capacity(side * side);
    for i in -steps..=steps {
        for j in -steps..=steps {
            out.push((coherent_state(i as f64 * spacing, j as f64 * spacing, d), w));
        }
    }
    Ok(out)
}
