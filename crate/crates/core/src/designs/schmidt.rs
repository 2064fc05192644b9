//! Schmidt structure of two copies across the `x₊ / x₋` split.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::fock::{refactorization_5050, FockVector};

/// Largest weight allowed at levels `k ≥ d/2`; beyond it, two-copy blocks with
/// `k₁ + k₂ ≥ d` would carry non-negligible weight and the truncated
/// refactorization stops being exact.
pub const MAX_TAIL_WEIGHT: f64 = 1e-6;

/// Second Schmidt coefficient above which a fiducial is treated as entangled
/// across `x₊ / x₋` (that is, non-Gaussian).
pub const PRODUCT_TOLERANCE: f64 = 1e-6;

fn refactored_matrix(fiducial: &FockVector, d: usize) -> Result<DMatrix<Complex64>> {
    if d < 2 {
        return Err(domain(format!("two-copy analysis needs d ≥ 2, got {d}")));
    }
    if (fiducial.norm() - 1.0).abs() > 1e-8 {
        return Err(domain(format!("fiducial has norm {}", fiducial.norm())));
    }
    if fiducial.dim() > d && fiducial.tail_weight(d) > 0.0 {
        return Err(Error::Capability(format!(
            "fiducial has support above the cutoff d = {d}"
        )));
    }
    let psi = fiducial.resized(d);
    let tail = psi.tail_weight(d / 2);
    if tail > MAX_TAIL_WEIGHT {
        return Err(Error::Capability(format!(
            "fiducial weight {tail:e} above level {} is too close to the cutoff {d}",
            d / 2
        )));
    }
    let w = refactorization_5050(d)?;
    let two = w.apply(&psi.tensor(&psi));
    Ok(DMatrix::from_fn(d, d, |plus, minus| two[plus * d + minus]))
}

/// Schmidt coefficients of `|ψ⟩|ψ⟩` across `L²(x₊)⊗L²(x₋)`, descending.
pub fn two_copy_schmidt(fiducial: &FockVector, d: usize) -> Result<Vec<f64>> {
    let m = refactored_matrix(fiducial, d)?;
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// The `x₋` factor of `|ψ⟩|ψ⟩` for a fiducial whose two copies form a product
/// state. The global phase is fixed so the largest amplitude is real and
/// positive.
pub fn minus_factor_state(fiducial: &FockVector, d: usize) -> Result<FockVector> {
    let m = refactored_matrix(fiducial, d)?;
    let svd = m.svd(false, true);
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    if order.len() > 1 && svd.singular_values[order[1]] > PRODUCT_TOLERANCE {
        return Err(domain(format!(
            "two copies are entangled across x₊/x₋ (second Schmidt coefficient {:e})",
            svd.singular_values[order[1]]
        )));
    }
    let v_t = svd.v_t.expect("requested right singular vectors");
    // M ≈ σ u v†, so the x₋ ket has amplitudes given by the row of v†
    let row = v_t.row(order[0]);
    let largest = row
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("nonempty");
    let phase = largest.conj() / largest.norm();
    Ok(FockVector::new(row.transpose() * phase))
}
