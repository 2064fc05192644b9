//! Partial Heisenberg-Weyl twirls over phase-space disks.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::fock::{DisplacementKernel, FockVector, TruncatedOperator};
use crate::quadrature::composite_legendre;

const PANEL_WIDTH: f64 = 0.5;
const PANEL_ORDER: usize = 16;

/// `∫_{x²+p²<r²} D(x,p)|ψ⟩⟨ψ|D(x,p)† dx dp`, projected onto the first `d`
/// number states.
///
/// Radial integration uses composite Gauss–Legendre panels; the angular
/// integral uses an equispaced rule with more points than the largest angular
/// frequency present, so off-diagonal elements cancel to rounding. The
/// displacements are computed at a working cutoff large enough to hold the
/// fiducial displaced to radius `r`.
pub fn hw_partial_twirl(fiducial: &FockVector, r: f64, d: usize) -> Result<TruncatedOperator> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(domain(format!("twirl radius must be positive, got {r}")));
    }
    if d == 0 {
        return Err(domain("projection dimension must be positive"));
    }
    if (fiducial.norm() - 1.0).abs() > 1e-8 {
        return Err(domain(format!("fiducial has norm {}", fiducial.norm())));
    }
    let support = fiducial
        .amplitudes()
        .iter()
        .rposition(|a| a.norm() > 0.0)
        .map_or(1, |k| k + 1);
    let working = d.max(support) + (0.5 * r * r + 10.0 * r).ceil() as usize + 24;
    let kernel = DisplacementKernel::new(working)?;
    let fiducial = fiducial.resized(support);

    let panels = (r / PANEL_WIDTH).ceil() as usize;
    let (radii, radial_weights) = composite_legendre(0.0, r, panels, PANEL_ORDER);
    let angles = 2 * (d + support) + 8;
    let dphi = TAU / angles as f64;

    let slices: Vec<DMatrix<Complex64>> = radii
        .par_iter()
        .zip(radial_weights.par_iter())
        .map(|(&rho, &w)| {
            let mut acc = DMatrix::from_element(d, d, Complex64::new(0.0, 0.0));
            for j in 0..angles {
                let (sin, cos) = (j as f64 * dphi).sin_cos();
                let v = nalgebra::DVector::from_vec(kernel.displace(rho * cos, rho * sin, &fiducial, d));
                acc.gerc(Complex64::new(1.0, 0.0), &v, &v, Complex64::new(1.0, 0.0));
            }
            acc * Complex64::new(w * rho * dphi, 0.0)
        })
        .collect();
    let total = slices
        .into_iter()
        .fold(DMatrix::from_element(d, d, Complex64::new(0.0, 0.0)), |a, b| a + b);
    Ok(TruncatedOperator::new(total))
}

/// `⟨0|twirl|0⟩` for the vacuum fiducial: `2π(1 − e^{−r²/2})`.
///
/// The `2π` is the phase-space area per state in the `dx dp` measure with
/// `ħ = 1`.
pub fn vacuum_twirl_exact(r: f64) -> f64 {
    -TAU * (-0.5 * r * r).exp_m1()
}

/// Flatness of a twirled operator on its leading levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwirlSummary {
    pub radius: f64,
    /// `(max − min)/mean` of the diagonal.
    pub diag_spread: f64,
    /// Largest off-diagonal modulus divided by the mean diagonal.
    pub offdiag_max: f64,
    pub mean_diag: f64,
}

/// Summary over levels `k < levels`.
pub fn twirl_summary(op: &TruncatedOperator, radius: f64, levels: usize) -> TwirlSummary {
    let n = levels.min(op.dim());
    let diag: Vec<f64> = (0..n).map(|k| op.get(k, k).re).collect();
    let mean = diag.iter().sum::<f64>() / n as f64;
    let max = diag.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let mut off = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off = off.max(op.get(i, j).norm());
            }
        }
    }
    TwirlSummary {
        radius,
        diag_spread: (max - min) / mean,
        offdiag_max: off / mean,
        mean_diag: mean,
    }
}
