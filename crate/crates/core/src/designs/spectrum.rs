//! Ensemble-averaged spectrum of squeezed vacua on the even-parity subspace.
//!
//! For a rotation-invariant ensemble with energy weights `f(E) dE`, the
//! average of `|ψ⟩⟨ψ|` is diagonal with entries
//!
//! ```text
//! a_k = Σ_E f(E) p_{2k}(E) = √(2/π) · Γ(k+½)/Γ(k+1) · w_k,
//! w_k = Σ_E f(E) (2E+1)^{-1/2} ((2E−1)/(2E+1))^k .
//! ```
//!
//! `w_k` is nonincreasing in `k`, so `a_k/a_0 ≤ Γ(k+½)/(Γ(k+1)√π)`: no choice
//! of `f` makes the spectrum flat, and the bound is approached only as the
//! ensemble is pushed to infinite squeezing.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::gaussian::{energy_factor, fock_overlap_closed};
use crate::special::half_gamma_ratio;

/// Discretized energy measure over squeezed vacua. Always rotation invariant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    energies: Vec<f64>,
    weights: Vec<f64>,
}

impl EnsembleSpec {
    /// Grid of energies (strictly increasing, all `≥ 1/2`) with nonnegative
    /// weights `f(E_i) ΔE_i`.
    pub fn new(energies: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if energies.is_empty() {
            return Err(domain("ensemble has an empty energy grid"));
        }
        if energies.len() != weights.len() {
            return Err(domain(format!(
                "{} energies but {} weights",
                energies.len(),
                weights.len()
            )));
        }
        if energies.iter().any(|e| !(*e >= 0.5) || !e.is_finite()) {
            return Err(domain("energies must be finite and ≥ 1/2"));
        }
        if energies.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(domain("energy grid must be strictly increasing"));
        }
        if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
            return Err(domain("weights must be finite and nonnegative"));
        }
        if weights.iter().sum::<f64>() <= 0.0 {
            return Err(domain("weights are all zero"));
        }
        Ok(EnsembleSpec { energies, weights })
    }

    /// All weight on a single energy.
    pub fn delta(energy: f64) -> Result<Self> {
        Self::new(vec![energy], vec![1.0])
    }

    /// Trapezoidal discretization of `density(E) dE` on `[e_min, e_max]`. The
    /// last step is shortened to land on `e_max`.
    pub fn from_density<F: Fn(f64) -> f64>(
        e_min: f64,
        e_max: f64,
        step: f64,
        density: F,
    ) -> Result<Self> {
        if !(step > 0.0) || !(e_max > e_min) {
            return Err(domain(format!(
                "need step > 0 and e_max > e_min, got step {step} on [{e_min}, {e_max}]"
            )));
        }
        let intervals = ((e_max - e_min) / step).ceil() as usize;
        let mut energies: Vec<f64> = (0..intervals).map(|i| e_min + i as f64 * step).collect();
        if e_max - energies[intervals - 1] < 1e-9 * step {
            energies.pop();
        }
        energies.push(e_max);
        let n = energies.len();
        let weights = (0..n)
            .map(|i| {
                let left = if i > 0 { energies[i] - energies[i - 1] } else { 0.0 };
                let right = if i + 1 < n { energies[i + 1] - energies[i] } else { 0.0 };
                0.5 * (left + right) * density(energies[i])
            })
            .collect();
        Self::new(energies, weights)
    }

    /// The invariant measure `4 dE` restricted to `[1/2, e_max]`, unnormalized.
    pub fn invariant_truncated(e_max: f64, step: f64) -> Result<Self> {
        Self::from_density(0.5, e_max, step, |_| crate::symplectic::invariant_density_energy())
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Copy with weights summing to 1.
    pub fn normalized(&self) -> Self {
        let total = self.total_weight();
        EnsembleSpec {
            energies: self.energies.clone(),
            weights: self.weights.iter().map(|w| w / total).collect(),
        }
    }

    pub fn rotation_invariant(&self) -> bool {
        true
    }
}

/// Averaged diagonal on `|2k⟩`, `k = 0..=kmax`, with its factorization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub kmax: usize,
    /// `a_k`, in the ensemble's own weight normalization.
    pub averages: Vec<f64>,
    /// `w_k`.
    pub energy_weights: Vec<f64>,
    /// `Γ(k+½)/Γ(k+1)`.
    pub gamma: Vec<f64>,
    /// `a_kmax / a_0`.
    pub flatness_ratio: f64,
    /// `max_k a_k / min_k a_k` (infinite if some `a_k` vanishes).
    pub max_min_ratio: f64,
}

impl SpectrumReport {
    /// `a_k / a_0`.
    pub fn normalized(&self) -> Vec<f64> {
        let a0 = self.averages[0];
        self.averages.iter().map(|a| a / a0).collect()
    }
}

/// `Γ(k+½)/Γ(k+1)`.
pub fn gamma_coeff(k: usize) -> f64 {
    half_gamma_ratio(k as f64)
}

/// `1/√(k+¼)`, the large-`k` form of [`gamma_coeff`].
pub fn sqrt_bound(k: usize) -> f64 {
    1.0 / (k as f64 + 0.25).sqrt()
}

pub fn ensemble_average_spectrum(spec: &EnsembleSpec, kmax: usize) -> Result<SpectrumReport> {
    if spec.energies.is_empty() {
        return Err(domain("ensemble has an empty energy grid"));
    }
    let mut averages = vec![0.0; kmax + 1];
    let mut energy_weights = vec![0.0; kmax + 1];
    for (&e, &f) in spec.energies.iter().zip(&spec.weights) {
        for k in 0..=kmax {
            averages[k] += f * fock_overlap_closed(2 * k, e)?;
            energy_weights[k] += f * energy_factor(k, e);
        }
    }
    let gamma: Vec<f64> = (0..=kmax).map(gamma_coeff).collect();
    let max = averages.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = averages.iter().copied().fold(f64::INFINITY, f64::min);
    let flatness_ratio = averages[kmax] / averages[0];
    Ok(SpectrumReport {
        kmax,
        averages,
        energy_weights,
        gamma,
        flatness_ratio,
        max_min_ratio: if min > 0.0 { max / min } else { f64::INFINITY },
    })
}

/// Limit `E → ∞` of the normalized spectrum: `a_k/a_0 = Γ(k+½)/(Γ(k+1)√π)`.
pub fn heterodyne_limit_spectrum(kmax: usize) -> Vec<f64> {
    let g0 = gamma_coeff(0);
    (0..=kmax).map(|k| gamma_coeff(k) / g0).collect()
}

/// `1 − min_k a_k / max_k a_k` over `k ≤ kmax`; zero exactly when the truncated
/// even-parity spectrum is flat.
pub fn two_design_deviation(report: &SpectrumReport) -> Result<f64> {
    deviation_of(&report.averages)
}

/// [`two_design_deviation`] for a bare spectrum.
pub fn deviation_of(values: &[f64]) -> Result<f64> {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(max > 0.0) {
        return Err(domain("spectrum is identically zero"));
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(1.0 - min / max)
}
