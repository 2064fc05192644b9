//! Squeezed vacuum states: wavefunctions, G-matrices, Wigner functions and
//! number-basis overlaps.
//!
//! A squeezed vacuum is described by a real symmetric positive-definite
//! `G` with `det G = 1`; its Wigner function is `W_G(Z) = exp(−Zᵀ G Z)/π` and
//! its covariance is `½ G⁻¹`. At `θ = 0` the covariance is `½ diag(s², 1/s²)`.
//!
//! The overlap `p_k(E) = |⟨k|ψ⟩|²` vanishes for odd `k` and, for even `k`, is
//!
//! ```text
//! p_k(E) = √(2/π) · Γ(k/2 + ½)/Γ(k/2 + 1) · (2E+1)^{-1/2} · ((2E−1)/(2E+1))^{k/2}
//! ```
//!
//! [`fock_overlap_closed`] evaluates this; [`fock_overlap_quadrature`]
//! integrates `∫ φ_k ψ_s dx` numerically as an independent check.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quadrature::{hermite_functions, GaussHermite};
use crate::special::half_gamma_ratio;
use crate::symplectic::{
    energy_from_s, rotation, s_from_energy, Branch, EnergyShape, ParabolicElement, ShapeParams,
    SymplecticMatrix,
};

/// Largest photon number accepted by the quadrature route.
pub const MAX_QUADRATURE_K: usize = 200;

/// Orders of the primary and confirmation Gauss–Hermite passes differ by this.
const CONFIRMATION_EXTRA_NODES: usize = 40;

/// Disagreement between the two quadrature passes that flags instability.
const INSTABILITY_THRESHOLD: f64 = 1e-9;

/// Zero-mean Gaussian pure state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezedVacuum {
    shape: ShapeParams,
}

impl SqueezedVacuum {
    pub fn new(shape: ShapeParams) -> Self {
        SqueezedVacuum { shape }
    }

    pub fn from_s(s: f64, theta: f64) -> Result<Self> {
        Ok(Self::new(ShapeParams::new(s, theta)?))
    }

    /// State with the given energy on the `s ≥ 1` branch.
    pub fn from_energy(energy: f64, theta: f64) -> Result<Self> {
        Ok(Self::new(EnergyShape::new(energy, theta)?.shape()))
    }

    pub fn vacuum() -> Self {
        Self::from_s(1.0, 0.0).expect("vacuum is valid")
    }

    pub fn shape(&self) -> ShapeParams {
        self.shape
    }

    pub fn energy(&self) -> f64 {
        energy_from_s(self.shape.s())
    }

    pub fn g_matrix(&self) -> GMatrix {
        g_matrix_shape(self.shape)
    }

    /// Covariance `½ G⁻¹` as `[[Δx², Δxp], [Δxp, Δp²]]`.
    pub fn covariance(&self) -> [[f64; 2]; 2] {
        self.g_matrix().covariance()
    }

    /// Position wavefunction `(π s²)^{-1/4} e^{-x²/2s²}`; only for `θ = 0`.
    pub fn wavefunction(&self, x: f64) -> Result<f64> {
        if self.shape.theta() != 0.0 {
            return Err(Error::Capability(
                "position wavefunction is only real-valued for θ = 0".into(),
            ));
        }
        Ok(axis_wavefunction(self.shape.s(), x))
    }
}

fn axis_wavefunction(s: f64, x: f64) -> f64 {
    (PI * s * s).powf(-0.25) * (-x * x / (2.0 * s * s)).exp()
}

/// Real symmetric positive-definite 2×2 matrix with unit determinant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GMatrix {
    xx: f64,
    xp: f64,
    pp: f64,
}

impl GMatrix {
    pub fn new(m: [[f64; 2]; 2]) -> Result<Self> {
        let [[xx, xp], [px, pp]] = m;
        let scale = xx.abs().max(pp.abs()).max(1.0);
        if (xp - px).abs() > 1e-12 * scale {
            return Err(domain("G-matrix must be symmetric"));
        }
        let g = GMatrix { xx, xp, pp };
        if !(xx > 0.0) || (g.det() - 1.0).abs() > 1e-10 * scale * scale {
            return Err(domain(format!(
                "G-matrix must be positive definite with unit determinant (det = {})",
                g.det()
            )));
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        GMatrix {
            xx: 1.0,
            xp: 0.0,
            pp: 1.0,
        }
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        [[self.xx, self.xp], [self.xp, self.pp]]
    }

    pub fn det(&self) -> f64 {
        self.xx * self.pp - self.xp * self.xp
    }

    /// `½ G⁻¹`.
    pub fn covariance(&self) -> [[f64; 2]; 2] {
        let d = 2.0 * self.det();
        [[self.pp / d, -self.xp / d], [-self.xp / d, self.xx / d]]
    }

    /// `Zᵀ G Z`.
    pub fn quadratic_form(&self, z: [f64; 2]) -> f64 {
        self.xx * z[0] * z[0] + 2.0 * self.xp * z[0] * z[1] + self.pp * z[1] * z[1]
    }

    /// Action of a symplectic map on the state: `G ↦ (S⁻¹)ᵀ G S⁻¹`.
    pub fn transformed(&self, s: &SymplecticMatrix) -> GMatrix {
        from_congruence(&s.inverse(), self)
    }

    pub fn max_abs_diff(&self, other: &GMatrix) -> f64 {
        (self.xx - other.xx)
            .abs()
            .max((self.xp - other.xp).abs())
            .max((self.pp - other.pp).abs())
    }
}

/// `Mᵀ G M`.
fn from_congruence(m: &SymplecticMatrix, g: &GMatrix) -> GMatrix {
    let [[a, b], [c, d]] = m.entries();
    let [[gxx, gxp], [_, gpp]] = g.entries();
    // columns of M: (a, c) and (b, d)
    let form = |x: [f64; 2], y: [f64; 2]| {
        x[0] * (gxx * y[0] + gxp * y[1]) + x[1] * (gxp * y[0] + gpp * y[1])
    };
    GMatrix {
        xx: form([a, c], [a, c]),
        xp: form([a, c], [b, d]),
        pp: form([b, d], [b, d]),
    }
}

/// `G(u,v) = ((u + v²/u, v/u), (v/u, 1/u))`.
pub fn g_matrix(p: ParabolicElement) -> GMatrix {
    let (u, v) = (p.u(), p.v());
    GMatrix {
        xx: u + v * v / u,
        xp: v / u,
        pp: 1.0 / u,
    }
}

/// `G(s,θ) = R(−θ)ᵀ U(s²)ᵀ U(s²) R(−θ)`, with `U(s²)ᵀU(s²) = diag(1/s², s²)`.
pub fn g_matrix_shape(sp: ShapeParams) -> GMatrix {
    let s2 = sp.s() * sp.s();
    let diag = GMatrix {
        xx: 1.0 / s2,
        xp: 0.0,
        pp: s2,
    };
    from_congruence(&rotation(-sp.theta()), &diag)
}

/// Wigner function `W_G(z) = exp(−zᵀ G z)/π`.
pub fn wigner(g: &GMatrix, z: [f64; 2]) -> f64 {
    (-g.quadratic_form(z)).exp() / PI
}

/// E-dependent factor `(2E+1)^{-1/2} ((2E−1)/(2E+1))^n` of `p_{2n}(E)`.
pub fn energy_factor(n: usize, energy: f64) -> f64 {
    let ratio = (2.0 * energy - 1.0) / (2.0 * energy + 1.0);
    ratio.powi(n as i32) / (2.0 * energy + 1.0).sqrt()
}

/// Closed-form `p_k(E) = |⟨k|ψ_{s,θ}⟩|²` (independent of θ).
pub fn fock_overlap_closed(k: usize, energy: f64) -> Result<f64> {
    if !(energy >= 0.5) || !energy.is_finite() {
        return Err(domain(format!("energy must be ≥ 1/2, got {energy}")));
    }
    if k % 2 == 1 {
        return Ok(0.0);
    }
    let n = k / 2;
    // √(2/π) Γ(n+½)/Γ(n+1) (2E+1)^{-1/2} = c_n (E+½)^{-1/2} with c_0 = 1, which
    // keeps the vacuum row exact
    let c = half_gamma_ratio(n as f64) / half_gamma_ratio(0.0);
    let ratio = (2.0 * energy - 1.0) / (2.0 * energy + 1.0);
    Ok(c * ratio.powi(n as i32) / (energy + 0.5).sqrt())
}

/// Signed amplitude `⟨k|ψ_s⟩ = ∫ φ_k(x) ψ_s(x) dx` for the axis-aligned state,
/// by Gauss–Hermite quadrature matched to the product Gaussian, confirmed by a
/// second pass of higher order.
pub fn fock_amplitude_quadrature(k: usize, s: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(domain(format!("squeeze factor must be positive, got {s}")));
    }
    if k > MAX_QUADRATURE_K {
        return Err(Error::Capability(format!(
            "k = {k} exceeds the stable Hermite recursion range (≤ {MAX_QUADRATURE_K})"
        )));
    }
    let low = 2 * k + 40;
    let high = low + CONFIRMATION_EXTRA_NODES;
    let a = amplitude_with_rule(k, s, low);
    let b = amplitude_with_rule(k, s, high);
    let diff = (a - b).abs();
    if diff > INSTABILITY_THRESHOLD {
        return Err(Error::Unstable { k, low, high, diff });
    }
    Ok(b)
}

fn amplitude_with_rule(k: usize, s: f64, nodes: usize) -> f64 {
    // product φ_k ψ_s ∝ H_k(x) exp(−(1 + 1/s²) x²/2)
    let scale = 0.5 * (1.0 + 1.0 / (s * s));
    GaussHermite::with_nodes(nodes)
        .integrate_scaled(scale, |x| hermite_functions(k + 1, x)[k] * axis_wavefunction(s, x))
}

/// `p_k(s) = |∫ φ_k ψ_s dx|²` by quadrature.
pub fn fock_overlap_quadrature(k: usize, s: f64) -> Result<f64> {
    fock_amplitude_quadrature(k, s).map(|a| a * a)
}

/// Closed form expressed in the squeeze factor, for convenience.
pub fn fock_overlap_closed_s(k: usize, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(domain(format!("squeeze factor must be positive, got {s}")));
    }
    fock_overlap_closed(k, energy_from_s(s))
}

/// Squeeze factor on the `s ≥ 1` branch for an energy.
pub fn canonical_s(energy: f64) -> Result<f64> {
    s_from_energy(energy, Branch::Upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::composite_legendre;
    use crate::symplectic::shape_to_uv;

    #[test]
    fn vacuum_wavefunction_at_origin() {
        let psi = SqueezedVacuum::vacuum();
        assert!((psi.wavefunction(0.0).unwrap() - PI.powf(-0.25)).abs() < 1e-15);
    }

    #[test]
    fn wavefunction_normalized() {
        for s in [0.5, 1.0, 3.0] {
            let psi = SqueezedVacuum::from_s(s, 0.0).unwrap();
            let (x, w) = composite_legendre(-40.0, 40.0, 80, 20);
            let norm: f64 = x
                .iter()
                .zip(&w)
                .map(|(&x, &w)| w * psi.wavefunction(x).unwrap().powi(2))
                .sum();
            assert!((norm - 1.0).abs() < 1e-10, "s = {s}: {norm}");
        }
    }

    #[test]
    fn wavefunction_value_at_two() {
        let psi = SqueezedVacuum::from_s(2.0, 0.0).unwrap();
        let want = (4.0 * PI).powf(-0.25) * (-0.5f64).exp();
        assert!((psi.wavefunction(2.0).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn rotated_wavefunction_unsupported() {
        let psi = SqueezedVacuum::from_s(2.0, 0.4).unwrap();
        assert!(matches!(psi.wavefunction(0.0), Err(Error::Capability(_))));
    }

    #[test]
    fn g_matrix_examples() {
        let id = g_matrix(ParabolicElement::identity());
        assert_eq!(id, GMatrix::identity());
        let g = g_matrix(ParabolicElement::new(2.0, 1.0).unwrap());
        assert_eq!(g.entries(), [[2.5, 0.5], [0.5, 0.5]]);
    }

    #[test]
    fn g_matrix_charts_agree() {
        for &(s, th) in &[(2.0, 0.3), (0.4, 2.9), (5.0, 1.5), (1.3, 0.0)] {
            let sp = ShapeParams::new(s, th).unwrap();
            let a = g_matrix(shape_to_uv(sp));
            let b = g_matrix_shape(sp);
            assert!(a.max_abs_diff(&b) < 1e-10, "{a:?} {b:?}");
        }
    }

    #[test]
    fn covariance_of_axis_state() {
        let cov = SqueezedVacuum::from_s(2.0, 0.0).unwrap().covariance();
        assert!((cov[0][0] - 2.0).abs() < 1e-15);
        assert!((cov[1][1] - 0.125).abs() < 1e-15);
        assert_eq!(cov[0][1], 0.0);
    }

    #[test]
    fn g_matrix_validation() {
        assert!(GMatrix::new([[2.0, 0.0], [0.0, 0.5]]).is_ok());
        assert!(GMatrix::new([[2.0, 0.1], [0.0, 0.5]]).is_err());
        assert!(GMatrix::new([[-2.0, 0.0], [0.0, -0.5]]).is_err());
        assert!(GMatrix::new([[1.0, 0.0], [0.0, 2.0]]).is_err());
    }

    #[test]
    fn wigner_vacuum_origin() {
        assert!((wigner(&GMatrix::identity(), [0.0, 0.0]) - 1.0 / PI).abs() < 1e-16);
    }

    #[test]
    fn closed_overlap_examples() {
        for e in [0.5, 0.9, 3.0, 40.0] {
            for k in (1..30).step_by(2) {
                assert_eq!(fock_overlap_closed(k, e).unwrap(), 0.0);
            }
        }
        assert!((fock_overlap_closed(0, 0.5).unwrap() - 1.0).abs() < 1e-15);
        for k in 1..40 {
            assert_eq!(fock_overlap_closed(k, 0.5).unwrap(), 0.0);
        }
        assert!(fock_overlap_closed(0, 0.4).is_err());
    }

    #[test]
    fn closed_matches_squeeze_parameter_form() {
        // With s = e^r: |⟨2n|ψ⟩|² = (2n)!/(4^n n!²) tanh(r)^{2n}/cosh r.
        let r: f64 = 0.8;
        let s = r.exp();
        for n in 0..10usize {
            let comb = (crate::special::ln_factorial(2 * n)
                - 2.0 * crate::special::ln_factorial(n)
                - (n as f64) * 4f64.ln())
            .exp();
            let want = comb * r.tanh().powi(2 * n as i32) / r.cosh();
            let got = fock_overlap_closed_s(2 * n, s).unwrap();
            assert!((got - want).abs() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn quadrature_examples() {
        assert!((fock_overlap_quadrature(0, 1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!(fock_overlap_quadrature(1, 3.0).unwrap().abs() < 1e-14);
        let q = fock_overlap_quadrature(2, 2.0).unwrap();
        let c = fock_overlap_closed(2, energy_from_s(2.0)).unwrap();
        assert!((q - c).abs() < 1e-10);
    }

    #[test]
    fn quadrature_capability_limit() {
        assert!(matches!(fock_overlap_quadrature(201, 1.5), Err(Error::Capability(_))));
        assert!(fock_overlap_quadrature(200, 1.5).is_ok());
    }

    #[test]
    fn closed_and_quadrature_agree() {
        for s in [0.5, 2.0, 5.0] {
            let e = energy_from_s(s);
            for k in (0..=40).step_by(2) {
                let c = fock_overlap_closed(k, e).unwrap();
                let q = fock_overlap_quadrature(k, s).unwrap();
                assert!((c - q).abs() < 1e-10, "k = {k}, s = {s}: {c} vs {q}");
            }
        }
    }

    #[test]
    fn amplitude_signs() {
        // wide states (s > 1) have positive even amplitudes, narrow ones alternate
        for n in 0..8 {
            assert!(fock_amplitude_quadrature(2 * n, 2.0).unwrap() > 0.0);
            let narrow = fock_amplitude_quadrature(2 * n, 0.5).unwrap();
            assert_eq!(narrow > 0.0, n % 2 == 0);
        }
    }

    #[test]
    fn normalization_deficit() {
        for e in [0.6, 1.0, 2.5, 5.0] {
            let total: f64 = (0..=200).map(|k| fock_overlap_closed(k, e).unwrap()).sum();
            assert!(1.0 - total < 1e-8, "E = {e}: deficit {}", 1.0 - total);
            assert!(total <= 1.0 + 1e-12);
        }
    }
}
