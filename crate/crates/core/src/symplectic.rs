//! Sp(1,ℝ) = SL(2,ℝ) acting on phase-space vectors `(x, p)ᵀ`.
//!
//! Generators follow the rotation / squeeze / shear triple:
//!
//! ```text
//! R(θ) = ( cos θ   sin θ )    U(u) = ( u^{-1/2}  0       )    V(v) = ( 1   0 )
//!        ( −sin θ  cos θ )           ( 0         u^{1/2} )           ( −v  1 )
//! ```
//!
//! Every element factors as `R(θ) U(u) V(v)` (Iwasawa, `Sp = KAN`). The
//! squeeze-shear subgroup `S(u,v) = V(v) U(u)` is transitive on squeezed
//! vacua and carries the left-invariant density `du dv / u²`.

use std::f64::consts::{PI, TAU};
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

const DET_TOL: f64 = 1e-12;

/// A real 2×2 matrix `((a, b), (c, d))` with unit determinant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymplecticMatrix {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl SymplecticMatrix {
    /// Checked constructor. The determinant must equal 1 up to `1e-12`
    /// relative to the squared entry scale.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let m = SymplecticMatrix { a, b, c, d };
        let scale = (a * a + b * b + c * c + d * d).max(1.0);
        if !m.det().is_finite() || (m.det() - 1.0).abs() > DET_TOL * scale {
            return Err(domain(format!(
                "matrix has determinant {} (expected 1)",
                m.det()
            )));
        }
        Ok(m)
    }

    fn raw(a: f64, b: f64, c: f64, d: f64) -> Self {
        SymplecticMatrix { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::raw(1.0, 0.0, 0.0, 1.0)
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Inverse; for unit determinant this is the adjugate.
    pub fn inverse(&self) -> Self {
        Self::raw(self.d, -self.b, -self.c, self.a)
    }

    pub fn transpose(&self) -> Self {
        Self::raw(self.a, self.c, self.b, self.d)
    }

    pub fn apply(&self, z: [f64; 2]) -> [f64; 2] {
        [self.a * z[0] + self.b * z[1], self.c * z[0] + self.d * z[1]]
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.a - other.a,
            self.b - other.b,
            self.c - other.c,
            self.d - other.d,
        ]
        .iter()
        .fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl Mul for SymplecticMatrix {
    type Output = SymplecticMatrix;

    fn mul(self, r: SymplecticMatrix) -> SymplecticMatrix {
        SymplecticMatrix::raw(
            self.a * r.a + self.b * r.c,
            self.a * r.b + self.b * r.d,
            self.c * r.a + self.d * r.c,
            self.c * r.b + self.d * r.d,
        )
    }
}

/// Phase-space rotation `R(θ)`.
pub fn rotation(theta: f64) -> SymplecticMatrix {
    let (s, c) = theta.sin_cos();
    SymplecticMatrix::raw(c, s, -s, c)
}

/// Squeeze `U(u) = diag(u^{-1/2}, u^{1/2})`.
pub fn squeeze(u: f64) -> Result<SymplecticMatrix> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(domain(format!("squeeze parameter must be positive, got {u}")));
    }
    let r = u.sqrt();
    Ok(SymplecticMatrix::raw(1.0 / r, 0.0, 0.0, r))
}

/// Shear `V(v)`.
pub fn shear(v: f64) -> SymplecticMatrix {
    SymplecticMatrix::raw(1.0, 0.0, -v, 1.0)
}

/// Element `S(u,v) = V(v)U(u)` of the squeeze-shear subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolicElement {
    u: f64,
    v: f64,
}

impl ParabolicElement {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        if !(u > 0.0) || !u.is_finite() || !v.is_finite() {
            return Err(domain(format!("parabolic element needs u > 0, got ({u}, {v})")));
        }
        Ok(ParabolicElement { u, v })
    }

    pub fn identity() -> Self {
        ParabolicElement { u: 1.0, v: 0.0 }
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn as_matrix(&self) -> SymplecticMatrix {
        let r = self.u.sqrt();
        // V(v)U(u) = ((u^{-1/2}, 0), (−v u^{-1/2}, u^{1/2}))
        SymplecticMatrix::raw(1.0 / r, 0.0, -self.v / r, r)
    }
}

/// Group law of the parabolic subgroup: `S(u',v') S(u,v) = S(u'u, u'v + v')`.
pub fn compose_parabolic(lhs: ParabolicElement, rhs: ParabolicElement) -> ParabolicElement {
    ParabolicElement {
        u: lhs.u * rhs.u,
        v: lhs.u * rhs.v + lhs.v,
    }
}

/// Iwasawa factors of `m = R(θ) U(u) V(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IwasawaFactors {
    /// Rotation angle in `[0, 2π)`.
    pub theta: f64,
    pub u: f64,
    pub v: f64,
}

impl IwasawaFactors {
    pub fn reconstruct(&self) -> SymplecticMatrix {
        let r = self.u.sqrt();
        rotation(self.theta) * SymplecticMatrix::raw(1.0 / r, 0.0, 0.0, r) * shear(self.v)
    }
}

/// Factor `m` as `R(θ) U(u) V(v)`.
///
/// `U(u)V(v)` is lower triangular with second column `(0, √u)`, so the second
/// column of `m` is `√u (sin θ, cos θ)`: its norm gives `u`, its direction gives
/// `θ`, and `v` is read off `R(θ)ᵀ m`.
pub fn iwasawa_decompose(m: &SymplecticMatrix) -> Result<IwasawaFactors> {
    let scale = m.entries().iter().flatten().map(|x| x * x).sum::<f64>().max(1.0);
    if (m.det() - 1.0).abs() > DET_TOL * scale {
        return Err(domain(format!("determinant {} is not 1", m.det())));
    }
    let norm = m.b.hypot(m.d);
    let theta = canonical_angle(m.b.atan2(m.d), TAU);
    let u = norm * norm;
    let lower = rotation(theta).transpose() * *m;
    let v = -lower.c / norm;
    Ok(IwasawaFactors { theta, u, v })
}

fn canonical_angle(theta: f64, period: f64) -> f64 {
    let t = theta.rem_euclid(period);
    // rem_euclid can round up to exactly `period`
    if t >= period {
        0.0
    } else {
        t
    }
}

/// Left-invariant Haar density on the parabolic subgroup, `1/u²`,
/// normalized to 1 at the identity.
pub fn haar_density_uv(u: f64, _v: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(domain(format!("Haar density needs u > 0, got {u}")));
    }
    Ok(1.0 / (u * u))
}

/// Squeeze factor and major-axis angle of a squeezed vacuum. The angle is
/// reduced into `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeParams {
    s: f64,
    theta: f64,
}

impl ShapeParams {
    pub fn new(s: f64, theta: f64) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() || !theta.is_finite() {
            return Err(domain(format!("shape needs s > 0, got (s = {s}, θ = {theta})")));
        }
        Ok(ShapeParams {
            s,
            theta: canonical_angle(theta, PI),
        })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn energy(&self) -> EnergyShape {
        EnergyShape {
            energy: energy_from_s(self.s),
            theta: self.theta,
        }
    }
}

/// Mean energy and orientation of a squeezed vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyShape {
    energy: f64,
    theta: f64,
}

impl EnergyShape {
    pub fn new(energy: f64, theta: f64) -> Result<Self> {
        if !(energy >= 0.5) || !energy.is_finite() || !theta.is_finite() {
            return Err(domain(format!("energy must be ≥ 1/2, got {energy}")));
        }
        Ok(EnergyShape {
            energy,
            theta: canonical_angle(theta, PI),
        })
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Shape on the `s ≥ 1` branch.
    pub fn shape(&self) -> ShapeParams {
        ShapeParams {
            s: s_from_energy(self.energy, Branch::Upper).expect("energy validated"),
            theta: self.theta,
        }
    }
}

/// `(u, v)` of the parabolic element carrying the vacuum to the state of
/// shape `(s, θ)`.
pub fn shape_to_uv(sp: ShapeParams) -> ParabolicElement {
    let s = sp.s;
    if s == 1.0 {
        return ParabolicElement::identity();
    }
    let (sin, cos) = sp.theta.sin_cos();
    let s2 = s * s;
    let s4 = s2 * s2;
    let denom = s4 * cos * cos + sin * sin;
    ParabolicElement {
        u: s2 / denom,
        v: (s4 - 1.0) * sin * cos / denom,
    }
}

/// Invariant density in shape coordinates, `2|1 − s⁴|/s³` (per `ds dθ`).
pub fn invariant_density_s_theta(s: f64) -> f64 {
    let s4 = s.powi(4);
    2.0 * (1.0 - s4).abs() / s.powi(3)
}

/// Invariant density in energy coordinates (per `dE dθ`): the constant 4.
pub fn invariant_density_energy() -> f64 {
    4.0
}

/// `E(s) = (s² + 1/s²)/4`.
pub fn energy_from_s(s: f64) -> f64 {
    0.25 * (s * s + 1.0 / (s * s))
}

/// `dE/ds = (s − s⁻³)/2`.
pub fn energy_derivative(s: f64) -> f64 {
    (s.powi(4) - 1.0) / (2.0 * s.powi(3))
}

/// Branch of `s = √(2E ± √(4E² − 1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `s ≥ 1` (stretched along the major axis).
    Upper,
    /// `s ≤ 1`, the reciprocal of the upper branch.
    Lower,
}

pub fn s_from_energy(energy: f64, branch: Branch) -> Result<f64> {
    if !(energy >= 0.5) || !energy.is_finite() {
        return Err(domain(format!("energy must be ≥ 1/2, got {energy}")));
    }
    let upper = (2.0 * energy + (4.0 * energy * energy - 1.0).sqrt()).sqrt();
    Ok(match branch {
        Branch::Upper => upper,
        Branch::Lower => 1.0 / upper,
    })
}
