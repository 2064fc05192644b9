//! Truncated number-basis linear algebra for one and two modes.
//!
//! `X = (a + a†)/√2`, `P = (a − a†)/(i√2)`. Unitaries are exponentials of the
//! truncated generators, computed by Hermitian eigendecomposition, so they are
//! an independent route to the closed forms in [`crate::gaussian`]. Nothing
//! here errors on truncation; callers pick the cutoff.
//!
//! Two-mode vectors use row-major pairing: `|k₁⟩|k₂⟩ ↦ k₁·d + k₂`.

use std::f64::consts::FRAC_PI_4;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{domain, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// State vector in the number basis, truncated to `dim` levels.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: DVector<Complex64>,
}

impl FockVector {
    pub fn new(amps: DVector<Complex64>) -> Self {
        FockVector { amps }
    }

    pub fn from_real(amps: &[f64]) -> Self {
        FockVector {
            amps: DVector::from_iterator(amps.len(), amps.iter().map(|&a| Complex64::new(a, 0.0))),
        }
    }

    /// Number state `|k⟩` in dimension `dim`.
    pub fn basis(k: usize, dim: usize) -> Result<Self> {
        if k >= dim {
            return Err(domain(format!("|{k}⟩ does not fit below cutoff {dim}")));
        }
        let mut amps = DVector::from_element(dim, ZERO);
        amps[k] = ONE;
        Ok(FockVector { amps })
    }

    pub fn vacuum(dim: usize) -> Self {
        Self::basis(0, dim.max(1)).expect("dim ≥ 1")
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub fn amplitude(&self, k: usize) -> Complex64 {
        self.amps[k]
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn normalized(&self) -> Self {
        FockVector {
            amps: &self.amps / Complex64::new(self.norm(), 0.0),
        }
    }

    pub fn inner(&self, other: &FockVector) -> Complex64 {
        self.amps.dotc(&other.amps)
    }

    /// Probabilities `|⟨k|ψ⟩|²`.
    pub fn populations(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Weight carried by levels `k ≥ from`.
    pub fn tail_weight(&self, from: usize) -> f64 {
        self.amps.iter().skip(from).map(|a| a.norm_sqr()).sum()
    }

    /// Copy into dimension `dim`, truncating or zero-padding.
    pub fn resized(&self, dim: usize) -> Self {
        let mut amps = DVector::from_element(dim, ZERO);
        for (k, a) in self.amps.iter().take(dim).enumerate() {
            amps[k] = *a;
        }
        FockVector { amps }
    }

    /// `|ψ⟩⊗|φ⟩` in the two-mode space (row-major).
    pub fn tensor(&self, other: &FockVector) -> DVector<Complex64> {
        let (m, n) = (self.dim(), other.dim());
        DVector::from_fn(m * n, |i, _| self.amps[i / n] * other.amps[i % n])
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> TruncatedOperator {
        TruncatedOperator::new(&self.amps * self.amps.adjoint())
    }
}

/// Dense operator in the number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    matrix: DMatrix<Complex64>,
}

impl TruncatedOperator {
    pub fn new(matrix: DMatrix<Complex64>) -> Self {
        assert!(matrix.is_square(), "operators are square");
        TruncatedOperator { matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(DMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(DMatrix::from_element(dim, dim, ZERO))
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        Self::new(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                ZERO
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.matrix.adjoint())
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(&self.matrix * Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        FockVector::new(&self.matrix * &v.amps)
    }

    /// Leading `dim × dim` block.
    pub fn truncated(&self, dim: usize) -> Self {
        Self::new(self.matrix.view((0, 0), (dim, dim)).into_owned())
    }

    pub fn kron(&self, other: &TruncatedOperator) -> Self {
        Self::new(self.matrix.kronecker(&other.matrix))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Largest entry modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &TruncatedOperator) -> f64 {
        (&self.matrix - &other.matrix).iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let h = (&self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0);
        let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Operator 2-norm of the Hermitian part.
    pub fn hermitian_spectral_norm(&self) -> f64 {
        self.hermitian_eigenvalues()
            .into_iter()
            .fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl Mul for &TruncatedOperator {
    type Output = TruncatedOperator;

    fn mul(self, rhs: &TruncatedOperator) -> TruncatedOperator {
        TruncatedOperator::new(&self.matrix * &rhs.matrix)
    }
}

impl Add for &TruncatedOperator {
    type Output = TruncatedOperator;

    fn add(self, rhs: &TruncatedOperator) -> TruncatedOperator {
        TruncatedOperator::new(&self.matrix + &rhs.matrix)
    }
}

impl Sub for &TruncatedOperator {
    type Output = TruncatedOperator;

    fn sub(self, rhs: &TruncatedOperator) -> TruncatedOperator {
        TruncatedOperator::new(&self.matrix - &rhs.matrix)
    }
}

/// Truncated annihilation operator.
pub fn annihilation(d: usize) -> TruncatedOperator {
    TruncatedOperator::new(DMatrix::from_fn(d, d, |i, j| {
        if j == i + 1 {
            Complex64::new((j as f64).sqrt(), 0.0)
        } else {
            ZERO
        }
    }))
}

/// Number operator `diag(0, 1, …, d−1)`.
pub fn number(d: usize) -> TruncatedOperator {
    let n: Vec<f64> = (0..d).map(|k| k as f64).collect();
    TruncatedOperator::diagonal(&n)
}

/// Position and momentum quadratures `(X, P)`.
pub fn quadratures(d: usize) -> Result<(TruncatedOperator, TruncatedOperator)> {
    if d < 2 {
        return Err(domain(format!("quadratures need d ≥ 2, got {d}")));
    }
    let a = annihilation(d).into_matrix();
    let ad = a.adjoint();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let x = (&a + &ad) * Complex64::new(r, 0.0);
    let p = (&a - &ad) * Complex64::new(0.0, -r);
    Ok((TruncatedOperator::new(x), TruncatedOperator::new(p)))
}

/// `exp(−i H)` for Hermitian `H`.
pub fn exp_minus_i_hermitian(h: &DMatrix<Complex64>) -> TruncatedOperator {
    let eig = SymmetricEigen::new(h.clone());
    let v = &eig.eigenvectors;
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from_polar(1.0, -l)));
    TruncatedOperator::new(v * phases * v.adjoint())
}

/// Displacement `exp(−i(xP + pX))`. Acting on `|0⟩` it gives the coherent
/// state with `α = (x − ip)/√2`.
pub fn displacement(x: f64, p: f64, d: usize) -> Result<TruncatedOperator> {
    let (xq, pq) = quadratures(d)?;
    let k = xq.matrix() * Complex64::new(p, 0.0) + pq.matrix() * Complex64::new(x, 0.0);
    Ok(exp_minus_i_hermitian(&k))
}

/// Coherent amplitude `α` produced by `displacement(x, p, ·)` on the vacuum.
pub fn coherent_alpha(x: f64, p: f64) -> Complex64 {
    Complex64::new(x, -p) * std::f64::consts::FRAC_1_SQRT_2
}

/// Closed-form coherent state `displacement(x, p)|0⟩`, truncated to `d` levels
/// (not renormalized).
pub fn coherent_state(x: f64, p: f64, d: usize) -> FockVector {
    let alpha = coherent_alpha(x, p);
    let mut amps = DVector::from_element(d, ZERO);
    let mut term = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for (k, slot) in amps.iter_mut().enumerate() {
        if k > 0 {
            term = term * alpha / (k as f64).sqrt();
        }
        *slot = term;
    }
    FockVector::new(amps)
}

/// Phase-space rotation `exp(iθ n)` (diagonal).
pub fn phase_rotation(theta: f64, d: usize) -> TruncatedOperator {
    TruncatedOperator::new(DMatrix::from_fn(d, d, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, theta * i as f64)
        } else {
            ZERO
        }
    }))
}

/// Squeeze unitary whose action on `|0⟩` is the squeezed vacuum of shape
/// `(s, θ)`, with covariance `½ G(s,θ)⁻¹`.
///
/// `S(ζ) = exp(½(ζ* a² − ζ a†²))` with `ζ = −ln(s)·e^{−2iθ}`; at `θ = 0` the
/// position variance is `s²/2` and `⟨0|S|0⟩ > 0`.
pub fn squeeze_unitary(s: f64, theta: f64, d: usize) -> Result<TruncatedOperator> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(domain(format!("squeeze factor must be positive, got {s}")));
    }
    let zeta = Complex64::from_polar(-s.ln(), -2.0 * theta);
    let a = annihilation(d).into_matrix();
    let a2 = &a * &a;
    let ad2 = a2.adjoint();
    // H = iA with A = ½(ζ* a² − ζ a†²), so exp(A) = exp(−iH)
    let h = (&a2 * zeta.conj() - &ad2 * zeta) * Complex64::new(0.0, 0.5);
    Ok(exp_minus_i_hermitian(&h))
}

/// Parity `diag((−1)^k)`.
pub fn parity(d: usize) -> TruncatedOperator {
    let signs: Vec<f64> = (0..d).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect();
    TruncatedOperator::diagonal(&signs)
}

/// Projector onto even photon numbers, `(1 + parity)/2`.
pub fn even_projector(d: usize) -> TruncatedOperator {
    let diag: Vec<f64> = (0..d).map(|k| if k % 2 == 0 { 1.0 } else { 0.0 }).collect();
    TruncatedOperator::diagonal(&diag)
}

/// Fast displacement of a vector for many `(x, p)` at fixed cutoff.
///
/// `xP + pX = R X R†` with `R = exp(iβn)`, `β = π/2 − atan2(p, x)`, holds exactly
/// for truncated matrices, so one diagonalization of `X` serves every
/// displacement.
#[derive(Debug, Clone)]
pub struct DisplacementKernel {
    dim: usize,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

impl DisplacementKernel {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(domain(format!("displacement kernel needs d ≥ 2, got {dim}")));
        }
        let x = DMatrix::from_fn(dim, dim, |i, j| {
            if i + 1 == j || j + 1 == i {
                (i.max(j) as f64 / 2.0).sqrt()
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(x);
        Ok(DisplacementKernel {
            dim,
            eigenvalues: eig.eigenvalues.iter().copied().collect(),
            eigenvectors: eig.eigenvectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// First `keep` components of `displacement(x, p)·ψ`, where `ψ` is padded to
    /// the kernel dimension.
    pub fn displace(&self, x: f64, p: f64, psi: &FockVector, keep: usize) -> Vec<Complex64> {
        let rho = x.hypot(p);
        let beta = std::f64::consts::FRAC_PI_2 - p.atan2(x);
        let support = psi.dim().min(self.dim);
        let v = &self.eigenvectors;
        // y = Vᵀ R† ψ
        let rotated: Vec<Complex64> = (0..support)
            .map(|j| psi.amplitude(j) * Complex64::from_polar(1.0, -beta * j as f64))
            .collect();
        let y: Vec<Complex64> = (0..self.dim)
            .map(|i| {
                let proj = rotated
                    .iter()
                    .enumerate()
                    .fold(ZERO, |acc, (j, w)| acc + w * v[(j, i)]);
                proj * Complex64::from_polar(1.0, -rho * self.eigenvalues[i])
            })
            .collect();
        (0..keep.min(self.dim))
            .map(|m| {
                let z = y
                    .iter()
                    .enumerate()
                    .fold(ZERO, |acc, (i, yi)| acc + yi * v[(m, i)]);
                z * Complex64::from_polar(1.0, beta * m as f64)
            })
            .collect()
    }
}

/// A real operator on the two-mode space that conserves total photon number,
/// stored as one block per total `N = k₁ + k₂`.
#[derive(Debug, Clone)]
pub struct NumberConservingOperator {
    dim: usize,
    blocks: Vec<NumberBlock>,
}

#[derive(Debug, Clone)]
struct NumberBlock {
    /// Smallest `k₁` in the block; the block basis is `k₁ = first, first+1, …`.
    first: usize,
    total: usize,
    matrix: DMatrix<f64>,
}

impl NumberBlock {
    fn index(&self, d: usize, i: usize) -> usize {
        let k1 = self.first + i;
        k1 * d + (self.total - k1)
    }
}

impl NumberConservingOperator {
    /// Per-mode cutoff `d`; the operator acts on `d²` dimensions.
    pub fn mode_dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        let d = self.dim;
        assert_eq!(v.len(), d * d, "two-mode vector has wrong length");
        let mut out = DVector::from_element(d * d, ZERO);
        for b in &self.blocks {
            let n = b.matrix.nrows();
            for i in 0..n {
                let acc = (0..n).fold(ZERO, |acc, j| acc + v[b.index(d, j)] * b.matrix[(i, j)]);
                out[b.index(d, i)] = acc;
            }
        }
        out
    }

    pub fn to_dense(&self) -> TruncatedOperator {
        let d = self.dim;
        let mut m = DMatrix::from_element(d * d, d * d, ZERO);
        for b in &self.blocks {
            let n = b.matrix.nrows();
            for i in 0..n {
                for j in 0..n {
                    m[(b.index(d, i), b.index(d, j))] = Complex64::new(b.matrix[(i, j)], 0.0);
                }
            }
        }
        TruncatedOperator::new(m)
    }
}

/// The 50:50 refactorization `ψ(x₁, x₂) ↦ ψ((x₊+x₋)/√2, (x₊−x₋)/√2)`, i.e.
/// `L²(x₁)⊗L²(x₂) → L²(x₊)⊗L²(x₋)`.
///
/// This is the beamsplitter `exp(π/4 (a₁†a₂ − a₁a₂†))` followed by parity on
/// the second mode. Blocks with `k₁ + k₂ ≥ d` are truncated.
pub fn refactorization_5050(d: usize) -> Result<NumberConservingOperator> {
    if d < 2 {
        return Err(domain(format!("refactorization needs d ≥ 2, got {d}")));
    }
    let blocks = (0..=2 * (d - 1))
        .map(|total| {
            let first = total.saturating_sub(d - 1);
            let last = total.min(d - 1);
            let n = last - first + 1;
            let mut gen = DMatrix::zeros(n, n);
            for i in 0..n - 1 {
                let k1 = (first + i) as f64;
                let k2 = (total - first - i) as f64;
                // a₁†a₂ |k₁, k₂⟩ = √((k₁+1) k₂) |k₁+1, k₂−1⟩
                let amp = ((k1 + 1.0) * k2).sqrt() * FRAC_PI_4;
                gen[(i + 1, i)] = amp;
                gen[(i, i + 1)] = -amp;
            }
            let mut matrix = gen.exp();
            for i in 0..n {
                if (total - first - i) % 2 == 1 {
                    matrix.row_mut(i).neg_mut();
                }
            }
            NumberBlock { first, total, matrix }
        })
        .collect();
    Ok(NumberConservingOperator { dim: d, blocks })
}

/// Two-mode SWAP on `d²` dimensions.
pub fn swap(d: usize) -> TruncatedOperator {
    let n = d * d;
    TruncatedOperator::new(DMatrix::from_fn(n, n, |i, j| {
        let (a, b) = (j / d, j % d);
        if i == b * d + a {
            ONE
        } else {
            ZERO
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn vacuum_moments() {
        let (x, p) = quadratures(6).unwrap();
        let vac = FockVector::vacuum(6);
        assert_eq!(x.apply(&vac).inner(&vac), ZERO);
        let h = &(&x * &x) + &(&p * &p);
        assert!((h.get(0, 0) - ONE).norm() < 1e-15);
        assert!(quadratures(1).is_err());
    }

    #[test]
    fn canonical_commutator_on_interior() {
        let d = 10;
        let (x, p) = quadratures(d).unwrap();
        let comm = &(&x * &p) - &(&p * &x);
        let inner = comm.truncated(d - 1);
        let want = TruncatedOperator::identity(d - 1).scale(1.0);
        let want = TruncatedOperator::new(want.matrix() * Complex64::new(0.0, 1.0));
        assert!(inner.max_abs_diff(&want) < 1e-12);
        assert!(x.hermiticity_defect() < 1e-14 && p.hermiticity_defect() < 1e-14);
    }

    #[test]
    fn position_ladder_elements() {
        let (x, _) = quadratures(12).unwrap();
        for k in 0..11 {
            assert!((x.get(k + 1, k) - c(((k + 1) as f64 / 2.0).sqrt())).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_displacement_is_identity() {
        let d = displacement(0.0, 0.0, 9).unwrap();
        assert!(d.max_abs_diff(&TruncatedOperator::identity(9)) < 1e-13);
    }

    #[test]
    fn displaced_vacuum_is_poissonian() {
        let d = 64;
        for &(x, p) in &[(1.0, 0.0), (0.5, -1.5), (-2.0, 2.0)] {
            let out = displacement(x, p, d).unwrap().apply(&FockVector::vacuum(d));
            let r2: f64 = x * x + p * p;
            let mut want = (-r2 / 2.0).exp();
            for n in 0..=10 {
                if n > 0 {
                    want *= r2 / 2.0 / n as f64;
                }
                assert!((out.amplitude(n).norm_sqr() - want).abs() < 1e-8, "n = {n}");
            }
            let closed = coherent_state(x, p, d);
            for n in 0..=10 {
                assert!((closed.amplitude(n) - out.amplitude(n)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn displacement_unitary_on_low_block() {
        let d = 64;
        for &(x, p) in &[(2.0, 2.0), (-2.0, 1.0), (0.3, -2.0)] {
            let u = displacement(x, p, d).unwrap();
            let prod = &u.adjoint() * &u;
            let defect = prod.truncated(d / 2).max_abs_diff(&TruncatedOperator::identity(d / 2));
            assert!(defect < 1e-8, "{defect}");
        }
    }

    #[test]
    fn kernel_matches_dense_displacement() {
        let d = 40;
        let kernel = DisplacementKernel::new(d).unwrap();
        let psi = FockVector::from_real(&[0.6, 0.0, 0.8]);
        for &(x, p) in &[(0.7, 0.2), (-1.1, 0.9), (0.0, -2.0), (3.0, 0.0)] {
            let dense = displacement(x, p, d).unwrap().apply(&psi.resized(d));
            let fast = kernel.displace(x, p, &psi, 12);
            for (m, z) in fast.iter().enumerate() {
                assert!((z - dense.amplitude(m)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn unit_squeeze_is_identity() {
        for th in [0.0, 0.9] {
            let s = squeeze_unitary(1.0, th, 10).unwrap();
            assert!(s.max_abs_diff(&TruncatedOperator::identity(10)) < 1e-13);
        }
        assert!(squeeze_unitary(0.0, 0.0, 4).is_err());
    }

    #[test]
    fn squeezed_vacuum_is_parity_even_with_positive_vacuum_amplitude() {
        let d = 60;
        let out = squeeze_unitary(2.0, 0.0, d).unwrap().apply(&FockVector::vacuum(d));
        let back = parity(d).apply(&out);
        for k in 0..d {
            assert!((back.amplitude(k) - out.amplitude(k)).norm() < 1e-10);
        }
        assert!(out.amplitude(0).re > 0.0 && out.amplitude(0).im.abs() < 1e-14);
    }

    #[test]
    fn squeezed_vacuum_covariance_matches_g_matrix() {
        use crate::gaussian::SqueezedVacuum;
        let d = 80;
        let (x, p) = quadratures(d).unwrap();
        for &(s, th) in &[(2.0, 0.0), (1.5, 0.7), (0.6, 2.0)] {
            let psi = squeeze_unitary(s, th, d).unwrap().apply(&FockVector::vacuum(d));
            let expect = |op: &TruncatedOperator| op.apply(&psi).amplitudes().dotc(psi.amplitudes());
            let xx = expect(&(&x * &x)).re;
            let pp = expect(&(&p * &p)).re;
            let xp = 0.5 * expect(&(&(&x * &p) + &(&p * &x))).re;
            let cov = SqueezedVacuum::from_s(s, th).unwrap().covariance();
            assert!((xx - cov[0][0]).abs() < 1e-9, "Δx² {xx} vs {}", cov[0][0]);
            assert!((pp - cov[1][1]).abs() < 1e-9, "Δp² {pp} vs {}", cov[1][1]);
            assert!((xp - cov[0][1]).abs() < 1e-9, "Δxp {xp} vs {}", cov[0][1]);
        }
    }

    #[test]
    fn parity_and_even_projector() {
        assert_eq!(parity(2), TruncatedOperator::diagonal(&[1.0, -1.0]));
        let p = parity(7);
        assert!((&p * &p).max_abs_diff(&TruncatedOperator::identity(7)) == 0.0);
        assert_eq!(even_projector(4), TruncatedOperator::diagonal(&[1.0, 0.0, 1.0, 0.0]));
        for d in 1..9 {
            let pi = even_projector(d);
            assert!((&pi * &pi).max_abs_diff(&pi) == 0.0);
            assert_eq!(pi.trace().re as usize, d.div_ceil(2));
            let half = (&TruncatedOperator::identity(d) + &parity(d)).scale(0.5);
            assert!(half.max_abs_diff(&pi) == 0.0);
        }
    }

    #[test]
    fn refactorization_fixes_vacuum() {
        let d = 6;
        let w = refactorization_5050(d).unwrap();
        let vac = FockVector::vacuum(d).tensor(&FockVector::vacuum(d));
        let out = w.apply(&vac);
        assert!((out[0] - ONE).norm() < 1e-14);
        assert!((out.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn refactorization_single_photon_modes() {
        // |1,0⟩ ↦ (|1,0⟩ + |0,1⟩)/√2 and |0,1⟩ ↦ (|1,0⟩ − |0,1⟩)/√2
        let d = 4;
        let w = refactorization_5050(d).unwrap().to_dense();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let (i10, i01) = (d, 1);
        assert!((w.get(i10, i10) - c(r)).norm() < 1e-14);
        assert!((w.get(i01, i10) - c(r)).norm() < 1e-14);
        assert!((w.get(i10, i01) - c(r)).norm() < 1e-14);
        assert!((w.get(i01, i01) - c(-r)).norm() < 1e-14);
    }

    #[test]
    fn refactorization_conserves_total_number() {
        let d = 7;
        let w = refactorization_5050(d).unwrap().to_dense();
        for i in 0..d * d {
            for j in 0..d * d {
                if i / d + i % d != j / d + j % d {
                    assert!(w.get(i, j).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn swap_becomes_parity_on_minus_mode() {
        let d = 8;
        let w = refactorization_5050(d).unwrap().to_dense();
        let conj = &(&w * &swap(d)) * &w.adjoint();
        let target = TruncatedOperator::identity(d).kron(&parity(d));
        for i in 0..d * d {
            for j in 0..d * d {
                let low = |k: usize| k / d + k % d < d / 2;
                if low(i) && low(j) {
                    assert!((conj.get(i, j) - target.get(i, j)).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn refactorization_is_an_involution_on_low_blocks() {
        // the coordinate change is a reflection, so applying it twice is the identity
        let d = 6;
        let w = refactorization_5050(d).unwrap().to_dense();
        let sq = &w * &w;
        for i in 0..d * d {
            for j in 0..d * d {
                if i / d + i % d < d && j / d + j % d < d {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((sq.get(i, j) - c(want)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn swap_is_involution() {
        let s = swap(3);
        assert_eq!((&s * &s).max_abs_diff(&TruncatedOperator::identity(9)), 0.0);
    }
}
