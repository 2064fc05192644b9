//! Gauss–Hermite and Gauss–Legendre rules, and normalized Hermite functions.
//!
//! Hermite *functions* `φ_k(x) = H_k(x) e^{-x²/2} / (π^{1/4} √(2^k k!))` are
//! generated with the three-term recurrence on the normalized functions,
//!
//! ```text
//! φ_{k+1}(x) = √(2/(k+1)) x φ_k(x) − √(k/(k+1)) φ_{k−1}(x),
//! ```
//!
//! which stays in range for every `k` used here. Raw Hermite polynomials
//! overflow long before that.
//!
//! Gauss–Hermite rules are stored with *modified* weights `W_i = w_i e^{x_i²}`,
//! so that `∫ g(x) dx ≈ Σ W_i g(x_i)`; the integrand is passed without the
//! `e^{-x²}` factor pulled out.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::{DMatrix, SymmetricEigen};

/// Values `φ_0(x), …, φ_{n−1}(x)` of the normalized Hermite functions.
pub fn hermite_functions(n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    out.push(cur);
    for k in 0..n.saturating_sub(1) {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// Single normalized Hermite function `φ_k(x)`.
pub fn hermite_function(k: usize, x: f64) -> f64 {
    hermite_functions(k + 1, x)[k]
}

/// `(φ_{n−1}(x), φ_n(x))`, used for Newton polishing of the nodes.
fn hermite_pair(n: usize, x: f64) -> (f64, f64) {
    let v = hermite_functions(n + 1, x);
    (v[n - 1], v[n])
}

/// A Gauss–Hermite rule with modified weights (see module docs).
#[derive(Debug, Clone)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussHermite {
    fn build(n: usize) -> Self {
        assert!(n >= 1, "Gauss–Hermite rule needs at least one node");
        // Golub–Welsch for the initial nodes.
        let jacobi = DMatrix::from_fn(n, n, |i, j| {
            if i + 1 == j || j + 1 == i {
                (i.max(j) as f64 / 2.0).sqrt()
            } else {
                0.0
            }
        });
        let mut nodes: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
        nodes.sort_by(f64::total_cmp);

        let nf = n as f64;
        let mut weights = Vec::with_capacity(n);
        for x in nodes.iter_mut() {
            // φ_n' = √(2n) φ_{n−1} − x φ_n
            for _ in 0..3 {
                let (pm1, p) = hermite_pair(n, *x);
                let dp = (2.0 * nf).sqrt() * pm1 - *x * p;
                if dp == 0.0 {
                    break;
                }
                let step = p / dp;
                *x -= step;
                if step.abs() < 1e-16 * x.abs().max(1.0) {
                    break;
                }
            }
            let (pm1, _) = hermite_pair(n, *x);
            weights.push(1.0 / (nf * pm1 * pm1));
        }
        GaussHermite { nodes, weights }
    }

    /// Cached rule with `n` nodes. Safe to call concurrently.
    pub fn with_nodes(n: usize) -> Arc<GaussHermite> {
        static CACHE: OnceLock<RwLock<HashMap<usize, Arc<GaussHermite>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(rule) = cache.read().expect("quadrature cache poisoned").get(&n) {
            return Arc::clone(rule);
        }
        let rule = Arc::new(GaussHermite::build(n));
        cache
            .write()
            .expect("quadrature cache poisoned")
            .entry(n)
            .or_insert(rule)
            .clone()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫ g(x) dx` with the nodes rescaled by `1/√scale`; exact when
    /// `g(x) = poly(x) e^{-scale·x²}` with degree below `2n`.
    pub fn integrate_scaled<F: Fn(f64) -> f64>(&self, scale: f64, g: F) -> f64 {
        let root = scale.sqrt();
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&y, &w)| w * g(y / root))
            .sum::<f64>()
            / root
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss–Legendre rule needs at least one node");
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pnm1 = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pnm1) / (x * x - 1.0);
            let step = pn / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss–Legendre rule on `[a, b]` with `panels` equal panels of
/// `order` nodes each. Returns `(nodes, weights)`.
pub fn composite_legendre(a: f64, b: f64, panels: usize, order: usize) -> (Vec<f64>, Vec<f64>) {
    let (xs, ws) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in xs.iter().zip(&ws) {
            nodes.push(mid + 0.5 * h * x);
            weights.push(0.5 * h * w);
        }
    }
    (nodes, weights)
}
