//! Property tests over randomly drawn group elements, shapes and ensembles.

use gaussdesign::designs::{ensemble_average_spectrum, gamma_coeff, two_design_deviation, EnsembleSpec};
use gaussdesign::gaussian::{fock_overlap_closed_s, g_matrix, g_matrix_shape, wigner};
use gaussdesign::quadrature::composite_legendre;
use gaussdesign::symplectic::{
    compose_parabolic, energy_from_s, haar_density_uv, iwasawa_decompose, rotation, s_from_energy, shape_to_uv,
    shear, squeeze, Branch, ParabolicElement, ShapeParams, SymplecticMatrix,
};
use proptest::prelude::*;

fn group_element() -> impl Strategy<Value = SymplecticMatrix> {
    (0.0..std::f64::consts::TAU, -2.0f64..2.0, -3.0f64..3.0)
        .prop_map(|(t, lu, v)| rotation(t) * squeeze(lu.exp()).unwrap() * shear(v))
}

fn parabolic() -> impl Strategy<Value = ParabolicElement> {
    (-2.0f64..2.0, -3.0f64..3.0).prop_map(|(lu, v)| ParabolicElement::new(lu.exp(), v).unwrap())
}

fn shape() -> impl Strategy<Value = ShapeParams> {
    (-2.0f64..2.0, 0.0..std::f64::consts::PI).prop_map(|(ls, t)| ShapeParams::new(ls.exp(), t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn products_stay_symplectic(a in group_element(), b in group_element()) {
        let m = a * b;
        let scale = m.entries().iter().flatten().map(|x| x * x).sum::<f64>();
        prop_assert!((m.det() - 1.0).abs() < 1e-12 * scale.max(1.0));
    }

    #[test]
    fn multiplication_is_associative(a in group_element(), b in group_element(), c in group_element()) {
        let lhs = (a * b) * c;
        let rhs = a * (b * c);
        let scale = lhs.entries().iter().flatten().map(|x| x.abs()).fold(1.0, f64::max);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12 * scale);
    }

    #[test]
    fn iwasawa_round_trip(m in group_element()) {
        let f = iwasawa_decompose(&m).unwrap();
        prop_assert!(f.u > 0.0);
        prop_assert!((0.0..std::f64::consts::TAU).contains(&f.theta));
        let scale = m.entries().iter().flatten().map(|x| x.abs()).fold(1.0, f64::max);
        prop_assert!(f.reconstruct().max_abs_diff(&m) < 1e-12 * scale);
    }

    #[test]
    fn parabolic_composition_matches_matrices(a in parabolic(), b in parabolic()) {
        let composed = compose_parabolic(a, b).as_matrix();
        let product = a.as_matrix() * b.as_matrix();
        let scale = product.entries().iter().flatten().map(|x| x.abs()).fold(1.0, f64::max);
        prop_assert!(composed.max_abs_diff(&product) < 1e-12 * scale);
    }

    #[test]
    fn energy_round_trip(ls in -3.0f64..3.0) {
        let s = ls.exp();
        let e = energy_from_s(s);
        let branch = if s >= 1.0 { Branch::Upper } else { Branch::Lower };
        let back = s_from_energy(e, branch).unwrap();
        // near s = 1 the inverse is a square root of a difference
        let tol = if (s - 1.0).abs() < 1e-3 { 1e-6 } else { 1e-10 };
        prop_assert!((back / s - 1.0).abs() < tol, "s = {s}, back = {back}");
        let up = s_from_energy(e, Branch::Upper).unwrap();
        let low = s_from_energy(e, Branch::Lower).unwrap();
        prop_assert!((up * low - 1.0).abs() < 1e-14);
    }

    #[test]
    fn reciprocal_squeeze_has_same_populations(ls in -2.0f64..2.0, k in 0usize..30) {
        let s = ls.exp();
        let a = fock_overlap_closed_s(k, s).unwrap();
        let b = fock_overlap_closed_s(k, 1.0 / s).unwrap();
        prop_assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn g_matrix_has_unit_determinant(p in parabolic(), sp in shape()) {
        prop_assert!((g_matrix(p).det() - 1.0).abs() < 1e-10);
        prop_assert!((g_matrix_shape(sp).det() - 1.0).abs() < 1e-10);
        // both charts describe the same state
        let from_uv = g_matrix(shape_to_uv(sp));
        let scale = from_uv.entries().iter().flatten().map(|x| x.abs()).fold(1.0, f64::max);
        prop_assert!(from_uv.max_abs_diff(&g_matrix_shape(sp)) < 1e-10 * scale);
    }

    #[test]
    fn wigner_covariance(m in group_element(), sp in shape(), x in -2.0f64..2.0, p in -2.0f64..2.0) {
        let g = g_matrix_shape(sp);
        let moved = g.transformed(&m);
        let lhs = wigner(&moved, m.apply([x, p]));
        let rhs = wigner(&g, [x, p]);
        prop_assert!((lhs - rhs).abs() < 1e-10 * rhs.max(1e-300) + 1e-300, "{lhs} vs {rhs}");
    }
}

fn random_spec() -> impl Strategy<Value = EnsembleSpec> {
    prop::collection::vec((0.5f64..200.0, 0.0f64..1.0), 1..40).prop_map(|mut pts| {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        pts.dedup_by(|a, b| a.0 == b.0);
        let (e, w): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
        let w = if w.iter().sum::<f64>() > 0.0 { w } else { vec![1.0; e.len()] };
        EnsembleSpec::new(e, w).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn spectrum_respects_gamma_bound(spec in random_spec()) {
        let r = ensemble_average_spectrum(&spec, 10).unwrap();
        let a = r.normalized();
        for k in 0..=10 {
            prop_assert!(a[k] <= gamma_coeff(k) / gamma_coeff(0) + 1e-12, "k = {k}");
        }
        for k in 1..=10 {
            prop_assert!(r.energy_weights[k] <= r.energy_weights[k - 1]);
        }
        prop_assert!(two_design_deviation(&r).unwrap() >= 1.0 - gamma_coeff(10) / gamma_coeff(0) - 1e-12);
    }
}

// Left translation by g acts on (t, v) = (ln u, v) as (t + ln u', u' v + v'),
// and the density 1/u² du dv becomes e^{-t} dt dv. Integrate a smooth bump
// against it before and after translation.
#[test]
fn haar_density_is_left_invariant() {
    let bump = |u: f64, v: f64| (-(u.ln().powi(2)) - v * v).exp();
    let (ts, tw) = composite_legendre(-12.0, 12.0, 48, 16);
    let integral = |g: ParabolicElement| -> f64 {
        let mut total = 0.0;
        for (&t, &wt) in ts.iter().zip(&tw) {
            let u = t.exp();
            // the translated bump is centred at v = -v'/u' with width 1/u'
            let centre = -g.v() / g.u();
            let half = 12.0 / g.u();
            let (vs, vw) = composite_legendre(centre - half, centre + half, 24, 16);
            for (&v, &wv) in vs.iter().zip(&vw) {
                let h = ParabolicElement::new(u, v).unwrap();
                let moved = compose_parabolic(g, h);
                total += wt * wv * u * haar_density_uv(u, v).unwrap() * bump(moved.u(), moved.v());
            }
        }
        total
    };
    let reference = integral(ParabolicElement::identity());
    // ∫ e^{-t²-v²} e^{-t} dt dv = π e^{1/4}
    assert!((reference / (std::f64::consts::PI * 0.25f64.exp()) - 1.0).abs() < 1e-10);
    let translations = (0..20).map(|i| {
        let x = i as f64;
        ParabolicElement::new((0.15 * x - 1.2).exp(), 0.4 * x - 3.5).unwrap()
    });
    for g in translations {
        let moved = integral(g);
        assert!((moved / reference - 1.0).abs() < 1e-9, "u = {}, v = {}: {moved}", g.u(), g.v());
    }
}
