//! The five experiments. Each returns a [`Report`]; nothing here touches the
//! filesystem except the optional operator dump of `twirl`.

use std::path::Path;

use gaussdesign::designs::{
    ensemble_average_spectrum, gamma_coeff, heterodyne_limit_spectrum, hw_partial_twirl, sqrt_bound,
    two_copy_schmidt, twirl_summary, two_design_deviation, vacuum_twirl_exact, EnsembleSpec,
};
use gaussdesign::fock::{coherent_state, squeeze_unitary, FockVector, TruncatedOperator};
use gaussdesign::gaussian::{fock_overlap_closed, fock_overlap_quadrature, MAX_QUADRATURE_K};
use gaussdesign::symplectic::{energy_derivative, energy_from_s, invariant_density_energy, invariant_density_s_theta};
use serde_json::{json, Map};

use crate::config::{Density, Resolved};
use crate::output::{Check, Report, Table};
use crate::CliError;

pub const OVERLAP_TOLERANCE: f64 = 1e-9;
pub const DENSITY_TOLERANCE: f64 = 1e-9;
pub const JACOBIAN_FD_TOLERANCE: f64 = 1e-7;
/// Rows closer than this to `s = 1` are left out of the finite-difference
/// comparison: both `dE/ds` and the density vanish there.
pub const FD_EXCLUSION: f64 = 1e-3;
pub const TWIRL_OFFDIAG_TOLERANCE: f64 = 1e-6;
pub const TWIRL_ORACLE_TOLERANCE: f64 = 1e-9;
pub const BOUND_TOLERANCE: f64 = 1e-12;
pub const GRID_HALVING_TOLERANCE: f64 = 1e-6;

const DEFAULT_S: [f64; 4] = [0.5, 1.0, 2.0, 5.0];

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

pub fn overlaps(cfg: &Resolved) -> Result<Report, CliError> {
    let kmax = cfg.kmax_or(40);
    if kmax > MAX_QUADRATURE_K {
        return Err(CliError::Usage(format!(
            "--kmax {kmax} is beyond the quadrature range (≤ {MAX_QUADRATURE_K})"
        )));
    }
    let s_values = cfg.s.clone().unwrap_or_else(|| DEFAULT_S.to_vec());
    let mut table = Table::new(&["k", "s", "E", "p_k_closed", "p_k_quadrature", "abs_diff"]);
    let mut worst = 0.0f64;
    for &s in &s_values {
        let e = energy_from_s(s);
        for k in 0..=kmax {
            let closed = fock_overlap_closed(k, e)?;
            let quad = fock_overlap_quadrature(k, s)?;
            let diff = (closed - quad).abs();
            worst = worst.max(diff);
            table.push(vec![k.into(), s.into(), e.into(), closed.into(), quad.into(), diff.into()]);
        }
    }
    let checks = vec![Check::new(
        "closed_vs_quadrature",
        worst <= OVERLAP_TOLERANCE,
        format!("max |closed − quadrature| = {worst:e} (tolerance {OVERLAP_TOLERANCE:e})"),
    )];
    Ok(Report {
        command: "overlaps",
        table,
        checks,
        extra: Map::new(),
    })
}

/// Squeeze factors on `[0.2, 5]` (or the explicit `--s` list). Grid values are
/// rounded to 12 decimals so that `s = 1` is hit exactly when it lies on the
/// grid.
fn measure_grid(cfg: &Resolved) -> Vec<f64> {
    if let Some(s) = &cfg.s {
        return s.clone();
    }
    let step = cfg.grid_step.unwrap_or(0.05);
    let (lo, hi) = (0.2, 5.0);
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n)
        .map(|i| ((lo + i as f64 * step) * 1e12).round() / 1e12)
        .collect()
}

pub fn measure(cfg: &Resolved) -> Result<Report, CliError> {
    let mut table = Table::new(&[
        "s",
        "density_s",
        "E",
        "dE_ds",
        "abs_ds_dE",
        "density_E_check",
        "abs_ds_dE_fd",
        "fd_rel_diff",
    ]);
    let mut worst_density = 0.0f64;
    let mut worst_fd = 0.0f64;
    let mut unit_row_ok = true;
    for s in measure_grid(cfg) {
        let density_s = invariant_density_s_theta(s);
        let de = energy_derivative(s);
        let jac = 1.0 / de.abs();
        let density_e = if s == 1.0 {
            // 0/0 at the vacuum; the ratio is identically 4 elsewhere
            unit_row_ok &= density_s == 0.0;
            invariant_density_energy()
        } else {
            density_s * jac
        };
        worst_density = worst_density.max((density_e - invariant_density_energy()).abs());
        let (fd, rel) = if (s - 1.0).abs() < FD_EXCLUSION {
            (f64::NAN, f64::NAN)
        } else {
            let h = 1e-5 * s;
            let fd = 2.0 * h / (energy_from_s(s + h) - energy_from_s(s - h)).abs();
            let rel = (fd / jac - 1.0).abs();
            worst_fd = worst_fd.max(rel);
            (fd, rel)
        };
        table.push(vec![
            s.into(),
            density_s.into(),
            energy_from_s(s).into(),
            de.into(),
            jac.into(),
            density_e.into(),
            fd.into(),
            rel.into(),
        ]);
    }
    let checks = vec![
        Check::new(
            "energy_density_constant",
            worst_density <= DENSITY_TOLERANCE,
            format!("max |density_E − 4| = {worst_density:e}"),
        ),
        Check::new(
            "jacobian_finite_difference",
            worst_fd <= JACOBIAN_FD_TOLERANCE,
            format!("max relative difference = {worst_fd:e} (rows with |s − 1| < {FD_EXCLUSION} skipped)"),
        ),
        Check::new("vacuum_density_zero", unit_row_ok, "density_s at s = 1"),
    ];
    Ok(Report {
        command: "measure",
        table,
        checks,
        extra: Map::new(),
    })
}

/// Doubling schedule `1, 2, 4, …` up to `max`, ending exactly at `max`.
pub fn radius_schedule(max: f64) -> Vec<f64> {
    let mut radii = Vec::new();
    let mut r = 1.0;
    while r < max {
        radii.push(r);
        r *= 2.0;
    }
    radii.push(max);
    radii
}

pub fn twirl(cfg: &Resolved, dump: Option<&Path>) -> Result<Report, CliError> {
    let d = cfg.dim_or(8)?;
    let radii = radius_schedule(cfg.radius.unwrap_or(16.0));
    let vacuum = FockVector::vacuum(1);
    let mut table = Table::new(&["r", "diag_spread", "offdiag_max", "mean_diag", "t00", "t00_exact"]);
    let mut spreads = Vec::new();
    let mut last_off = 0.0;
    let mut worst_oracle = 0.0f64;
    let mut last: Option<TruncatedOperator> = None;
    for &r in &radii {
        let op = hw_partial_twirl(&vacuum, r, d)?;
        let sum = twirl_summary(&op, r, d);
        let t00 = op.get(0, 0).re;
        let exact = vacuum_twirl_exact(r);
        worst_oracle = worst_oracle.max((t00 / exact - 1.0).abs());
        spreads.push(sum.diag_spread);
        last_off = sum.offdiag_max;
        table.push(vec![
            r.into(),
            sum.diag_spread.into(),
            sum.offdiag_max.into(),
            sum.mean_diag.into(),
            t00.into(),
            exact.into(),
        ]);
        last = Some(op);
    }
    if let (Some(path), Some(op)) = (dump, &last) {
        write_file(path, &operator_csv(op))?;
    }
    let monotone = spreads.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    let checks = vec![
        Check::new("spread_nonincreasing", monotone, format!("spreads {spreads:?}")),
        Check::new(
            "final_offdiag",
            last_off < TWIRL_OFFDIAG_TOLERANCE,
            format!("final off-diagonal max / mean diagonal = {last_off:e}"),
        ),
        Check::new(
            "vacuum_radial_oracle",
            worst_oracle <= TWIRL_ORACLE_TOLERANCE,
            format!("max relative error of ⟨0|T|0⟩ = {worst_oracle:e}"),
        ),
    ];
    Ok(Report {
        command: "twirl",
        table,
        checks,
        extra: Map::new(),
    })
}

/// Dense operator as `row,col,re,im` lines.
pub fn operator_csv(op: &TruncatedOperator) -> String {
    let mut out = String::from("row,col,re,im\n");
    for i in 0..op.dim() {
        for j in 0..op.dim() {
            let z = op.get(i, j);
            out.push_str(&format!("{i},{j},{:.16e},{:.16e}\n", z.re, z.im));
        }
    }
    out
}

pub(crate) fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

fn build_spec(cfg: &Resolved, step: f64) -> Result<EnsembleSpec, CliError> {
    let e_min = cfg.emin.unwrap_or(0.5);
    let e_max = cfg.emax.unwrap_or(1000.0);
    let density = match cfg.density.unwrap_or(Density::Uniform) {
        Density::Uniform => 1.0,
        Density::Invariant => invariant_density_energy(),
    };
    Ok(EnsembleSpec::from_density(e_min, e_max, step, |_| density)?)
}

pub fn spectrum(cfg: &Resolved, heterodyne: bool) -> Result<Report, CliError> {
    let kmax = cfg.kmax_or(10);
    let profile = heterodyne_limit_spectrum(kmax);
    let het_dev = 1.0 - profile[kmax];
    let mut table = Table::new(&[
        "k",
        "a_k",
        "a_k_over_a_0",
        "w_k",
        "gamma_coeff",
        "sqrt_bound",
        "heterodyne",
        "bound_ok",
    ]);
    let mut extra = Map::new();
    let (ratios, deviation, mut checks) = if heterodyne {
        for k in 0..=kmax {
            table.push(vec![
                k.into(),
                profile[k].into(),
                profile[k].into(),
                1.0.into(),
                gamma_coeff(k).into(),
                sqrt_bound(k).into(),
                profile[k].into(),
                true.into(),
            ]);
        }
        extra.insert("mode".into(), json!("heterodyne"));
        (profile.clone(), het_dev, Vec::new())
    } else {
        let step = cfg.grid_step.unwrap_or(0.01);
        let spec = build_spec(cfg, step)?;
        let report = ensemble_average_spectrum(&spec, kmax)?;
        let ratios = report.normalized();
        let halved = ensemble_average_spectrum(&build_spec(cfg, 0.5 * step)?, kmax)?.normalized();
        let grid_change = max_of(ratios.iter().zip(&halved).map(|(a, b)| (a - b).abs()));
        for k in 0..=kmax {
            let ok = ratios[k] <= profile[k] + BOUND_TOLERANCE;
            table.push(vec![
                k.into(),
                report.averages[k].into(),
                ratios[k].into(),
                report.energy_weights[k].into(),
                report.gamma[k].into(),
                sqrt_bound(k).into(),
                profile[k].into(),
                ok.into(),
            ]);
        }
        extra.insert("mode".into(), json!("ensemble"));
        extra.insert("grid_points".into(), json!(spec.energies().len()));
        extra.insert("step_halving_change".into(), json!(grid_change));
        let checks = vec![Check::new(
            "grid_converged",
            grid_change < GRID_HALVING_TOLERANCE,
            format!("halving the grid step moves a_k/a_0 by {grid_change:e}"),
        )];
        (ratios, two_design_deviation(&report)?, checks)
    };
    let bound_ok = ratios.iter().zip(&profile).all(|(r, p)| *r <= p + BOUND_TOLERANCE);
    checks.insert(
        0,
        Check::new("gamma_bound", bound_ok, "a_k/a_0 ≤ Γ(k+½)/(Γ(k+1)√π) for every row"),
    );
    checks.push(Check::new(
        "not_flat",
        deviation > 0.0 && deviation >= het_dev - BOUND_TOLERANCE,
        format!("two-design deviation {deviation:.6} (heterodyne optimum {het_dev:.6})"),
    ));
    extra.insert("two_design_deviation".into(), json!(deviation));
    extra.insert("heterodyne_deviation".into(), json!(het_dev));
    Ok(Report {
        command: "spectrum",
        table,
        checks,
        extra,
    })
}

pub fn schmidt(cfg: &Resolved) -> Result<Report, CliError> {
    let d = cfg.dim_or(60)?;
    if d < 2 {
        return Err(CliError::Usage("schmidt needs --dim ≥ 2".into()));
    }
    let shown = cfg.kmax_or(5);
    let s = cfg.s.as_ref().map_or(2.0, |v| v[0]);
    let x = cfg.coherent_x.unwrap_or(1.0);
    let fiducials: Vec<(&'static str, FockVector)> = vec![
        ("vacuum", FockVector::vacuum(d)),
        ("squeezed", squeeze_unitary(s, 0.0, d)?.apply(&FockVector::vacuum(d)).normalized()),
        ("coherent", coherent_state(x, 0.0, d).normalized()),
        ("fock1", FockVector::basis(1, d)?),
    ];
    let mut table = Table::new(&["fiducial", "index", "coefficient"]);
    let mut checks = Vec::new();
    let mut summary = Map::new();
    for (tag, psi) in &fiducials {
        let c = two_copy_schmidt(psi, d)?;
        for (i, v) in c.iter().take(shown + 1).enumerate() {
            table.push(vec![(*tag).into(), i.into(), (*v).into()]);
        }
        let total: f64 = c.iter().map(|v| v * v).sum();
        let second = c.get(1).copied().unwrap_or(0.0);
        checks.push(Check::new(
            "schmidt_normalized",
            (total - 1.0).abs() <= 1e-8,
            format!("{tag}: Σc² = {total:.12}"),
        ));
        let (name, ok, what) = match *tag {
            "fock1" => ("fock1_entangled", second > 0.1, "> 0.1"),
            "vacuum" => ("vacuum_product", second < 1e-6, "< 1e-6"),
            "squeezed" => ("squeezed_product", second < 1e-6, "< 1e-6"),
            _ => ("coherent_product", second < 1e-6, "< 1e-6"),
        };
        checks.push(Check::new(name, ok, format!("{tag}: second coefficient {second:e} (want {what})")));
        summary.insert((*tag).to_string(), json!({ "second": second, "sum_of_squares": total }));
    }
    let mut extra = Map::new();
    extra.insert("summary".into(), serde_json::Value::Object(summary));
    Ok(Report {
        command: "schmidt",
        table,
        checks,
        extra,
    })
}
