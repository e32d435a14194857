//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Tolerances are pinned here, in code. The oracle side of every
//! cross-check is direct adaptive quadrature of the defining smoothing
//! integral, independent of the closed-form route it checks.

use num_complex::Complex64;
use phasedist::cli::{figure_grid_spec, figure_parameter_sets};
use phasedist::grid::GridSpec;
use phasedist::husimi::{
    husimi_grid, husimi_hermite, husimi_point, husimi_semiconfined,
    husimi_semiconfined_field_free, q_amp_hermite, PhasePoint,
};
use phasedist::limits::hermite_limit_check;
use phasedist::model::{
    derive, energy_semiconfined, ModelKind, OscillatorParams,
};
use phasedist::oracle::{
    husimi_quadrature, normalization_check, orthonormality_check, table_integral_check,
    QuadratureControl,
};
use phasedist::specfun::{kummer_1f1, pcf_d, pcf_d_integral, pcf_d_series, SeriesControl};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn unit_semiconfined(a: f64, g: f64) -> OscillatorParams {
    OscillatorParams::semiconfined(1.0, 1.0, 1.0, a, g).unwrap()
}

fn unit_hermite(g: f64) -> OscillatorParams {
    OscillatorParams::hermite(1.0, 1.0, 1.0, g).unwrap()
}

fn criterion_line(id: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {id:02} ({name}): {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

/// Closed form vs quadrature over the 11x11 grid, returning the worst
/// deviation measured as |closed - quad| / max(1, closed).
fn oracle_deviation(
    model: ModelKind,
    n: u32,
    params: &OscillatorParams,
    ctl: &QuadratureControl,
) -> f64 {
    let spec = GridSpec::new(-4.0, 4.0, -4.0, 4.0, 11, 11).unwrap();
    let mut worst = 0.0f64;
    for ix in 0..spec.x_steps {
        let x = spec.x_value(ix);
        if model == ModelKind::Semiconfined && x <= -params.a {
            continue;
        }
        for ip in 0..spec.p_steps {
            let pt = PhasePoint {
                x,
                p: spec.p_value(ip),
            };
            let cf = husimi_point(model, n, pt, params).unwrap().value();
            let qd = husimi_quadrature(model, n, pt, params, ctl).unwrap().value();
            assert!(cf.is_finite() && qd.is_finite(), "non-finite at {pt:?}");
            assert!(
                (-1e-12..=1.0 / PI + 1e-12).contains(&cf),
                "bound violated at {pt:?}: {cf}"
            );
            worst = worst.max((cf - qd).abs() / cf.max(1.0));
        }
    }
    worst
}

#[test]
fn acceptance_01_oracle_equivalence_core() {
    let ctl = QuadratureControl::default();
    let start = std::time::Instant::now();
    let mut worst = 0.0f64;
    for n in 0..=3u32 {
        for &g in &[0.0, 1.0] {
            worst = worst.max(oracle_deviation(
                ModelKind::Hermite,
                n,
                &unit_hermite(g),
                &ctl,
            ));
            for &a in &[0.5, 2.0] {
                worst = worst.max(oracle_deviation(
                    ModelKind::Semiconfined,
                    n,
                    &unit_semiconfined(a, g),
                    &ctl,
                ));
            }
        }
    }
    let pass = worst <= 1e-8;
    criterion_line(
        1,
        "oracle equivalence, core matrix",
        pass,
        &format!(
            "max |closed - quad| / max(1, closed) = {worst:.3e} (tol 1e-8), {:.1?}",
            start.elapsed()
        ),
    );
    assert!(pass, "worst deviation {worst:e}");
}

#[test]
fn acceptance_02_extreme_wall_stability() {
    let ctl = QuadratureControl::default();
    let mut worst = 0.0f64;
    for n in 0..=1u32 {
        for &g in &[0.0, 1.0] {
            worst = worst.max(oracle_deviation(
                ModelKind::Semiconfined,
                n,
                &unit_semiconfined(12.0, g),
                &ctl,
            ));
        }
    }
    let pass = worst <= 1e-6;
    criterion_line(
        2,
        "extreme-parameter stability a=12",
        pass,
        &format!("max deviation = {worst:.3e} (tol 1e-6), no overflow/NaN"),
    );
    assert!(pass, "worst deviation {worst:e}");
}

#[test]
fn acceptance_03_bound_everywhere() {
    // the 11x11 evaluation grids of criteria 1-2 plus the twelve figure
    // grids; hbar = 1, so the bound is 1/pi
    let bound = 1.0 / PI + 1e-12;
    let spec11 = GridSpec::new(-4.0, 4.0, -4.0, 4.0, 11, 11).unwrap();
    let mut checked = 0usize;
    let mut max_seen = 0.0f64;
    for n in 0..=3u32 {
        for &g in &[0.0, 1.0] {
            for &a in &[0.5, 2.0, 12.0] {
                if a == 12.0 && n > 1 {
                    continue; // criterion 2 stops at n = 1
                }
                let grid =
                    husimi_grid(ModelKind::Semiconfined, n, &spec11, &unit_semiconfined(a, g))
                        .unwrap();
                for &v in &grid.values {
                    assert!((0.0..=bound).contains(&v), "bound violated: {v}");
                    max_seen = max_seen.max(v);
                }
                checked += grid.values.len();
            }
            let grid = husimi_grid(ModelKind::Hermite, n, &spec11, &unit_hermite(g)).unwrap();
            for &v in &grid.values {
                assert!((0.0..=bound).contains(&v), "bound violated: {v}");
                max_seen = max_seen.max(v);
            }
            checked += grid.values.len();
        }
    }
    for (n, a, g) in figure_parameter_sets() {
        let grid = husimi_grid(
            ModelKind::Semiconfined,
            n,
            &figure_grid_spec(a),
            &unit_semiconfined(a, g),
        )
        .unwrap();
        for &v in &grid.values {
            assert!(
                (0.0..=bound).contains(&v),
                "figure n={n} a={a} g={g}: bound violated: {v}"
            );
            max_seen = max_seen.max(v);
        }
        checked += grid.values.len();
    }
    criterion_line(
        3,
        "0 <= W <= 1/pi bound",
        true,
        &format!("{checked} grid points, max value {max_seen:.6} <= {:.6}", bound),
    );
}

#[test]
fn acceptance_04_normalization() {
    let ctl = QuadratureControl::default();
    let mut worst = 0.0f64;
    let mut lines = Vec::new();
    for &n in &[0u32, 1] {
        for &g in &[0.0, 1.0] {
            let r = normalization_check(ModelKind::Hermite, n, &unit_hermite(g), &ctl).unwrap();
            worst = worst.max(r.max_abs_error);
            assert!(r.max_abs_error <= 1e-4, "{r}");
            lines.push(format!("H n={n} g={g}: {:.1e}", r.max_abs_error));
            for &a in &[0.5, 2.0, 12.0] {
                let r = normalization_check(
                    ModelKind::Semiconfined,
                    n,
                    &unit_semiconfined(a, g),
                    &ctl,
                )
                .unwrap();
                worst = worst.max(r.max_abs_error);
                assert!(r.max_abs_error <= 1e-4, "{r}");
                lines.push(format!("SC n={n} a={a} g={g}: {:.1e}", r.max_abs_error));
            }
        }
    }
    criterion_line(
        4,
        "normalization to 1 +/- 1e-4",
        worst <= 1e-4,
        &format!("worst |mass - 1| = {worst:.3e}; {}", lines.join(", ")),
    );
}

#[test]
fn acceptance_05_reduction_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(20260811);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a: f64 = [0.5, 2.0, 12.0][rng.gen_range(0..3)];
        let n = rng.gen_range(0..4u32);
        let pt = PhasePoint {
            x: rng.gen_range(-a.min(4.0)..4.0),
            p: rng.gen_range(-4.0..4.0),
        };
        let params = unit_semiconfined(a, 0.0);
        let dp = derive(&params).unwrap();
        let general = husimi_semiconfined(n, pt, &params, &dp).unwrap().value();
        let reduced = husimi_semiconfined_field_free(n, pt, &params, &dp)
            .unwrap()
            .value();
        worst = worst.max((general - reduced).abs() / general.max(f64::MIN_POSITIVE));
    }
    let pass = worst <= 1e-12;
    criterion_line(
        5,
        "g=0 reduction identity",
        pass,
        &format!("max relative difference {worst:.3e} over 100 random points (tol 1e-12)"),
    );
    assert!(pass, "worst {worst:e}");
}

#[test]
fn acceptance_06_hermite_amplitude_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(4211);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let g = rng.gen_range(-1.5..1.5);
        let m0 = rng.gen_range(0.5..2.0);
        let omega = rng.gen_range(0.5..2.0);
        let hbar = rng.gen_range(0.5..2.0);
        let params = OscillatorParams::hermite(m0, omega, hbar, g).unwrap();
        let dp = derive(&params).unwrap();
        let n = rng.gen_range(0..5u32);
        let pt = PhasePoint {
            x: rng.gen_range(-3.0..3.0),
            p: rng.gen_range(-3.0..3.0),
        };
        let q = q_amp_hermite(n, pt, &params, &dp);
        let via_q = if q.is_zero() {
            0.0
        } else {
            (dp.lambda0.ln() - (2.0 * PI * hbar).ln() - 0.5 * PI.ln() + 2.0 * q.log_modulus())
                .exp()
        };
        let closed = husimi_hermite(n, pt, &params, &dp).value();
        worst = worst.max((via_q - closed).abs() / closed.max(f64::MIN_POSITIVE));
    }
    // field-free form recovered at g = 0
    let params = unit_hermite(0.0);
    let dp = derive(&params).unwrap();
    for &(x, p) in &[(0.0, 0.0), (1.0, -0.5), (-2.0, 1.5)] {
        for n in 0..3u32 {
            let w = husimi_hermite(n, PhasePoint { x, p }, &params, &dp).value();
            let e = (p * p + x * x) / 2.0;
            let explicit = if n == 0 {
                (-e).exp() / (2.0 * PI)
            } else if e == 0.0 {
                0.0
            } else {
                e.powi(n as i32) * (-e).exp()
                    / (2.0 * PI * (1..=n).map(f64::from).product::<f64>())
            };
            worst = worst.max((w - explicit).abs() / explicit.max(f64::MIN_POSITIVE));
        }
    }
    let pass = worst <= 1e-12;
    criterion_line(
        6,
        "Hermite |Q|^2 closed-form identity",
        pass,
        &format!("max relative difference {worst:.3e} over 100 random points (tol 1e-12)"),
    );
    assert!(pass, "worst {worst:e}");
}

#[test]
fn acceptance_07_hermite_limit() {
    let spec = GridSpec::new(-3.0, 3.0, -3.0, 3.0, 21, 21).unwrap();
    let base = unit_semiconfined(1.0, 0.0);
    let mut all_monotone = true;
    let mut a12_g0_n0 = f64::NAN;
    let mut detail = String::new();
    for &n in &[0u32, 1] {
        for &g in &[0.0, 1.0] {
            let s = hermite_limit_check(n, g, &[2.0, 4.0, 8.0, 12.0], &spec, &base).unwrap();
            all_monotone &= s.monotone;
            if n == 0 && g == 0.0 {
                a12_g0_n0 = *s.sup_differences.last().unwrap();
            }
            detail.push_str(&format!(
                "n={n} g={g}: {:?}{}; ",
                s.sup_differences
                    .iter()
                    .map(|v| format!("{v:.2e}"))
                    .collect::<Vec<_>>(),
                if s.monotone { "" } else { " NOT DECREASING" }
            ));
        }
    }
    let pass = all_monotone && a12_g0_n0 < 0.02;
    criterion_line(
        7,
        "limit to the Hermite oscillator",
        pass,
        &format!("{detail}a=12 g=0 n=0 sup = {a12_g0_n0:.4} < 0.02"),
    );
    assert!(pass);
}

#[test]
fn acceptance_08_special_function_suite() {
    let ctl = SeriesControl::default();
    // D recurrence on the documented grid
    let mut worst_rec = 0.0f64;
    let zs: Vec<Complex64> = [-4.0, -2.0, 0.0, 2.0, 4.0]
        .iter()
        .flat_map(|&re| {
            [-4.0, -2.0, 0.0, 2.0, 4.0]
                .iter()
                .map(move |&im| Complex64::new(re, im))
                .collect::<Vec<_>>()
        })
        .collect();
    for k in 1..=20 {
        let nu = -(k as f64);
        for &z in &zs {
            let up = pcf_d(nu + 1.0, z).unwrap().to_complex();
            let mid = pcf_d(nu, z).unwrap().to_complex();
            let dn = pcf_d(nu - 1.0, z).unwrap().to_complex();
            let resid = (up - z * mid + nu * dn).norm();
            let scale = up.norm().max((z * mid).norm()).max((nu * dn).norm());
            if scale > 0.0 {
                worst_rec = worst_rec.max(resid / scale);
            }
        }
    }
    assert!(worst_rec <= 1e-10, "recurrence residual {worst_rec:e}");

    // route agreement: integral vs series on nu in [-20, -1], |z| <= 4
    let mut worst_route = 0.0f64;
    for &nu in &[-1.0, -2.5, -5.0, -7.5, -10.0, -12.5, -15.0, -17.5, -20.0] {
        for &re in &[-2.8, -1.4, 0.0, 1.4, 2.8] {
            for &im in &[-2.8, -1.4, 0.0, 1.4, 2.8] {
                let z = Complex64::new(re, im);
                let a = pcf_d_integral(nu, z).unwrap();
                let b = pcf_d_series(nu, z, &ctl).unwrap();
                worst_route = worst_route.max(a.rel_diff(&b));
            }
        }
    }
    assert!(worst_route <= 1e-10, "route disagreement {worst_route:e}");

    // 1F1(1;1;z) = e^z for |z| <= 5
    let mut worst_exp = 0.0f64;
    for i in 0..=10 {
        for j in 0..=10 {
            let z = Complex64::new(-5.0 + i as f64, -5.0 + j as f64);
            if z.norm() > 5.0 {
                continue;
            }
            let v = kummer_1f1(1.0, 1.0, z, &ctl).unwrap();
            worst_exp = worst_exp.max((v - z.exp()).norm() / z.exp().norm());
        }
    }
    assert!(worst_exp <= 1e-12, "1F1 exp identity {worst_exp:e}");

    // table-integral checks including the extreme order
    let qctl = QuadratureControl::default();
    let mut worst_ti = 0.0f64;
    for (alpha, q, tol) in [
        (1.0, Complex64::new(0.0, 0.0), 1e-10),
        (2.5, Complex64::new(1.0, 0.5), 1e-10),
        (7.0, Complex64::new(-2.0, 1.0), 1e-10),
        (145.0, Complex64::new(3.0, 0.0), 1e-8),
    ] {
        let r = table_integral_check(alpha, q, &qctl).unwrap();
        assert!(r.pass && r.max_rel_error <= tol, "{r}");
        worst_ti = worst_ti.max(r.max_rel_error);
    }

    criterion_line(
        8,
        "special-function suite",
        true,
        &format!(
            "recurrence {worst_rec:.2e} (tol 1e-10), routes {worst_route:.2e} (tol 1e-10), \
             1F1 exp {worst_exp:.2e} (tol 1e-12), table integral {worst_ti:.2e}"
        ),
    );
}

#[test]
fn acceptance_09_orthonormality() {
    let ctl = QuadratureControl::default();
    let mut worst = 0.0f64;
    for model in [ModelKind::Hermite, ModelKind::Semiconfined] {
        for &a in &[0.5, 2.0] {
            for &g in &[0.0, 1.0] {
                let params = match model {
                    ModelKind::Hermite => unit_hermite(g),
                    ModelKind::Semiconfined => unit_semiconfined(a, g),
                };
                for m in 0..=3u32 {
                    for n in m..=3u32 {
                        let r = orthonormality_check(model, m, n, &params, &ctl).unwrap();
                        assert!(
                            r.max_abs_error <= 1e-8,
                            "{model} m={m} n={n} a={a} g={g}: {r}"
                        );
                        worst = worst.max(r.max_abs_error);
                    }
                }
                if model == ModelKind::Hermite {
                    break;
                }
            }
            if model == ModelKind::Hermite {
                break;
            }
        }
    }
    criterion_line(
        9,
        "orthonormality",
        worst <= 1e-8,
        &format!("max |<m|n> - delta| = {worst:.3e} (tol 1e-8)"),
    );
}

#[test]
fn acceptance_10_spectrum() {
    let mut worst_g0 = 0.0f64;
    for &a in &[0.5, 2.0, 12.0] {
        let params = unit_semiconfined(a, 0.0);
        for n in 0..=10u32 {
            let e = energy_semiconfined(n, &params).unwrap();
            worst_g0 = worst_g0.max((e - (n as f64 + 0.5)).abs());
        }
    }
    assert!(worst_g0 <= 1e-12, "g=0 spectrum deviation {worst_g0:e}");

    let mut worst_gap = 0.0f64;
    for &a in &[0.5, 2.0, 12.0] {
        let params = unit_semiconfined(a, 1.0);
        let dp = derive(&params).unwrap();
        for n in 0..10u32 {
            let gap =
                energy_semiconfined(n + 1, &params).unwrap() - energy_semiconfined(n, &params).unwrap();
            worst_gap = worst_gap.max((gap - dp.g0).abs());
        }
    }
    let pass = worst_g0 <= 1e-12 && worst_gap <= 1e-12;
    criterion_line(
        10,
        "energy spectrum",
        pass,
        &format!(
            "g=0 coincidence dev {worst_g0:.2e}, g=1 spacing dev {worst_gap:.2e} (tol 1e-12)"
        ),
    );
    assert!(pass);
}

#[test]
fn acceptance_11_figure_argmax() {
    // n = 1, a = 0.5, g = 0: maximum at p ~ 0 and x > 0
    let spec = GridSpec::new(-4.0, 4.0, -4.0, 4.0, 81, 81).unwrap();
    let grid = husimi_grid(
        ModelKind::Semiconfined,
        1,
        &spec,
        &unit_semiconfined(0.5, 0.0),
    )
    .unwrap();
    let (ix, ip) = grid.argmax();
    let x = spec.x_value(ix);
    let p = spec.p_value(ip);
    let pass = p.abs() < spec.p_step() && x > 0.0;
    criterion_line(
        11,
        "first-excited-state argmax",
        pass,
        &format!(
            "argmax at (x, p) = ({x}, {p}), grid step {:.3}",
            spec.p_step()
        ),
    );
    assert!(pass, "argmax at ({x}, {p})");
}
