use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use spin_manifold::entanglement::k_max;
use spin_manifold::geometry::*;
use spin_manifold::{Error, ParamPoint, SpinValue, SystemConfig};

const CONFIGS: [(usize, u32); 5] = [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)];

fn cfg(n: usize, ts: u32) -> SystemConfig {
    SystemConfig::from_twice_spin(n, ts, 1.0).unwrap()
}

fn pt(theta: f64, phi: f64, xi: f64) -> ParamPoint {
    ParamPoint::new(theta, phi, xi).unwrap()
}

fn curvature_error(num: f64, exact: f64, config: &SystemConfig) -> f64 {
    (num - exact).abs() / exact.abs().max(4.0 / (config.n() * config.s()))
}

#[test]
fn numeric_metric_matches_closed_form_on_grid() {
    let mut worst = 0.0f64;
    for (n, ts) in CONFIGS {
        let config = cfg(n, ts);
        for i in 0..20 {
            let theta = 0.1 + (PI - 0.2) * f64::from(i) / 19.0;
            for k in 0..8 {
                let xi = 2.0 * PI * f64::from(k) / 7.0;
                let p = pt(theta, 0.4, xi);
                let num = metric_numeric(&config, &p, METRIC_FD_STEP).unwrap();
                let exact = metric_closed_form(&config, &p);
                worst = worst.max(num.relative_deviation(&exact));
            }
        }
    }
    eprintln!("worst metric deviation {worst:e}");
    assert!(worst < 1e-6, "worst relative deviation {worst:e}");
}

#[test]
fn metric_examples() {
    let p = pt(FRAC_PI_2, 0.0, 0.7);
    let config = cfg(2, 1);
    let num = metric_numeric(&config, &p, METRIC_FD_STEP).unwrap();
    let exact = metric_closed_form(&config, &p);
    assert!((exact.g_tt - 0.5).abs() < 1e-15 && (exact.g_xx - 0.25).abs() < 1e-15);
    assert!(num.relative_deviation(&exact) < 1e-6);

    let config = cfg(3, 2);
    let p = pt(1.0, 0.0, 0.3);
    let num = metric_numeric(&config, &p, METRIC_FD_STEP).unwrap();
    let expected = 3.0 * 2.0 * 1.0f64.cos() * 1.0f64.sin().powi(2);
    assert!((num.g_px - expected).abs() < 1e-6 * expected);
    assert!(num.g_tp.abs() < 1e-8 && num.g_tx.abs() < 1e-8);
}

#[test]
fn metric_is_time_and_azimuth_independent() {
    let config = cfg(3, 3);
    let base = metric_closed_form(&config, &pt(0.8, 0.0, 0.0));
    for k in 0..10 {
        let other = metric_closed_form(&config, &pt(0.8, 0.6 * f64::from(k), 0.9 * f64::from(k)));
        assert_eq!(other, base);
    }
    for &(phi, xi) in &[(0.0, 0.0), (2.5, 3.0), (5.0, 1.1)] {
        let num = metric_numeric(&config, &pt(0.8, phi, xi), METRIC_FD_STEP).unwrap();
        assert!(num.relative_deviation(&base) < 1e-6);
    }
}

#[test]
fn metric_reduces_to_sphere() {
    for n in 1..=5 {
        let config = cfg(n, 3);
        let r2 = config.n() * config.s() / 2.0;
        for &theta in &[0.0, 0.5, 2.0, PI] {
            let g = metric_closed_form(&config, &pt(theta, 0.0, 0.0));
            assert_eq!(g.g_tt, r2);
            assert!((g.g_pp - r2 * theta.sin().powi(2)).abs() < 1e-15);
        }
    }
    let g = metric_closed_form(&cfg(1, 2), &pt(1.0, 0.0, 0.0));
    assert_eq!((g.g_xx, g.g_px), (0.0, 0.0));
}

#[test]
fn stencil_domain_errors() {
    let config = cfg(2, 1);
    assert!(matches!(
        metric_numeric(&config, &pt(1e-5, 0.0, 0.0), 1e-5),
        Err(Error::Domain { .. })
    ));
    assert!(metric_numeric(&config, &pt(PI - 1e-5, 0.0, 0.0), 1e-5).is_err());
    assert!(metric_numeric(&config, &pt(2e-5, 0.0, 0.0), 1e-5).is_ok());
    assert!(gaussian_curvature_numeric(&config, 4e-3, 1e-3).is_err());
}

#[test]
fn numeric_curvature_matches_closed_form() {
    let mut worst = 0.0f64;
    for (n, ts) in CONFIGS {
        let config = cfg(n, ts);
        for i in 0..40 {
            let theta = 0.1 + (PI - 0.2) * f64::from(i) / 39.0;
            let exact = gaussian_curvature(&config, theta).unwrap();
            let num = gaussian_curvature_numeric(&config, theta, CURVATURE_FD_STEP).unwrap();
            worst = worst.max(curvature_error(num, exact, &config));
            if exact.abs() > 1e-3 {
                assert_eq!(num.signum(), exact.signum(), "n={n} ts={ts} theta={theta}");
            }
        }
    }
    eprintln!("worst curvature error {worst:e}");
    assert!(worst < 1e-4, "worst curvature error {worst:e}");
}

#[test]
fn curvature_examples() {
    let num = gaussian_curvature_numeric(&cfg(2, 1), FRAC_PI_2, CURVATURE_FD_STEP).unwrap();
    assert!(num.abs() < 1e-6);
    let config = cfg(3, 2);
    let exact = gaussian_curvature(&config, 1.2).unwrap();
    let num = gaussian_curvature_numeric(&config, 1.2, CURVATURE_FD_STEP).unwrap();
    assert!((num - exact).abs() < 1e-4 * exact.abs());
}

#[test]
fn curvature_turns_negative_beyond_two_qubits() {
    for (n, ts) in [(3, 1), (3, 2), (4, 1), (5, 3), (2, 2)] {
        let config = cfg(n, ts);
        let min = (1..200)
            .map(|i| gaussian_curvature(&config, PI * f64::from(i) / 200.0).unwrap())
            .fold(f64::INFINITY, f64::min);
        assert!(min < 0.0, "n={n} ts={ts}");
    }
}

#[test]
fn pole_limit_matches_product_state_curvature() {
    for ts in 1..=6 {
        let spin = SpinValue::new(ts).unwrap();
        let config = SystemConfig::new(2, spin, 1.0).unwrap();
        let near = gaussian_curvature(&config, 1e-6).unwrap();
        assert!((near - k_max(spin)).abs() < 1e-9);
        assert!((curvature_pole_limit(&config).unwrap() - k_max(spin)).abs() < 1e-12);
    }
}

#[test]
fn gauss_bonnet_gives_sphere() {
    for (n, ts, xi_max) in [
        (2, 1, PI),
        (3, 2, 1.0),
        (4, 1, 2.0),
        (2, 3, 0.5),
        (5, 2, 3.0),
    ] {
        let config = cfg(n, ts);
        for eps in [1e-2, 1e-3, 1e-4] {
            let rep = euler_characteristic(&config, xi_max, eps).unwrap();
            assert!(rep.quadrature_converged);
            assert!(
                (rep.euler_characteristic - 2.0).abs() < 1e-2,
                "n={n} ts={ts} xi_max={xi_max} eps={eps}: chi={}",
                rep.euler_characteristic
            );
        }
    }
}

#[test]
fn bulk_integral_approaches_closed_form() {
    let rep = euler_characteristic(&cfg(3, 2), 1.0, 1e-3).unwrap();
    assert!((rep.bulk_integral - 8.0).abs() < 1e-2 * 8.0);
    assert_eq!(rep.bulk_limit, 8.0);
    assert!((defect_sum(&cfg(2, 1), PI) - 2.0 * PI).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn metric_oracle_random_points(
        idx in 0usize..5,
        theta in 0.05..(PI - 0.05),
        phi in 0.0..(2.0 * PI),
        xi in 0.0..(2.0 * PI),
    ) {
        let (n, ts) = CONFIGS[idx];
        let config = cfg(n, ts);
        let p = pt(theta, phi, xi);
        let num = metric_numeric(&config, &p, METRIC_FD_STEP).unwrap();
        prop_assert!(num.relative_deviation(&metric_closed_form(&config, &p)) < 1e-6);
    }

    #[test]
    fn metric_invariants(
        n in 1usize..40,
        ts in 1u32..10,
        theta in 0.0..=PI,
    ) {
        let config = cfg(n, ts);
        let g = metric_closed_form(&config, &pt(theta, 0.0, 0.0));
        prop_assert!(g.g_tt > 0.0);
        prop_assert!(g.g_xx >= 0.0);
        let m = g.as_matrix();
        for a in 0..3 {
            for b in 0..3 {
                prop_assert_eq!(m[a][b], m[b][a]);
            }
        }
    }

    #[test]
    fn curvature_symmetric_about_equator(
        n in 2usize..20,
        ts in 1u32..8,
        theta in 1e-3..(PI / 2.0),
    ) {
        let config = cfg(n, ts);
        let a = gaussian_curvature(&config, theta).unwrap();
        let b = gaussian_curvature(&config, PI - theta).unwrap();
        prop_assert!((a - b).abs() < 1e-9 * a.abs().max(1.0));
    }
}
