use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use spin_manifold::dynamics::{brachistochrone, geodesic_distance, speed, BrachistochroneMode};
use spin_manifold::entanglement::{
    curvature_from_concurrence, distance_and_time_from_concurrence, iconcurrence_exact,
    iconcurrence_short_time, k_max, k_min, metric_from_concurrence, phase_from_concurrence,
    speed_from_concurrence, v_max_two_spin, ConcurrenceContext,
};
use spin_manifold::geometry::{
    euler_characteristic, gaussian_curvature, gaussian_curvature_numeric, metric_closed_form,
    metric_numeric, reduced_metric, CURVATURE_FD_STEP, METRIC_FD_STEP,
};
use spin_manifold::phases::{
    aa_phase, aa_phase_connection_integral, dynamical_phase, geometric_phase,
    geometric_phase_short_time, reduce_angle,
};
use spin_manifold::state::{evolution_period_sign, hamiltonian_moments};
use spin_manifold::{build_initial_state, ParamPoint, SpinValue, SystemConfig};

use crate::error::CliResult;
use crate::sweep::{run_sweep, Quantity, SweepSpec, FIGURE_TWICE_SPINS};

/// `(N, 2s)` pairs used by the metric and curvature checks.
pub const ORACLE_CONFIGS: [(usize, u32); 5] = [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)];

/// `(N, 2s, ξ_max)` used by the Gauss–Bonnet check.
pub const TOPOLOGY_CASES: [(usize, u32, f64); 5] = [
    (2, 1, PI),
    (3, 2, 1.0),
    (4, 1, 2.0),
    (2, 3, 0.5),
    (5, 2, 3.0),
];

pub const TOPOLOGY_EPSILONS: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Slack allowed on a fitted convergence order.
pub const ORDER_SLACK: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidateOptions {
    /// Multiplies every closed-form curvature; anything but 1 must make the suite fail.
    pub curvature_scale: f64,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            curvature_scale: 1.0,
        }
    }
}

/// Whether `worst` must stay below the tolerance or reach at least it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtMost,
    Below,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub worst: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub passed: bool,
    pub note: String,
}

impl CheckResult {
    fn new(
        name: &'static str,
        worst: f64,
        tolerance: f64,
        bound: Bound,
        note: impl Into<String>,
    ) -> Self {
        let passed = match bound {
            Bound::AtMost => worst <= tolerance,
            Bound::Below => worst < tolerance,
            Bound::AtLeast => worst >= tolerance,
        };
        CheckResult {
            name,
            worst,
            tolerance,
            bound,
            passed,
            note: note.into(),
        }
    }

    fn and(mut self, ok: bool, why: &str) -> Self {
        if !ok {
            self.passed = false;
            if !self.note.is_empty() {
                self.note.push_str("; ");
            }
            self.note.push_str(why);
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let op = match c.bound {
                Bound::AtMost => "<=",
                Bound::Below => "<",
                Bound::AtLeast => ">=",
            };
            let _ = write!(
                out,
                "{} {:<24} worst={:.6e} required {op} {:.1e}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.worst,
                c.tolerance
            );
            if !c.note.is_empty() {
                let _ = write!(out, "  ({})", c.note);
            }
            out.push('\n');
        }
        let failed: Vec<&str> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect();
        if failed.is_empty() {
            let _ = writeln!(out, "all {} checks passed", self.checks.len());
        } else {
            let _ = writeln!(
                out,
                "{} of {} checks failed: {}",
                failed.len(),
                self.checks.len(),
                failed.join(", ")
            );
        }
        out
    }
}

fn cfg(n: usize, ts: u32) -> SystemConfig {
    SystemConfig::from_twice_spin(n, ts, 1.0).expect("valid oracle config")
}

fn spin(ts: u32) -> SpinValue {
    SpinValue::new(ts).expect("valid oracle spin")
}

fn pt(theta: f64, phi: f64, xi: f64) -> ParamPoint {
    ParamPoint::new(theta, phi, xi).expect("valid oracle point")
}

fn lin(a: f64, b: f64, i: usize, n: usize) -> f64 {
    a + (b - a) * i as f64 / (n - 1) as f64
}

fn check_metric() -> CliResult<CheckResult> {
    let mut points = Vec::new();
    for (n, ts) in ORACLE_CONFIGS {
        for i in 0..20 {
            for k in 0..8 {
                points.push((n, ts, lin(0.1, PI - 0.1, i, 20), lin(0.0, 2.0 * PI, k, 8)));
            }
        }
    }
    let worst = points
        .par_iter()
        .map(|&(n, ts, theta, xi)| {
            let config = cfg(n, ts);
            let p = pt(theta, 0.4, xi);
            let num = metric_numeric(&config, &p, METRIC_FD_STEP)?;
            Ok(num.relative_deviation(&metric_closed_form(&config, &p)))
        })
        .collect::<spin_manifold::Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(CheckResult::new(
        "metric",
        worst,
        1e-6,
        Bound::AtMost,
        format!("{} points, finite differences vs closed form", points.len()),
    ))
}

fn check_curvature(opts: &ValidateOptions) -> CliResult<Vec<CheckResult>> {
    let mut points = Vec::new();
    for (n, ts) in ORACLE_CONFIGS {
        for i in 0..40 {
            points.push((n, ts, lin(0.1, PI - 0.1, i, 40)));
        }
    }
    let errors = points
        .par_iter()
        .map(|&(n, ts, theta)| {
            let config = cfg(n, ts);
            let exact = opts.curvature_scale * gaussian_curvature(&config, theta)?;
            let num = gaussian_curvature_numeric(&config, theta, CURVATURE_FD_STEP)?;
            let floor = 4.0 / (config.n() * config.s());
            Ok((num - exact).abs() / exact.abs().max(floor))
        })
        .collect::<spin_manifold::Result<Vec<f64>>>()?;
    let worst = errors.into_iter().fold(0.0, f64::max);
    let config = cfg(3, 2);
    let min_k = (1..400)
        .map(|i| gaussian_curvature(&config, PI * f64::from(i) / 400.0))
        .try_fold(f64::INFINITY, |m, k| {
            k.map(|k| m.min(opts.curvature_scale * k))
        })?;
    Ok(vec![
        CheckResult::new(
            "curvature",
            worst,
            1e-4,
            Bound::AtMost,
            format!(
                "{} points, error relative to max(|K|, 4/(Ns))",
                points.len()
            ),
        ),
        CheckResult::new(
            "curvature-negative",
            min_k,
            0.0,
            Bound::Below,
            "min K for N=3, s=1",
        ),
    ])
}

fn check_topology() -> CliResult<CheckResult> {
    let mut cases = Vec::new();
    for (n, ts, xi_max) in TOPOLOGY_CASES {
        for eps in TOPOLOGY_EPSILONS {
            cases.push((n, ts, xi_max, eps));
        }
    }
    let reports = cases
        .par_iter()
        .map(|&(n, ts, xi_max, eps)| euler_characteristic(&cfg(n, ts), xi_max, eps))
        .collect::<spin_manifold::Result<Vec<_>>>()?;
    let worst = reports
        .iter()
        .map(|r| (r.euler_characteristic - 2.0).abs())
        .fold(0.0, f64::max);
    let converged = reports.iter().all(|r| r.quadrature_converged);
    Ok(CheckResult::new(
        "topology",
        worst,
        1e-2,
        Bound::AtMost,
        format!(
            "|chi - 2| over {} (N, s, xi_max, epsilon) cases",
            cases.len()
        ),
    )
    .and(converged, "quadrature did not converge"))
}

const PHASE_CONFIGS: [(usize, u32); 6] = [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (5, 1)];

fn check_phases() -> CliResult<Vec<CheckResult>> {
    let mut points = Vec::new();
    for (n, ts) in PHASE_CONFIGS {
        for i in 0..9 {
            for &xi in &[0.0, 0.25, 1.0, 3.0, 5.5] {
                points.push((n, ts, PI * f64::from(i as u32) / 8.0, xi));
            }
        }
    }
    let rows = points
        .par_iter()
        .map(|&(n, ts, theta, xi)| {
            let config = cfg(n, ts);
            let p = pt(theta, 0.0, xi);
            let (mean, _) = hamiltonian_moments(&build_initial_state(&config, theta, 0.0)?);
            let dyn_err = (dynamical_phase(&config, &p) + mean * xi / config.coupling).abs();
            let split_err = match geometric_phase(&config, &p) {
                Ok(b) => {
                    reduce_angle(b.geometric_phase - (b.global_phase - b.dynamical_phase)).abs()
                }
                Err(spin_manifold::Error::UndefinedPhase(_)) => 0.0,
                Err(e) => return Err(e),
            };
            Ok((dyn_err, split_err))
        })
        .collect::<spin_manifold::Result<Vec<_>>>()?;
    let dyn_worst = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let split_worst = rows.iter().map(|r| r.1).fold(0.0, f64::max);

    let mut min_order = f64::INFINITY;
    for (n, ts) in PHASE_CONFIGS {
        let config = cfg(n, ts);
        for &theta in &[0.3, 1.0, 2.5] {
            let err = |xi: f64| -> spin_manifold::Result<f64> {
                let p = pt(theta, 0.0, xi);
                Ok((geometric_phase_short_time(&config, &p)
                    - geometric_phase(&config, &p)?.geometric_phase)
                    .abs())
            };
            let (a, b) = (err(1e-2)?, err(1e-3)?);
            if b > 1e-14 {
                min_order = min_order.min((a / b).log10());
            }
        }
    }

    let mut aa_worst = 0.0f64;
    for (n, ts, theta) in [
        (2, 1, 0.0),
        (2, 1, 0.7),
        (3, 2, 1.1),
        (4, 1, 2.0),
        (3, 3, 0.4),
    ] {
        let config = cfg(n, ts);
        let (period, _) = evolution_period_sign(&config);
        let closed = aa_phase(&config, theta, period)?;
        let numeric = aa_phase_connection_integral(&config, theta, period)?;
        aa_worst = aa_worst.max((closed.raw - numeric).abs());
    }

    Ok(vec![
        CheckResult::new(
            "dynamical-phase",
            dyn_worst,
            1e-12,
            Bound::AtMost,
            "vs -<H>t from the state vector",
        ),
        CheckResult::new(
            "phase-decomposition",
            split_worst,
            1e-12,
            Bound::AtMost,
            "geometric = global - dynamical",
        ),
        CheckResult::new(
            "short-time-phase-order",
            min_order,
            3.0 - ORDER_SLACK,
            Bound::AtLeast,
            "fitted order between xi = 1e-2 and 1e-3",
        ),
        CheckResult::new(
            "aa-phase",
            aa_worst,
            1e-6,
            Bound::AtMost,
            "closed form vs connection integral",
        ),
    ])
}

fn check_speed() -> CliResult<CheckResult> {
    let mut points = Vec::new();
    for (n, ts) in [
        (2, 1),
        (2, 2),
        (3, 1),
        (3, 2),
        (4, 1),
        (4, 3),
        (5, 2),
        (6, 1),
    ] {
        for &j in &[1.0, 0.35, 2.5] {
            for i in 0..=16u32 {
                points.push((n, ts, j, PI * f64::from(i) / 16.0));
            }
        }
    }
    let worst = points
        .par_iter()
        .map(|&(n, ts, j, theta)| {
            let config = SystemConfig::from_twice_spin(n, ts, j)?;
            let (_, var) = hamiltonian_moments(&build_initial_state(&config, theta, 0.3)?);
            Ok((speed(&config, theta)? - var.max(0.0).sqrt()).abs())
        })
        .collect::<spin_manifold::Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(CheckResult::new(
        "speed",
        worst,
        1e-9,
        Bound::AtMost,
        "J sqrt(g_xixi) vs energy uncertainty",
    ))
}

fn check_brachistochrone() -> CliResult<CheckResult> {
    let ratio = |n: usize, ts: u32| -> spin_manifold::Result<f64> {
        let config = cfg(n, ts);
        let sol = brachistochrone(&config, 1.0, BrachistochroneMode::Optimal)?;
        // t = 1/J at xi = 1
        Ok(sol.tau * config.coupling)
    };
    let mut worst = 0.0f64;
    for n in [2, 3, 4, 8, 32, 128] {
        for ts in 1..=6 {
            let x = f64::from(ts) / 2.0 * (n as f64 - 1.0);
            let closed = (4.0 * x - 1.0).sqrt() / (2.0 * x);
            worst = worst.max((ratio(n, ts)? - closed).abs());
        }
    }
    let mut decreasing = true;
    for ts in 1..=4 {
        let rs = [2, 8, 32, 128]
            .iter()
            .map(|&n| ratio(n, ts))
            .collect::<spin_manifold::Result<Vec<_>>>()?;
        decreasing &= rs.windows(2).all(|w| w[1] < w[0]);
    }
    for n in [2, 3, 5] {
        let rs = (1..=6)
            .map(|ts| ratio(n, ts))
            .collect::<spin_manifold::Result<Vec<_>>>()?;
        decreasing &= rs.windows(2).all(|w| w[1] < w[0]);
    }
    let qubits = brachistochrone(&cfg(2, 1), 1.0, BrachistochroneMode::Optimal)?.ratio_tau_over_t;
    Ok(CheckResult::new(
        "brachistochrone",
        worst,
        1e-12,
        Bound::AtMost,
        "tau/t = S_min/(V_max t) vs closed form",
    )
    .and(qubits == 1.0, "ratio is not exactly 1 for two qubits")
    .and(decreasing, "ratio is not strictly decreasing in N and s"))
}

fn check_concurrence() -> CliResult<Vec<CheckResult>> {
    let mut sine = 0.0f64;
    for k in 0..200u32 {
        let xi = 0.05 * f64::from(k);
        sine = sine.max((iconcurrence_exact(spin(1), FRAC_PI_2, 0.0, xi)? - xi.sin().abs()).abs());
    }
    let mut min_order = f64::INFINITY;
    let mut kappa = 0.0f64;
    for ts in 1..=6 {
        for &theta in &[0.3, 1.0, FRAC_PI_2, 2.5] {
            let err = |xi: f64| -> spin_manifold::Result<f64> {
                Ok((iconcurrence_exact(spin(ts), theta, 0.0, xi)?
                    - iconcurrence_short_time(spin(ts), theta, xi))
                .abs())
            };
            let (a, b) = (err(0.02)?, err(0.01)?);
            kappa = kappa.max(b / 1e-4);
            if b > 1e-14 {
                min_order = min_order.min((a / b).log2());
            }
        }
    }
    Ok(vec![
        CheckResult::new(
            "concurrence-sine",
            sine,
            1e-12,
            Bound::AtMost,
            "two qubits on the equator vs |sin xi|",
        ),
        CheckResult::new(
            "concurrence-short-time",
            min_order,
            2.0 - ORDER_SLACK,
            Bound::AtLeast,
            format!("fitted order for 2s <= 6, max error/xi^2 = {kappa:.3e}"),
        ),
    ])
}

fn check_substitution(opts: &ValidateOptions) -> CliResult<CheckResult> {
    let mut worst = 0.0f64;
    let gap = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
    for ts in 1..=4 {
        let sp = spin(ts);
        let s = sp.s();
        let config = SystemConfig::new(2, sp, 1.0)?;
        for i in 1..12u32 {
            let theta = PI * f64::from(i) / 12.0;
            for &xi in &[1e-3, 0.05, 0.2] {
                let ctx = ConcurrenceContext::from_theta(sp, theta, xi)?;
                let point = pt(theta, 0.0, xi);
                let k = opts.curvature_scale * gaussian_curvature(&config, theta)?;
                worst = worst.max(gap(curvature_from_concurrence(&ctx), k));
                worst = worst.max(
                    (phase_from_concurrence(&ctx) - geometric_phase_short_time(&config, &point))
                        .abs(),
                );
                worst = worst.max(gap(
                    speed_from_concurrence(&ctx, 1.0)?,
                    speed(&config, theta)?,
                ));
                let (dist, _) = distance_and_time_from_concurrence(&ctx, 1.0)?;
                worst = worst.max(gap(dist, geodesic_distance(&config, theta, xi)?));
                if ctx.c < 2.0 * s * xi {
                    let g = metric_from_concurrence(&ctx)?;
                    let dc_dtheta = 2.0 * xi * s * (2.0 * theta).sin();
                    let dc_dxi = 2.0 * s * theta.sin().powi(2);
                    let reference = reduced_metric(&config, theta);
                    let g_tt = g.g_cc * dc_dtheta * dc_dtheta;
                    let g_tx = g.g_cc * dc_dtheta * dc_dxi + g.g_cx * dc_dtheta;
                    let g_xx = g.g_cc * dc_dxi * dc_dxi + 2.0 * g.g_cx * dc_dxi + g.g_xx;
                    let scale = (g.g_cc * dc_dxi * dc_dxi).abs().max(1.0);
                    worst = worst
                        .max(gap(g_tt, reference.g_tt))
                        .max(g_tx.abs() / scale)
                        .max((g_xx - reference.g_xx).abs() / scale);
                }
            }
        }
    }
    Ok(CheckResult::new(
        "substitution",
        worst,
        1e-10,
        Bound::AtMost,
        "concurrence forms vs two-spin forms under C = 2 xi s sin^2 theta",
    ))
}

/// Endpoint and peak values of the figure presets against the closed forms.
pub fn figure_endpoint_errors(c_count: usize) -> CliResult<Vec<(String, f64)>> {
    let mut errors = Vec::new();
    let xp = 1e-3;
    let fig = |q: Quantity| -> CliResult<_> { run_sweep(&SweepSpec::figure(q, c_count, xp)?) };
    let (f1, f3, f5) = (
        fig(Quantity::Fig1)?,
        fig(Quantity::Fig3)?,
        fig(Quantity::Fig5)?,
    );
    let per_spin = c_count;
    for (block, ts) in FIGURE_TWICE_SPINS.into_iter().enumerate() {
        let sp = spin(ts);
        let s = sp.s();
        let range = block * per_spin..(block + 1) * per_spin;
        let column = |r: &crate::SweepResult, name: &str| -> Vec<f64> {
            r.values(name).expect("figure column")[range.clone()]
                .iter()
                .map(|v| v.unwrap_or(f64::NAN))
                .collect()
        };
        let k = column(&f1, "curvature");
        errors.push((format!("fig1 K(0) 2s={ts}"), (k[0] - k_max(sp)).abs()));
        errors.push((
            format!("fig1 K(C_max) 2s={ts}"),
            (k[per_spin - 1] - k_min(sp, 1.0)).abs(),
        ));

        let c = column(&f3, "c");
        let v = column(&f3, "speed");
        let c_max = 2.0 * s * xp;
        let c_crit = 2.0 * s * c_max / (4.0 * s - 1.0);
        let peak = (0..per_spin).fold(0, |best, i| if v[i] > v[best] { i } else { best });
        errors.push((format!("fig3 argmax 2s={ts}"), (c[peak] - c_crit).abs()));
        errors.push((
            format!("fig3 V(C') 2s={ts}"),
            (v[peak] - v_max_two_spin(sp, 1.0)).abs(),
        ));

        let tau = column(&f5, "optimal_time");
        let crit = ConcurrenceContext::new(sp, xp, xp, c_crit)?;
        let (_, tau_crit) = distance_and_time_from_concurrence(&crit, 1.0)?;
        errors.push((format!("fig5 tau(0) 2s={ts}"), tau[0].abs()));
        errors.push((format!("fig5 tau(C') 2s={ts}"), (tau_crit - xp).abs()));
        errors.push((format!("fig5 grid tau(C') 2s={ts}"), (tau[peak] - xp).abs()));
    }
    Ok(errors)
}

fn check_figures() -> CliResult<CheckResult> {
    let errors = figure_endpoint_errors(crate::sweep::FIGURE_C_COUNT)?;
    let (name, worst) = errors
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map_or(("none", 0.0), |(n, e)| (n.as_str(), *e));
    Ok(CheckResult::new(
        "figure-endpoints",
        worst,
        1e-9,
        Bound::AtMost,
        format!("{} values, worst at {name}", errors.len()),
    ))
}

/// Runs the oracle-equivalence battery. Failures are reported in the result,
/// not returned as errors; an `Err` means the battery itself could not run.
pub fn validate_suite(opts: &ValidateOptions) -> CliResult<ValidationReport> {
    let mut checks = vec![check_metric()?];
    checks.extend(check_curvature(opts)?);
    checks.push(check_topology()?);
    checks.extend(check_phases()?);
    checks.push(check_speed()?);
    checks.push(check_brachistochrone()?);
    checks.extend(check_concurrence()?);
    checks.push(check_substitution(opts)?);
    checks.push(check_figures()?);
    Ok(ValidationReport { checks })
}
