//! Fubini–Study geometry of the evolving-state manifold.
//!
//! Coordinates are `(Θ, Φ, ξ)`. The metric components are
//! `g_ab = Re(⟨∂_aΨ|∂_bΨ⟩ − ⟨∂_aΨ|Ψ⟩⟨Ψ|∂_bΨ⟩)` and the line element is
//! `dS² = Σ_ab g_ab dζ^a dζ^b`, so off-diagonal components enter twice.
//! Everything is independent of `Φ` and `ξ`; the physically relevant
//! two-manifold is the `(Θ, ξ)` sheet.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::config::{ParamPoint, SystemConfig};
use crate::error::{Error, Result};
use crate::quadrature::{simpson, simpson_richardson};
use crate::state::{build_initial_state, evolve, PureState};

pub const METRIC_FD_STEP: f64 = 1e-5;
pub const CURVATURE_FD_STEP: f64 = 1e-3;
pub const DEFAULT_EPSILON: f64 = 1e-3;

/// Tolerance between successive Richardson estimates of the bulk integral.
pub const BULK_QUAD_TOL: f64 = 1e-6;
const BULK_QUAD_START: usize = 512;
const XI_PANELS: usize = 16;

/// Independent components of the symmetric 3×3 metric in `(Θ, Φ, ξ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricTensor3 {
    pub g_tt: f64,
    pub g_pp: f64,
    pub g_xx: f64,
    pub g_tp: f64,
    pub g_tx: f64,
    pub g_px: f64,
}

impl MetricTensor3 {
    pub fn as_matrix(&self) -> [[f64; 3]; 3] {
        [
            [self.g_tt, self.g_tp, self.g_tx],
            [self.g_tp, self.g_pp, self.g_px],
            [self.g_tx, self.g_px, self.g_xx],
        ]
    }

    pub fn components(&self) -> [f64; 6] {
        [
            self.g_tt, self.g_pp, self.g_xx, self.g_tp, self.g_tx, self.g_px,
        ]
    }

    pub fn max_abs(&self) -> f64 {
        self.components().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest componentwise deviation, relative to the largest component of `reference`.
    pub fn relative_deviation(&self, reference: &MetricTensor3) -> f64 {
        let scale = reference.max_abs();
        let dev = self
            .components()
            .iter()
            .zip(reference.components())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        if scale == 0.0 {
            dev
        } else {
            dev / scale
        }
    }

    /// `(Θ, ξ)` block.
    pub fn reduced(&self) -> MetricTensor2 {
        MetricTensor2 {
            g_tt: self.g_tt,
            g_xx: self.g_xx,
        }
    }

    /// `dS²` along the displacement `(dΘ, dΦ, dξ)`.
    pub fn line_element(&self, d: [f64; 3]) -> f64 {
        let m = self.as_matrix();
        let mut acc = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                acc += m[a][b] * d[a] * d[b];
            }
        }
        acc
    }
}

/// Metric on the `(Θ, ξ)` sheet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricTensor2 {
    pub g_tt: f64,
    pub g_xx: f64,
}

/// `g_ξξ = ½N(N−1)s² sin²Θ [1 + (4s(N−1)−1) cos²Θ]`, which is also `ΔE²/J²`.
pub fn g_xixi(config: &SystemConfig, theta: f64) -> f64 {
    let s = config.s();
    let n = config.n();
    let (sin, cos) = theta.sin_cos();
    0.5 * n * (n - 1.0) * s * s * sin * sin * (1.0 + config.anisotropy() * cos * cos)
}

/// Closed-form metric.
///
/// `g_ΘΘ = Ns/2` and `g_ΦΦ = (Ns/2) sin²Θ` are the coherent-state sphere;
/// the interaction adds `g_ξξ` and the `Φξ` coupling
/// `g_Φξ = N(N−1)s² cosΘ sin²Θ` (the covariance of `ΣS_z` with `H/J`).
pub fn metric_closed_form(config: &SystemConfig, point: &ParamPoint) -> MetricTensor3 {
    let s = config.s();
    let n = config.n();
    let (sin, cos) = point.theta.sin_cos();
    MetricTensor3 {
        g_tt: n * s / 2.0,
        g_pp: n * s / 2.0 * sin * sin,
        g_xx: g_xixi(config, point.theta),
        g_tp: 0.0,
        g_tx: 0.0,
        g_px: n * (n - 1.0) * s * s * cos * sin * sin,
    }
}

pub fn reduced_metric(config: &SystemConfig, theta: f64) -> MetricTensor2 {
    MetricTensor2 {
        g_tt: config.n() * config.s() / 2.0,
        g_xx: g_xixi(config, theta),
    }
}

fn state_at(config: &SystemConfig, theta: f64, phi: f64, xi: f64) -> Result<PureState> {
    Ok(evolve(&build_initial_state(config, theta, phi)?, xi))
}

/// Fubini–Study metric from central-difference tangent vectors of the
/// explicitly constructed state.
pub fn metric_numeric(
    config: &SystemConfig,
    point: &ParamPoint,
    step: f64,
) -> Result<MetricTensor3> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::param(
            "step",
            format!("must be positive, got {step}"),
        ));
    }
    let th = point.theta;
    if th < 2.0 * step || th > PI - 2.0 * step {
        return Err(Error::Domain {
            what: "theta (finite-difference stencil)",
            value: th,
            domain: format!("[{}, pi - {}]", 2.0 * step, 2.0 * step),
        });
    }
    let (ph, xi) = (point.phi, point.xi);
    let center = state_at(config, th, ph, xi)?;
    let shifts = [
        (
            state_at(config, th + step, ph, xi)?,
            state_at(config, th - step, ph, xi)?,
        ),
        (
            state_at(config, th, ph + step, xi)?,
            state_at(config, th, ph - step, xi)?,
        ),
        (
            state_at(config, th, ph, xi + step)?,
            state_at(config, th, ph, xi - step)?,
        ),
    ];
    let inv = 1.0 / (2.0 * step);
    let tangents: Vec<Vec<num_complex::Complex64>> = shifts
        .iter()
        .map(|(p, m)| {
            p.amplitudes()
                .iter()
                .zip(m.amplitudes())
                .map(|(a, b)| (a - b) * inv)
                .collect()
        })
        .collect();
    let psi = center.amplitudes();
    let inner = |u: &[num_complex::Complex64], v: &[num_complex::Complex64]| {
        u.iter()
            .zip(v)
            .map(|(a, b)| a.conj() * b)
            .sum::<num_complex::Complex64>()
    };
    let conn: Vec<_> = tangents.iter().map(|t| inner(psi, t)).collect();
    let g = |a: usize, b: usize| {
        let v = inner(&tangents[a], &tangents[b]) - conn[a].conj() * conn[b];
        v.re
    };
    Ok(MetricTensor3 {
        g_tt: g(0, 0),
        g_pp: g(1, 1),
        g_xx: g(2, 2),
        g_tp: 0.5 * (g(0, 1) + g(1, 0)),
        g_tx: 0.5 * (g(0, 2) + g(2, 0)),
        g_px: 0.5 * (g(1, 2) + g(2, 1)),
    })
}

/// Gaussian curvature of the `(Θ, ξ)` sheet:
///
/// ```text
/// K = (4/(Ns)) (2 − [a cos²Θ + 2s(N−1) + 1] / [a cos²Θ + 1]²),  a = 4s(N−1) − 1
/// ```
///
/// Undefined at the poles, where `g_ξξ` vanishes.
pub fn gaussian_curvature(config: &SystemConfig, theta: f64) -> Result<f64> {
    config.require_interacting("Gaussian curvature")?;
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::Singular {
            what: "Gaussian curvature",
            theta,
        });
    }
    Ok(curvature_formula(config, theta))
}

pub(crate) fn curvature_formula(config: &SystemConfig, theta: f64) -> f64 {
    let s = config.s();
    let n = config.n();
    let a = config.anisotropy();
    let c2 = theta.cos().powi(2);
    let denom = a * c2 + 1.0;
    4.0 / (n * s) * (2.0 - (a * c2 + 2.0 * s * (n - 1.0) + 1.0) / (denom * denom))
}

/// `K` at the poles as a limit, `(4/(Ns))(2 − (6s(N−1))/(4s(N−1))²)`.
pub fn curvature_pole_limit(config: &SystemConfig) -> Result<f64> {
    config.require_interacting("Gaussian curvature")?;
    Ok(curvature_formula(config, 0.0))
}

fn d4<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

/// Reference time for the ξ-derivative stencil; the metric does not depend on ξ.
const XI_REF: f64 = 1.0;

/// Curvature from the Christoffel-symbol expression
///
/// ```text
/// K = (g_ΘΘ g_ξξ)^{-1/2} [ ∂_ξ( √(g_ξξ/g_ΘΘ) Γ^ξ_ΘΘ ) − ∂_Θ( √(g_ξξ/g_ΘΘ) Γ^ξ_Θξ ) ]
/// Γ^ξ_ΘΘ = −∂_ξ g_ΘΘ / (2 g_ξξ),   Γ^ξ_Θξ = ∂_Θ g_ξξ / (2 g_ξξ)
/// ```
///
/// with every derivative taken by nested five-point differences of the
/// closed-form metric components.
pub fn gaussian_curvature_numeric(config: &SystemConfig, theta: f64, step: f64) -> Result<f64> {
    config.require_interacting("Gaussian curvature")?;
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::param(
            "step",
            format!("must be positive, got {step}"),
        ));
    }
    if !(theta > 4.0 * step && theta < PI - 4.0 * step) {
        return Err(Error::Domain {
            what: "theta (curvature stencil)",
            value: theta,
            domain: format!("({}, pi - {})", 4.0 * step, 4.0 * step),
        });
    }
    let metric = |th: f64, xi: f64| {
        let p = ParamPoint {
            theta: th,
            phi: 0.0,
            xi,
        };
        metric_closed_form(config, &p).reduced()
    };
    let g_tt = |th: f64, xi: f64| metric(th, xi).g_tt;
    let g_xx = |th: f64, xi: f64| metric(th, xi).g_xx;
    let gamma_xi_tt = |th: f64, xi: f64| -d4(|x| g_tt(th, x), xi, step) / (2.0 * g_xx(th, xi));
    let gamma_xi_tx = |th: f64, xi: f64| d4(|t| g_xx(t, xi), th, step) / (2.0 * g_xx(th, xi));
    let ratio = |th: f64, xi: f64| (g_xx(th, xi) / g_tt(th, xi)).sqrt();
    let a = |th: f64, xi: f64| ratio(th, xi) * gamma_xi_tt(th, xi);
    let b = |th: f64, xi: f64| ratio(th, xi) * gamma_xi_tx(th, xi);
    let d_xi_a = d4(|x| a(theta, x), XI_REF, step);
    let d_th_b = d4(|t| b(t, XI_REF), theta, step);
    let area = (g_tt(theta, XI_REF) * g_xx(theta, XI_REF)).sqrt();
    Ok((d_xi_a - d_th_b) / area)
}

/// Gauss–Bonnet bookkeeping for the `(Θ, ξ)` sheet over `ξ ∈ [0, ξ_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub xi_max: f64,
    pub epsilon: f64,
    /// `∫∫ K √(g_ΘΘ g_ξξ) dΘ dξ` over `Θ ∈ [ε, π−ε]`.
    pub bulk_integral: f64,
    /// Closed-form limit of the bulk term, `4sξ_max(N−1)`.
    pub bulk_limit: f64,
    /// Conical-defect contribution `2[2π − 2sξ_max(N−1)]`.
    pub defect_sum: f64,
    pub euler_characteristic: f64,
    pub quadrature_intervals: usize,
    pub quadrature_converged: bool,
}

pub fn defect_sum(config: &SystemConfig, xi_max: f64) -> f64 {
    2.0 * (2.0 * PI - 2.0 * config.s() * xi_max * (config.n() - 1.0))
}

pub fn euler_characteristic(
    config: &SystemConfig,
    xi_max: f64,
    epsilon: f64,
) -> Result<TopologyReport> {
    config.require_interacting("Gauss-Bonnet")?;
    if !(xi_max > 0.0 && xi_max.is_finite()) {
        return Err(Error::param(
            "xi_max",
            format!("must be positive, got {xi_max}"),
        ));
    }
    if !(epsilon > 0.0 && epsilon < PI / 4.0) {
        return Err(Error::param(
            "epsilon",
            format!("must lie in (0, pi/4), got {epsilon}"),
        ));
    }
    let density = |theta: f64| {
        let m = reduced_metric(config, theta);
        curvature_formula(config, theta) * (m.g_tt * m.g_xx).sqrt()
    };
    let row = |theta: f64| {
        let k = density(theta);
        simpson(|_xi| k, 0.0, xi_max, XI_PANELS)
    };
    let q = simpson_richardson(
        row,
        epsilon,
        PI - epsilon,
        BULK_QUAD_START,
        BULK_QUAD_TOL,
        12,
    );
    let defect = defect_sum(config, xi_max);
    Ok(TopologyReport {
        xi_max,
        epsilon,
        bulk_integral: q.value,
        bulk_limit: 4.0 * config.s() * xi_max * (config.n() - 1.0),
        defect_sum: defect,
        euler_characteristic: (q.value + defect) / (2.0 * PI),
        quadrature_intervals: q.intervals,
        quadrature_converged: q.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn cfg(n: usize, ts: u32) -> SystemConfig {
        SystemConfig::from_twice_spin(n, ts, 1.0).unwrap()
    }

    fn pt(theta: f64, xi: f64) -> ParamPoint {
        ParamPoint::new(theta, 0.0, xi).unwrap()
    }

    #[test]
    fn two_qubit_equator() {
        let g = metric_closed_form(&cfg(2, 1), &pt(FRAC_PI_2, 0.0));
        assert!((g.g_tt - 0.5).abs() < 1e-15);
        assert!((g.g_xx - 0.25).abs() < 1e-15);
        assert!(g.g_px.abs() < 1e-15);
    }

    #[test]
    fn north_pole_collapses() {
        for (n, ts) in [(2, 1), (3, 2), (5, 3)] {
            let g = metric_closed_form(&cfg(n, ts), &pt(0.0, 1.0));
            assert_eq!((g.g_pp, g.g_xx, g.g_px), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn line_element_counts_cross_term_twice() {
        let g = metric_closed_form(&cfg(3, 2), &pt(1.0, 0.0));
        let ds2 = g.line_element([0.0, 1.0, 1.0]);
        assert!((ds2 - (g.g_pp + g.g_xx + 2.0 * g.g_px)).abs() < 1e-14);
    }

    #[test]
    fn curvature_singular_and_degenerate() {
        assert!(matches!(
            gaussian_curvature(&cfg(2, 1), 0.0),
            Err(Error::Singular { .. })
        ));
        assert!(gaussian_curvature(&cfg(2, 1), PI).is_err());
        assert!(matches!(
            gaussian_curvature(&cfg(1, 1), 1.0),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn curvature_two_qubit_values() {
        assert!(gaussian_curvature(&cfg(2, 1), FRAC_PI_2).unwrap().abs() < 1e-15);
        let near_pole = gaussian_curvature(&cfg(2, 1), 1e-7).unwrap();
        assert!((near_pole - 5.0).abs() < 1e-9);
        assert_eq!(curvature_pole_limit(&cfg(2, 1)).unwrap(), 5.0);
    }

    #[test]
    fn numeric_stencil_domain() {
        assert!(metric_numeric(&cfg(2, 1), &pt(1e-5, 0.0), 1e-5).is_err());
        assert!(gaussian_curvature_numeric(&cfg(2, 1), 3e-3, 1e-3).is_err());
        assert!(gaussian_curvature_numeric(&cfg(2, 1), 5e-3, 1e-3).is_ok());
    }

    #[test]
    fn euler_argument_checks() {
        assert!(euler_characteristic(&cfg(2, 1), 0.0, 1e-3).is_err());
        assert!(euler_characteristic(&cfg(2, 1), 1.0, 0.0).is_err());
        assert!(euler_characteristic(&cfg(2, 1), 1.0, 1.0).is_err());
        assert!(euler_characteristic(&cfg(1, 1), 1.0, 1e-3).is_err());
    }

    #[test]
    fn defect_two_qubits() {
        assert!((defect_sum(&cfg(2, 1), PI) - 2.0 * PI).abs() < 1e-15);
    }
}
