//! Global, dynamical, geometric and Aharonov–Anandan phases of the
//! evolving state.
//!
//! All reduced angles live in `(−π, π]`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coherent::overlap_series;
use crate::config::{ParamPoint, SystemConfig};
use crate::error::{Error, Result};
use crate::state::{build_initial_state, evolution_period_sign, evolve};

/// Below this overlap magnitude the phase is reported as undefined.
pub const ORTHOGONALITY_THRESHOLD: f64 = 1e-12;

pub const CONNECTION_FD_STEP: f64 = 1e-5;
const CONNECTION_START_STEPS: usize = 10_000;
const CONNECTION_TOL: f64 = 1e-8;

/// Maps an angle into `(−π, π]`.
pub fn reduce_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Nearest-branch continuation of a sequence of reduced angles.
pub fn unwrap_phases(phases: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(phases.len());
    let mut offset = 0.0;
    let mut prev: Option<f64> = None;
    for &p in phases {
        if let Some(q) = prev {
            offset += reduce_angle(p - q) - (p - q);
        }
        out.push(p + offset);
        prev = Some(p);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseBreakdown {
    pub global_phase: f64,
    pub dynamical_phase: f64,
    pub geometric_phase: f64,
}

/// Principal argument of `⟨Ψ_i|Ψ(ξ)⟩`, from the occupation-number series.
pub fn global_phase(config: &SystemConfig, point: &ParamPoint) -> Result<f64> {
    let ov = overlap_series(config, point.theta, point.xi);
    phase_of(ov)
}

pub(crate) fn phase_of(ov: Complex64) -> Result<f64> {
    let mag = ov.norm();
    if !(mag > ORTHOGONALITY_THRESHOLD) {
        return Err(Error::UndefinedPhase(mag));
    }
    let arg = ov.im.atan2(ov.re);
    Ok(if arg <= -PI { PI } else { arg })
}

/// `Φ_dyn = −ξ s² N(N−1) cos²Θ`, i.e. `−⟨H⟩t`.
pub fn dynamical_phase(config: &SystemConfig, point: &ParamPoint) -> f64 {
    let s = config.s();
    let n = config.n();
    -point.xi * s * s * n * (n - 1.0) * point.theta.cos().powi(2)
}

pub fn geometric_phase(config: &SystemConfig, point: &ParamPoint) -> Result<PhaseBreakdown> {
    let global = global_phase(config, point)?;
    let dynamical = dynamical_phase(config, point);
    Ok(PhaseBreakdown {
        global_phase: global,
        dynamical_phase: dynamical,
        geometric_phase: reduce_angle(global - dynamical),
    })
}

/// The arctangent part of the short-time geometric phase, an approximation
/// to the global phase valid to second order in `ξ`:
///
/// ```text
/// −arctan( 4ξs²N(N−1)cos²Θ /
///          (4 − ξ²s²N(N−1)[s(N−1)(2sN cos⁴Θ + sin²2Θ) + sin⁴Θ]) )
/// ```
///
/// The single-argument arctangent is kept on purpose: it is what makes the
/// term vanish for large `N`.
pub fn short_time_global_term(config: &SystemConfig, point: &ParamPoint) -> f64 {
    let s = config.s();
    let n = config.n();
    let xi = point.xi;
    let (sin, cos) = point.theta.sin_cos();
    let pairs = n * (n - 1.0);
    let c2 = cos * cos;
    let s2 = sin * sin;
    let sin_2t = (2.0 * point.theta).sin();
    let num = 4.0 * xi * s * s * pairs * c2;
    let den = 4.0
        - xi * xi
            * s
            * s
            * pairs
            * (s * (n - 1.0) * (2.0 * s * n * c2 * c2 + sin_2t * sin_2t) + s2 * s2);
    -(num / den).atan()
}

/// Short-time geometric phase: the arctangent term plus `ξs²N(N−1)cos²Θ`.
pub fn geometric_phase_short_time(config: &SystemConfig, point: &ParamPoint) -> f64 {
    short_time_global_term(config, point) - dynamical_phase(config, point)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AaPhase {
    /// `ξ_max N(N−1) s² cos²Θ`, unreduced.
    pub raw: f64,
    pub reduced: f64,
    /// Whether `ξ_max` is a whole number of evolution periods.
    pub cyclic: bool,
}

/// Aharonov–Anandan phase over `ξ ∈ [0, ξ_max]`.
pub fn aa_phase(config: &SystemConfig, theta: f64, xi_max: f64) -> Result<AaPhase> {
    if !(xi_max > 0.0 && xi_max.is_finite()) {
        return Err(Error::param(
            "xi_max",
            format!("must be positive, got {xi_max}"),
        ));
    }
    let s = config.s();
    let n = config.n();
    let raw = xi_max * n * (n - 1.0) * s * s * theta.cos().powi(2);
    let (period, _) = evolution_period_sign(config);
    let cycles = xi_max / period;
    let cyclic = (cycles - cycles.round()).abs() < 1e-12 * cycles.max(1.0) && cycles.round() >= 1.0;
    Ok(AaPhase {
        raw,
        reduced: reduce_angle(raw),
        cyclic,
    })
}

/// `i ∫₀^{ξ_max} ⟨Ψ|∂_ξΨ⟩ dξ` from central-difference derivatives of the
/// explicit state vector and the trapezoid rule. The step count starts at
/// 10⁴ and doubles until the result changes by less than 1e-8.
pub fn aa_phase_connection_integral(config: &SystemConfig, theta: f64, xi_max: f64) -> Result<f64> {
    if !(xi_max > 0.0 && xi_max.is_finite()) {
        return Err(Error::param(
            "xi_max",
            format!("must be positive, got {xi_max}"),
        ));
    }
    let initial = build_initial_state(config, theta, 0.0)?;
    let h = CONNECTION_FD_STEP;
    let connection = |xi: f64| {
        let psi = evolve(&initial, xi);
        let fwd = evolve(&initial, xi + h);
        let bwd = evolve(&initial, xi - h);
        let inner: Complex64 = psi
            .amplitudes()
            .iter()
            .zip(fwd.amplitudes().iter().zip(bwd.amplitudes()))
            .map(|(p, (f, b))| p.conj() * (f - b))
            .sum::<Complex64>()
            / (2.0 * h);
        (Complex64::i() * inner).re
    };
    let trapezoid = |steps: usize| {
        let dx = xi_max / steps as f64;
        let mut acc = 0.5 * (connection(0.0) + connection(xi_max));
        for k in 1..steps {
            acc += connection(k as f64 * dx);
        }
        acc * dx
    };
    let mut steps = CONNECTION_START_STEPS;
    let mut value = trapezoid(steps);
    for _ in 0..6 {
        steps *= 2;
        let next = trapezoid(steps);
        let change = (next - value).abs();
        value = next;
        if change < CONNECTION_TOL {
            break;
        }
    }
    Ok(value)
}
