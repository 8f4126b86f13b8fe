//! Evolution speed, path length along the evolution circle, and the
//! quantum brachistochrone. Times are in units of `1/J` and `ħ = 1`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::geometry::g_xixi;
use crate::state::{build_initial_state, evolve};

/// `V = |J| √g_ξξ`, equal to the energy uncertainty `ΔE`.
pub fn speed(config: &SystemConfig, theta: f64) -> Result<f64> {
    config.require_interacting("evolution speed")?;
    Ok(config.coupling.abs() * g_xixi(config, theta).sqrt())
}

/// Closed-form speed maximizer in `(0, π/2]` and the maximal speed.
///
/// `sin²Θ_max = 2s(N−1)/(4s(N−1)−1)`, clamped to the equator when that
/// exceeds one (only for two qubits).
pub fn maximize_speed(config: &SystemConfig) -> Result<(f64, f64)> {
    config.require_interacting("speed maximization")?;
    let s = config.s();
    let n = config.n();
    let b = config.anisotropy();
    let sin2 = 2.0 * s * (n - 1.0) / b;
    if sin2 >= 1.0 {
        return Ok((FRAC_PI_2, speed(config, FRAC_PI_2)?));
    }
    let theta = sin2.sqrt().asin();
    let v_max = config.coupling.abs() * s * s * (n - 1.0) * (2.0 * n * (n - 1.0) / b).sqrt();
    Ok((theta, v_max))
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Numerical maximization of the speed over `Θ ∈ [0, π/2]` (the speed is
/// symmetric about the equator): golden-section search down to a bracket
/// of width 1e-4, then bisection on the sign of a central-difference slope,
/// which resolves the maximizer well below the square-root-of-epsilon floor
/// of a pure value comparison.
pub fn maximize_speed_golden(config: &SystemConfig, tol: f64) -> Result<(f64, f64)> {
    config.require_interacting("speed maximization")?;
    let f = |t: f64| g_xixi(config, t);
    let (mut a, mut b) = (0.0, FRAC_PI_2);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a) > 1e-4_f64.max(tol) {
        if fc < fd {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        }
    }
    let h = 1e-5;
    let slope = |t: f64| f(t + h) - f(t - h);
    while (b - a) > tol {
        let m = 0.5 * (a + b);
        if slope(m) > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    let theta = 0.5 * (a + b);
    Ok((theta, speed(config, theta)?))
}

/// Length of the evolution path `S = √g_ξξ · ξ`.
pub fn geodesic_distance(config: &SystemConfig, theta: f64, xi: f64) -> Result<f64> {
    config.require_interacting("geodesic distance")?;
    if !(xi >= 0.0 && xi.is_finite()) {
        return Err(Error::param(
            "xi",
            format!("must be finite and >= 0, got {xi}"),
        ));
    }
    Ok(g_xixi(config, theta).sqrt() * xi)
}

/// `S_min = s √(ξ² N(N−1)/2)`, the equatorial path length.
pub fn minimal_distance(config: &SystemConfig, xi: f64) -> Result<f64> {
    geodesic_distance(config, FRAC_PI_2, xi)
}

/// Path length accumulated by the explicit state vector, summing the
/// Fubini–Study distances `arccos|⟨ψ_k|ψ_{k+1}⟩|` between consecutive
/// states on a uniform `ξ` grid.
pub fn path_length_numeric(
    config: &SystemConfig,
    theta: f64,
    phi: f64,
    xi: f64,
    steps: usize,
) -> Result<f64> {
    if steps == 0 {
        return Err(Error::param("steps", "must be at least 1"));
    }
    let initial = build_initial_state(config, theta, phi)?;
    let dx = xi / steps as f64;
    let mut prev = initial.clone();
    let mut total = 0.0;
    for k in 1..=steps {
        let next = evolve(&initial, k as f64 * dx);
        let ov: Complex64 = prev
            .amplitudes()
            .iter()
            .zip(next.amplitudes())
            .map(|(a, b)| a.conj() * b)
            .sum();
        // chord between the rays, 2 sin(d/2), avoids arccos cancellation near 1
        let align = if ov.norm() > 0.0 {
            ov / ov.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let chord = prev
            .amplitudes()
            .iter()
            .zip(next.amplitudes())
            .map(|(a, b)| (b - a * align).norm_sqr())
            .sum::<f64>()
            .sqrt();
        total += 2.0 * (0.5 * chord).min(1.0).asin();
        prev = next;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum BrachistochroneMode {
    /// Fastest initial state, `Θ = Θ_max`.
    #[default]
    Optimal,
    /// Equatorial start, `Θ = π/2`; the optimal time equals `t`.
    Equatorial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BrachistochroneSolution {
    pub theta_max: f64,
    pub v_max: f64,
    pub s_min: f64,
    pub tau: f64,
    pub ratio_tau_over_t: f64,
}

/// `τ/t = √(4s(N−1)−1) / (2s(N−1))`.
pub fn brachistochrone_ratio(config: &SystemConfig) -> Result<f64> {
    config.require_interacting("brachistochrone")?;
    let x = config.s() * (config.n() - 1.0);
    Ok((4.0 * x - 1.0).sqrt() / (2.0 * x))
}

pub fn brachistochrone(
    config: &SystemConfig,
    xi: f64,
    mode: BrachistochroneMode,
) -> Result<BrachistochroneSolution> {
    config.require_interacting("brachistochrone")?;
    config.require_positive_coupling()?;
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(Error::param("xi", format!("must be positive, got {xi}")));
    }
    let s_min = minimal_distance(config, xi)?;
    let (theta_max, v_max, ratio) = match mode {
        BrachistochroneMode::Optimal => {
            let (theta, v) = maximize_speed(config)?;
            (theta, v, brachistochrone_ratio(config)?)
        }
        BrachistochroneMode::Equatorial => (FRAC_PI_2, speed(config, FRAC_PI_2)?, 1.0),
    };
    Ok(BrachistochroneSolution {
        theta_max,
        v_max,
        s_min,
        tau: s_min / v_max,
        ratio_tau_over_t: ratio,
    })
}
