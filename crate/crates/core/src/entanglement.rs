//! Two-spin I-concurrence and the concurrence-parametrized geometry,
//! phase, speed and optimal time.
//!
//! Throughout, `C_max = 2sξ′_max`, `ξ̃ = ξ′_max/ξ` and `r = ξ̃C/C_max`,
//! which equals `sin²Θ` under the short-time substitution
//! `C = 2ξs sin²Θ` with `ξ′_max = ξ`.

use serde::{Deserialize, Serialize};

use crate::config::SystemConfig;
use crate::density::{partial_trace, purity};
use crate::error::{Error, Result};
use crate::spin::SpinValue;
use crate::state::{build_initial_state, evolve, PureState};

pub const DEFAULT_XI_PRIME_MAX: f64 = 1e-3;

/// `√(2(1 − Tr ρ_k²))` for the reduced state of spin `keep` (1-based).
pub fn iconcurrence_of(state: &PureState, keep: usize) -> Result<f64> {
    let rho = partial_trace(state, keep)?;
    Ok((2.0 * (1.0 - purity(&rho))).max(0.0).sqrt())
}

fn two_spin_state(spin: SpinValue, theta: f64, phi: f64, xi: f64) -> Result<PureState> {
    let config = SystemConfig::new(2, spin, 1.0)?;
    Ok(evolve(&build_initial_state(&config, theta, phi)?, xi))
}

/// Exact I-concurrence of the evolved two-spin state.
pub fn iconcurrence_exact(spin: SpinValue, theta: f64, phi: f64, xi: f64) -> Result<f64> {
    iconcurrence_of(&two_spin_state(spin, theta, phi, xi)?, 1)
}

/// Leading-order I-concurrence `2ξs sin²Θ`.
pub fn iconcurrence_short_time(spin: SpinValue, theta: f64, xi: f64) -> f64 {
    2.0 * xi * spin.s() * theta.sin().powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcurrenceContext {
    pub spin: SpinValue,
    pub xi: f64,
    pub xi_prime_max: f64,
    pub c: f64,
    pub c_max: f64,
}

impl ConcurrenceContext {
    pub fn new(spin: SpinValue, xi: f64, xi_prime_max: f64, c: f64) -> Result<Self> {
        if !(xi > 0.0 && xi.is_finite()) {
            return Err(Error::param("xi", format!("must be positive, got {xi}")));
        }
        if !(xi_prime_max > 0.0 && xi_prime_max.is_finite()) {
            return Err(Error::param(
                "xi_prime_max",
                format!("must be positive, got {xi_prime_max}"),
            ));
        }
        let c_max = 2.0 * spin.s() * xi_prime_max;
        if !(c >= 0.0 && c <= c_max * (1.0 + 1e-12)) {
            return Err(Error::Domain {
                what: "concurrence",
                value: c,
                domain: format!("[0, {c_max}]"),
            });
        }
        Ok(ConcurrenceContext {
            spin,
            xi,
            xi_prime_max,
            c,
            c_max,
        })
    }

    /// Context for the short-time concurrence at `(Θ, ξ)` with `ξ′_max = ξ`.
    pub fn from_theta(spin: SpinValue, theta: f64, xi: f64) -> Result<Self> {
        let c = iconcurrence_short_time(spin, theta, xi).min(2.0 * spin.s() * xi);
        ConcurrenceContext::new(spin, xi, xi, c)
    }

    pub fn with_c(&self, c: f64) -> Result<Self> {
        ConcurrenceContext::new(self.spin, self.xi, self.xi_prime_max, c)
    }

    pub fn s(&self) -> f64 {
        self.spin.s()
    }

    pub fn tilde_xi(&self) -> f64 {
        self.xi_prime_max / self.xi
    }

    /// `ξ̃ C / C_max`.
    pub fn reduced_c(&self) -> f64 {
        self.tilde_xi() * self.c / self.c_max
    }

    pub fn critical_c(&self) -> f64 {
        critical_c(self.spin, self.xi_prime_max, self.tilde_xi())
    }
}

/// Components of the `(C, ξ)` metric with `dS² = g_CC dC² + 2g_Cξ dC dξ + g_ξξ dξ²`.
/// `g_ξξ` alone is the line element of the fixed-concurrence curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcurrenceMetric {
    pub g_cc: f64,
    pub g_cx: f64,
    pub g_xx: f64,
}

/// Two-spin metric in `(C, ξ)`:
///
/// ```text
/// dS² = s / (2ξ²C(2sξ−C)) [ ξ²/2 dC² − ξC dC dξ
///        + ( C²/2 + ξ′C²(2sξ−C)(1 + (4s−1)(1 − ξ′C/(2sξ²))) ) dξ² ]
/// ```
pub fn metric_from_concurrence(ctx: &ConcurrenceContext) -> Result<ConcurrenceMetric> {
    let s = ctx.s();
    let (xi, c, xp) = (ctx.xi, ctx.c, ctx.xi_prime_max);
    let gap = 2.0 * s * xi - c;
    if !(c > 0.0 && gap > 0.0) {
        return Err(Error::Degenerate(format!(
            "concurrence metric needs 0 < C < 2s xi = {}, got C = {c}",
            2.0 * s * xi
        )));
    }
    let pref = s / (2.0 * xi * xi * c * gap);
    let bracket = 1.0 + (4.0 * s - 1.0) * (1.0 - xp * c / (2.0 * s * xi * xi));
    Ok(ConcurrenceMetric {
        g_cc: pref * xi * xi / 2.0,
        g_cx: -pref * xi * c / 2.0,
        g_xx: pref * (c * c / 2.0 + xp * c * c * gap * bracket),
    })
}

/// Gaussian curvature `(2/s)[2 − ((4s−1)(1−r) + 2s+1) / ((4s−1)(1−r) + 1)²]`.
pub fn curvature_from_concurrence(ctx: &ConcurrenceContext) -> f64 {
    curvature_at_reduced(ctx.spin, ctx.reduced_c())
}

fn curvature_at_reduced(spin: SpinValue, r: f64) -> f64 {
    let s = spin.s();
    let u = (4.0 * s - 1.0) * (1.0 - r);
    2.0 / s * (2.0 - (u + 2.0 * s + 1.0) / ((u + 1.0) * (u + 1.0)))
}

/// Curvature of the product states, `(2/s)(2 − 3/(8s))`.
pub fn k_max(spin: SpinValue) -> f64 {
    let s = spin.s();
    2.0 / s * (2.0 - 3.0 / (8.0 * s))
}

/// Curvature at `C = C_max`.
pub fn k_min(spin: SpinValue, tilde_xi: f64) -> f64 {
    curvature_at_reduced(spin, tilde_xi)
}

/// Geometric phase in terms of the concurrence:
///
/// ```text
/// 2ξs²(1−r) − arctan( 4ξs²(1−r) / (2 − ξ²s²[(2s−1)²r² − 4s(2s−1)r + 4s²]) )
/// ```
pub fn phase_from_concurrence(ctx: &ConcurrenceContext) -> f64 {
    let s = ctx.s();
    let xi = ctx.xi;
    let r = ctx.reduced_c();
    let lead = 2.0 * xi * s * s * (1.0 - r);
    let k = 2.0 * s - 1.0;
    let den = 2.0 - xi * xi * s * s * (k * k * r * r - 4.0 * s * k * r + 4.0 * s * s);
    lead - (4.0 * xi * s * s * (1.0 - r) / den).atan()
}

fn speed_radicand(ctx: &ConcurrenceContext) -> Result<f64> {
    let s = ctx.s();
    let r = ctx.reduced_c();
    let v = r * (4.0 * s - (4.0 * s - 1.0) * r);
    if v < -1e-14 {
        return Err(Error::Domain {
            what: "reduced concurrence",
            value: r,
            domain: format!("[0, {}]", 4.0 * s / (4.0 * s - 1.0)),
        });
    }
    Ok(v.max(0.0))
}

/// `V = |J| s √(r(4s − (4s−1)r))`.
pub fn speed_from_concurrence(ctx: &ConcurrenceContext, coupling: f64) -> Result<f64> {
    Ok(coupling.abs() * ctx.s() * speed_radicand(ctx)?.sqrt())
}

/// Stationary point of the speed, `C′ = 2sC_max/((4s−1)ξ̃)`.
pub fn critical_c(spin: SpinValue, xi_prime_max: f64, tilde_xi: f64) -> f64 {
    let s = spin.s();
    let c_max = 2.0 * s * xi_prime_max;
    2.0 * s * c_max / ((4.0 * s - 1.0) * tilde_xi)
}

/// Maximizer of the speed over `[0, C_max]`.
pub fn speed_argmax_c(ctx: &ConcurrenceContext) -> f64 {
    ctx.critical_c().min(ctx.c_max)
}

/// `V_max = 2|J|s²/√(4s−1)`.
pub fn v_max_two_spin(spin: SpinValue, coupling: f64) -> f64 {
    let s = spin.s();
    2.0 * coupling.abs() * s * s / (4.0 * s - 1.0).sqrt()
}

/// Path length `S = s√(ξ′ξ r(4s − (4s−1)r))` and optimal time `τ_C = S/V_max`.
pub fn distance_and_time_from_concurrence(
    ctx: &ConcurrenceContext,
    coupling: f64,
) -> Result<(f64, f64)> {
    if !(coupling > 0.0) {
        return Err(Error::param(
            "coupling",
            format!("must be positive, got {coupling}"),
        ));
    }
    let s = ctx.s();
    let dist = s * (ctx.xi_prime_max * ctx.xi * speed_radicand(ctx)?).sqrt();
    Ok((dist, dist / v_max_two_spin(ctx.spin, coupling)))
}
