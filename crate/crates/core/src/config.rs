use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spin::SpinValue;

/// Default cap on the number of amplitudes in a product-basis state.
pub const DEFAULT_DIM_CAP: usize = 1 << 20;

/// `N` spin-`s` particles with all-to-all Ising coupling `J` (ħ = 1).
///
/// Closed-form quantities only need `N`, `s` and `J`, so a configuration
/// may describe systems far larger than `dim_cap`; the cap is enforced when
/// a state vector is materialized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    pub n_spins: usize,
    pub spin: SpinValue,
    pub coupling: f64,
    #[serde(default = "default_cap", skip_serializing)]
    pub dim_cap: usize,
}

fn default_cap() -> usize {
    DEFAULT_DIM_CAP
}

impl SystemConfig {
    pub fn new(n_spins: usize, spin: SpinValue, coupling: f64) -> Result<Self> {
        Self::with_dim_cap(n_spins, spin, coupling, DEFAULT_DIM_CAP)
    }

    pub fn with_dim_cap(
        n_spins: usize,
        spin: SpinValue,
        coupling: f64,
        dim_cap: usize,
    ) -> Result<Self> {
        if n_spins == 0 {
            return Err(Error::param("n_spins", "must be at least 1"));
        }
        if !coupling.is_finite() {
            return Err(Error::param(
                "coupling",
                format!("must be finite, got {coupling}"),
            ));
        }
        Ok(SystemConfig {
            n_spins,
            spin,
            coupling,
            dim_cap,
        })
    }

    /// Convenience constructor from `twice_spin`.
    pub fn from_twice_spin(n_spins: usize, twice_spin: u32, coupling: f64) -> Result<Self> {
        Self::new(n_spins, SpinValue::new(twice_spin)?, coupling)
    }

    #[inline]
    pub fn s(&self) -> f64 {
        self.spin.s()
    }

    #[inline]
    pub fn n(&self) -> f64 {
        self.n_spins as f64
    }

    /// `d^N`, or `None` if it does not fit in 128 bits.
    pub fn hilbert_dim(&self) -> Option<u128> {
        (self.spin.dim() as u128).checked_pow(u32::try_from(self.n_spins).ok()?)
    }

    /// `d^N` as a `usize`, checked against `dim_cap`.
    pub fn checked_dim(&self) -> Result<usize> {
        match self.hilbert_dim() {
            Some(dim) if dim <= self.dim_cap as u128 => Ok(dim as usize),
            Some(dim) => Err(Error::DimensionCap {
                dim,
                cap: self.dim_cap,
            }),
            None => Err(Error::DimensionCap {
                dim: u128::MAX,
                cap: self.dim_cap,
            }),
        }
    }

    /// Number of interacting pairs, `N(N-1)/2`.
    pub fn pair_count(&self) -> f64 {
        self.n() * (self.n() - 1.0) / 2.0
    }

    /// The factor `4s(N-1) - 1` that recurs in the metric and curvature.
    pub fn anisotropy(&self) -> f64 {
        4.0 * self.s() * (self.n() - 1.0) - 1.0
    }

    pub(crate) fn require_interacting(&self, what: &str) -> Result<()> {
        if self.n_spins < 2 {
            return Err(Error::Degenerate(format!(
                "{what} needs at least two spins (N = {})",
                self.n_spins
            )));
        }
        Ok(())
    }

    pub(crate) fn require_positive_coupling(&self) -> Result<()> {
        if self.coupling <= 0.0 {
            return Err(Error::param(
                "coupling",
                format!(
                    "must be positive for time-optimal evolution, got {}",
                    self.coupling
                ),
            ));
        }
        Ok(())
    }
}

/// A point `(Θ, Φ, ξ)` on the evolving-state manifold; `ξ = J t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub theta: f64,
    pub phi: f64,
    pub xi: f64,
}

impl ParamPoint {
    /// Canonicalizes `theta` into `[0, π]` (reflecting through the pole and
    /// shifting `phi` by π when needed) and `phi` into `[0, 2π)`.
    pub fn new(theta: f64, phi: f64, xi: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::param("theta", "must be finite"));
        }
        if !phi.is_finite() {
            return Err(Error::param("phi", "must be finite"));
        }
        if !xi.is_finite() || xi < 0.0 {
            return Err(Error::param(
                "xi",
                format!("must be finite and >= 0, got {xi}"),
            ));
        }
        let mut theta = theta.rem_euclid(2.0 * PI);
        let mut phi = phi;
        if theta > PI {
            theta = 2.0 * PI - theta;
            phi += PI;
        }
        let mut phi = phi.rem_euclid(2.0 * PI);
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        Ok(ParamPoint { theta, phi, xi })
    }

    pub fn with_xi(self, xi: f64) -> Result<Self> {
        ParamPoint::new(self.theta, self.phi, xi)
    }
}
