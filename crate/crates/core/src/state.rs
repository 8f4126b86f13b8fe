//! Dense product-basis states of `N` spin-`s` particles.
//!
//! Layout: the multi-index `(twice_m_1, …, twice_m_N)` is flattened in
//! row-major order with spin 1 most significant and each digit ascending in
//! `twice_m`. This order is part of the JSON state format
//! (`layout = "row-major-ascending-m"`).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coherent::single_site_amplitudes;
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::spin::SpinValue;

pub const LAYOUT: &str = "row-major-ascending-m";

const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    config: SystemConfig,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps raw amplitudes, checking length and normalization.
    pub fn from_amplitudes(config: SystemConfig, amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = config.checked_dim()?;
        if amplitudes.len() != dim {
            return Err(Error::param(
                "amplitudes",
                format!("expected {dim} entries, got {}", amplitudes.len()),
            ));
        }
        let norm2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm2));
        }
        Ok(PureState { config, amplitudes })
    }

    pub fn config(&self) -> &SystemConfig {
        &self.config
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Amplitude at the multi-index given as `twice_m` per spin.
    pub fn amplitude_at(&self, twice_ms: &[i64]) -> Option<Complex64> {
        index_of(self.config.spin, twice_ms).and_then(|i| self.amplitudes.get(i).copied())
    }

    pub fn to_record(&self) -> StateRecord {
        StateRecord {
            config: ConfigRecord {
                n_spins: self.config.n_spins,
                twice_spin: self.config.spin.twice_spin(),
                coupling: self.config.coupling,
            },
            layout: LAYOUT.to_string(),
            amplitudes: self.amplitudes.iter().map(|a| [a.re, a.im]).collect(),
        }
    }

    pub fn from_record(record: &StateRecord) -> Result<Self> {
        if record.layout != LAYOUT {
            return Err(Error::Record(format!(
                "unsupported layout `{}`",
                record.layout
            )));
        }
        let config = SystemConfig::from_twice_spin(
            record.config.n_spins,
            record.config.twice_spin,
            record.config.coupling,
        )?;
        let amps = record
            .amplitudes
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        PureState::from_amplitudes(config, amps)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("state record serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rec: StateRecord =
            serde_json::from_str(text).map_err(|e| Error::Record(e.to_string()))?;
        PureState::from_record(&rec)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigRecord {
    pub n_spins: usize,
    pub twice_spin: u32,
    pub coupling: f64,
}

/// Serialized form of a [`PureState`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateRecord {
    pub config: ConfigRecord,
    pub layout: String,
    pub amplitudes: Vec<[f64; 2]>,
}

/// Flat index of a multi-index, or `None` if any `twice_m` is invalid.
pub fn index_of(spin: SpinValue, twice_ms: &[i64]) -> Option<usize> {
    let ts = i64::from(spin.twice_spin());
    let d = spin.dim();
    let mut idx = 0usize;
    for &tm in twice_ms {
        if tm < -ts || tm > ts || (tm + ts) % 2 != 0 {
            return None;
        }
        idx = idx * d + ((tm + ts) / 2) as usize;
    }
    Some(idx)
}

/// Decodes a flat index into `twice_m` digits (spin 1 first).
pub fn multi_index(spin: SpinValue, n_spins: usize, mut index: usize, out: &mut [i64]) {
    let d = spin.dim();
    for k in (0..n_spins).rev() {
        out[k] = spin.twice_m(index % d);
        index /= d;
    }
}

/// `Σ_{k<l} twice_m_k · twice_m_l` for every basis state, in layout order.
///
/// Computed exactly in integers; `2ξ Σ m_k m_l = ξ · value / 2`.
pub fn pair_sums(config: &SystemConfig) -> Result<Vec<i64>> {
    let dim = config.checked_dim()?;
    let spin = config.spin;
    let n = config.n_spins;
    let mut digits = vec![0i64; n];
    let mut out = Vec::with_capacity(dim);
    for i in 0..dim {
        multi_index(spin, n, i, &mut digits);
        let s1: i64 = digits.iter().sum();
        let s2: i64 = digits.iter().map(|t| t * t).sum();
        out.push((s1 * s1 - s2) / 2);
    }
    Ok(out)
}

/// Tensor product of identical single-site coherent states.
pub fn build_initial_state(config: &SystemConfig, theta: f64, phi: f64) -> Result<PureState> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::Domain {
            what: "theta",
            value: theta,
            domain: "[0, pi]".into(),
        });
    }
    let dim = config.checked_dim()?;
    let site = single_site_amplitudes(config.spin, theta, phi);
    let mut amps = Vec::with_capacity(dim);
    amps.push(Complex64::new(1.0, 0.0));
    for _ in 0..config.n_spins {
        let prev = std::mem::take(&mut amps);
        amps.reserve(prev.len() * site.len());
        for a in &prev {
            for b in &site {
                amps.push(a * b);
            }
        }
    }
    Ok(PureState {
        config: *config,
        amplitudes: amps,
    })
}

/// Propagates under `H = 2J Σ_{k<l} S_k^z S_l^z` for dimensionless time `ξ = J t`.
///
/// `H` is diagonal in the product basis, so each amplitude picks up
/// `exp(−2iξ Σ_{k<l} m_k m_l)`.
pub fn evolve(initial: &PureState, xi: f64) -> PureState {
    let spin = initial.config.spin;
    let n = initial.config.n_spins;
    let mut digits = vec![0i64; n];
    let amplitudes = initial
        .amplitudes
        .iter()
        .enumerate()
        .map(|(i, a)| {
            multi_index(spin, n, i, &mut digits);
            let s1: i64 = digits.iter().sum();
            let s2: i64 = digits.iter().map(|t| t * t).sum();
            let pair = (s1 * s1 - s2) / 2;
            a * Complex64::from_polar(1.0, -xi * pair as f64 / 2.0)
        })
        .collect();
    PureState {
        config: initial.config,
        amplitudes,
    }
}

/// `⟨a|b⟩`.
pub fn overlap(a: &PureState, b: &PureState) -> Result<Complex64> {
    if a.config.n_spins != b.config.n_spins || a.config.spin != b.config.spin {
        return Err(Error::ConfigMismatch);
    }
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Mean and variance of `H` in `state`.
///
/// `ΔE = sqrt(variance)` is the energy uncertainty (ħ = 1).
pub fn hamiltonian_moments(state: &PureState) -> (f64, f64) {
    let j = state.config.coupling;
    let pairs = pair_sums(&state.config).expect("state dimension already validated");
    // E = 2J Σ m_k m_l = J · pair / 2
    let probs: Vec<f64> = state.amplitudes.iter().map(|a| a.norm_sqr()).collect();
    let energies: Vec<f64> = pairs.iter().map(|&p| j * p as f64 / 2.0).collect();
    let mean: f64 = probs.iter().zip(&energies).map(|(p, e)| p * e).sum();
    let var: f64 = probs
        .iter()
        .zip(&energies)
        .map(|(p, e)| p * (e - mean).powi(2))
        .sum();
    (mean, var)
}

/// Sign `σ` in `Ψ(ξ + T) = σ Ψ(ξ)` for the natural period `T`
/// (`T = 2π` for half-integer `s`, `T = π` for integer `s`).
///
/// Half-integer spins give `(−1)^{N(N−1)/2}`; integer spins always give `+1`.
pub fn evolution_period_sign(config: &SystemConfig) -> (f64, f64) {
    use std::f64::consts::PI;
    if config.spin.is_half_integer() {
        let pairs = config.n_spins * (config.n_spins.saturating_sub(1)) / 2;
        (2.0 * PI, if pairs.is_multiple_of(2) { 1.0 } else { -1.0 })
    } else {
        (PI, 1.0)
    }
}
