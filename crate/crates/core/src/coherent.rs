//! Single-site SU(2) coherent amplitudes and the occupation-number form of
//! the initial/evolved overlap.
//!
//! The coherent state is the rotation of the maximum-weight state,
//! `exp(μ S+ − μ* S−)|s⟩` with `μ = (Θ/2) e^{−iΦ}`, which in the ascending-m
//! basis has amplitudes
//!
//! ```text
//! ⟨m|Θ,Φ⟩ = sqrt(C(2s, s+m)) cos(Θ/2)^{s+m} (−e^{iΦ} sin(Θ/2))^{s−m}
//! ```
//!
//! This is the stereographic form `(1+|Z|²)^{−s} ζ^{s−m} sqrt(C(2s, s−m))`
//! with `ζ = −Z*`, written with half angles so that nothing diverges at the
//! south pole.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::config::SystemConfig;
use crate::spin::SpinValue;

/// Binomial coefficient as a float. Exact for the sizes used here.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * f64::from(n - i) / f64::from(i + 1);
    }
    acc.round()
}

/// Single-site coherent amplitudes in ascending-m order.
pub fn single_site_amplitudes(spin: SpinValue, theta: f64, phi: f64) -> Vec<Complex64> {
    let ts = spin.twice_spin();
    let d = spin.dim();
    if theta == PI {
        // South pole: lowest-weight state, with the phase the rotation gives.
        let mut amps = vec![Complex64::new(0.0, 0.0); d];
        amps[0] = (-Complex64::from_polar(1.0, phi)).powu(ts);
        return amps;
    }
    let c = (theta / 2.0).cos();
    let lower = -Complex64::from_polar((theta / 2.0).sin(), phi);
    (0..d)
        .map(|j| {
            let k = j as u32; // s + m
            let up = c.powi(k as i32) * binomial(ts, k).sqrt();
            lower.powu(ts - k) * up
        })
        .collect()
}

/// Level populations `|⟨m|Θ,Φ⟩|²` (a Binomial(2s, cos²(Θ/2)) distribution in s+m).
pub fn level_weights(spin: SpinValue, theta: f64) -> Vec<f64> {
    let ts = spin.twice_spin();
    let c2 = (theta / 2.0).cos().powi(2);
    let s2 = (theta / 2.0).sin().powi(2);
    (0..=ts)
        .map(|k| binomial(ts, k) * c2.powi(k as i32) * s2.powi((ts - k) as i32))
        .collect()
}

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(0.0);
    let mut acc = 0.0;
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// Visits every occupation vector `(n_j)` with `Σ n_j = N` over the `d`
/// single-site levels, reporting its multinomial log-weight and the integer
/// pair sum `Σ_{k<l} twice_m_k twice_m_l`.
fn for_each_occupation(config: &SystemConfig, theta: f64, mut visit: impl FnMut(f64, i128)) {
    let spin = config.spin;
    let weights = level_weights(spin, theta);
    let ln_w: Vec<f64> = weights.iter().map(|w| w.ln()).collect();
    let lnf = ln_factorials(config.n_spins);
    let twice_ms: Vec<i128> = spin.twice_ms().map(i128::from).collect();

    struct Walk<'a> {
        ln_w: &'a [f64],
        weights: &'a [f64],
        lnf: &'a [f64],
        twice_ms: &'a [i128],
    }

    fn rec(
        w: &Walk<'_>,
        level: usize,
        remaining: usize,
        log_acc: f64,
        sum1: i128,
        sum2: i128,
        visit: &mut dyn FnMut(f64, i128),
    ) {
        let last = w.weights.len() - 1;
        let tm = w.twice_ms[level];
        if level == last {
            let n = remaining;
            if n > 0 && w.weights[level] == 0.0 {
                return;
            }
            let lw = log_acc - w.lnf[n] + if n > 0 { n as f64 * w.ln_w[level] } else { 0.0 };
            let s1 = sum1 + n as i128 * tm;
            let s2 = sum2 + n as i128 * tm * tm;
            visit(lw, (s1 * s1 - s2) / 2);
            return;
        }
        for n in 0..=remaining {
            if n > 0 && w.weights[level] == 0.0 {
                break;
            }
            let lw = log_acc - w.lnf[n] + if n > 0 { n as f64 * w.ln_w[level] } else { 0.0 };
            rec(
                w,
                level + 1,
                remaining - n,
                lw,
                sum1 + n as i128 * tm,
                sum2 + n as i128 * tm * tm,
                visit,
            );
        }
    }

    let walk = Walk {
        ln_w: &ln_w,
        weights: &weights,
        lnf: &lnf,
        twice_ms: &twice_ms,
    };
    rec(
        &walk,
        0,
        config.n_spins,
        lnf[config.n_spins],
        0,
        0,
        &mut visit,
    );
}

/// `⟨Ψ_i|Ψ(ξ)⟩` as the weighted sum of `exp(−2iξ Σ_{k<l} m_k m_l)` over all
/// multi-indices, grouped by occupation numbers so the cost grows
/// polynomially in `N`. Independent of the state-vector code path and valid
/// for any `N`.
pub fn overlap_series(config: &SystemConfig, theta: f64, xi: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for_each_occupation(config, theta, |ln_weight, pair_twice| {
        // 2ξ Σ m_k m_l = ξ Σ twice_m_k twice_m_l / 2
        let angle = -xi * pair_twice as f64 / 2.0;
        acc += Complex64::from_polar(ln_weight.exp(), angle);
    });
    acc
}
