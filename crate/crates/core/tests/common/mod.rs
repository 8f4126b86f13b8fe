#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use spin_manifold::spin::{build_spin_operators, SpinValue};
use spin_manifold::SystemConfig;

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    DMatrix::from_fn(ar * br, ac * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// `op` acting on site `k` (0-based, most significant first) of `n` sites.
pub fn embed(op: &CMat, k: usize, n: usize) -> CMat {
    let d = op.nrows();
    let mut out = DMatrix::<Complex64>::identity(1, 1);
    for site in 0..n {
        let factor = if site == k {
            op.clone()
        } else {
            DMatrix::identity(d, d)
        };
        out = kron(&out, &factor);
    }
    out
}

/// Dense Hamiltonian `2J Σ_{k<l} S_k^z S_l^z` built from spin matrices.
pub fn dense_hamiltonian(config: &SystemConfig) -> CMat {
    let ops = build_spin_operators(config.spin);
    let n = config.n_spins;
    let dim = config.checked_dim().unwrap();
    let sz: Vec<CMat> = (0..n).map(|k| embed(&ops.sz, k, n)).collect();
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    for k in 0..n {
        for l in (k + 1)..n {
            h += &sz[k] * &sz[l] * c(2.0 * config.coupling);
        }
    }
    h
}

pub fn column(v: &[Complex64]) -> CMat {
    DMatrix::from_column_slice(v.len(), 1, v)
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn binom(n: u32, k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * f64::from(n + 1 - i) / f64::from(i))
}

/// `Σ_{m_1..m_N} Π_k P(m_k) exp(−2iξ Σ_{k<l} m_k m_l)` by brute-force enumeration.
pub fn brute_force_overlap(spin: SpinValue, n: usize, theta: f64, xi: f64) -> Complex64 {
    let ts = spin.twice_spin();
    let d = spin.dim();
    let cos2 = (theta / 2.0).cos().powi(2);
    let sin2 = (theta / 2.0).sin().powi(2);
    let weight: Vec<f64> = (0..d as u32)
        .map(|k| binom(ts, k) * cos2.powi(k as i32) * sin2.powi((ts - k) as i32))
        .collect();
    let ms: Vec<f64> = (0..d).map(|j| -spin.s() + j as f64).collect();
    let total = d.pow(n as u32);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut idx = vec![0usize; n];
    for flat in 0..total {
        let mut r = flat;
        for slot in idx.iter_mut().rev() {
            *slot = r % d;
            r /= d;
        }
        let mut w = 1.0;
        let mut pair = 0.0;
        for k in 0..n {
            w *= weight[idx[k]];
            for l in (k + 1)..n {
                pair += ms[idx[k]] * ms[idx[l]];
            }
        }
        acc += Complex64::from_polar(w, -2.0 * xi * pair);
    }
    acc
}
