//! Reduced single-spin density matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::PureState;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const EIGEN_FLOOR: f64 = -1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity (eigenvalues ≥ −1e-10).
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::InvalidDensityMatrix("matrix is not square".into()));
        }
        let herm = (&entries - entries.adjoint()).camax();
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (max deviation {herm:e})"
            )));
        }
        let tr = entries.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace is {tr}")));
        }
        let hermitian = (&entries + entries.adjoint()) * Complex64::new(0.5, 0.0);
        let min_eig = hermitian
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eig < EIGEN_FLOOR {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(DensityMatrix { entries })
    }

    /// `|v⟩⟨v|` for a normalized vector.
    pub fn pure(v: &[Complex64]) -> Result<Self> {
        let col = DMatrix::from_column_slice(v.len(), 1, v);
        DensityMatrix::new(&col * col.adjoint())
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let w = Complex64::new(1.0 / dim as f64, 0.0);
        DensityMatrix {
            entries: DMatrix::identity(dim, dim) * w,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }
}

/// Reduced density matrix of spin `keep` (1-based) obtained by tracing out
/// every other spin. Basis order of the result is ascending m.
pub fn partial_trace(state: &PureState, keep: usize) -> Result<DensityMatrix> {
    let cfg = state.config();
    let n = cfg.n_spins;
    if n < 2 {
        return Err(Error::Degenerate(
            "partial trace needs at least two spins".into(),
        ));
    }
    if keep == 0 || keep > n {
        return Err(Error::SpinIndex {
            index: keep,
            n_spins: n,
        });
    }
    let d = cfg.spin.dim();
    // index = left · (d · right) + a · right + r
    let left = d.pow((keep - 1) as u32);
    let right = d.pow((n - keep) as u32);
    let amps = state.amplitudes();
    let mut rho = DMatrix::<Complex64>::zeros(d, d);
    for l in 0..left {
        let base = l * d * right;
        for a in 0..d {
            for b in a..d {
                let mut acc = Complex64::new(0.0, 0.0);
                let ra = base + a * right;
                let rb = base + b * right;
                for r in 0..right {
                    acc += amps[ra + r] * amps[rb + r].conj();
                }
                rho[(a, b)] += acc;
            }
        }
    }
    for a in 0..d {
        rho[(a, a)].im = 0.0;
        for b in (a + 1)..d {
            rho[(b, a)] = rho[(a, b)].conj();
        }
    }
    Ok(DensityMatrix { entries: rho })
}

/// `Tr ρ²`, evaluated as the trace of the matrix self-product.
pub fn purity(rho: &DensityMatrix) -> f64 {
    let m = &rho.entries;
    let d = m.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for k in 0..d {
            acc += m[(i, k)] * m[(k, i)];
        }
    }
    acc.re
}
