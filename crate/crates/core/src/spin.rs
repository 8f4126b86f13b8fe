//! Single-site spin quantum numbers and SU(2) generators.
//!
//! Magnetic quantum numbers are carried as integers `twice_m = 2m` so that
//! half-integer spins never pass through floating point until the last
//! multiplication. The single-site basis is ordered by ascending `twice_m`.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Spin quantum number `s = twice_spin / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct SpinValue {
    twice_spin: u32,
}

impl SpinValue {
    pub fn new(twice_spin: u32) -> Result<Self> {
        if twice_spin == 0 {
            return Err(Error::InvalidSpin(twice_spin));
        }
        Ok(SpinValue { twice_spin })
    }

    pub const HALF: SpinValue = SpinValue { twice_spin: 1 };
    pub const ONE: SpinValue = SpinValue { twice_spin: 2 };

    #[inline]
    pub fn twice_spin(self) -> u32 {
        self.twice_spin
    }

    #[inline]
    pub fn s(self) -> f64 {
        f64::from(self.twice_spin) / 2.0
    }

    /// Local dimension `d = 2s + 1`.
    #[inline]
    pub fn dim(self) -> usize {
        self.twice_spin as usize + 1
    }

    #[inline]
    pub fn is_half_integer(self) -> bool {
        self.twice_spin % 2 == 1
    }

    /// `twice_m` for basis position `j` (0-based, ascending m).
    #[inline]
    pub fn twice_m(self, j: usize) -> i64 {
        2 * j as i64 - i64::from(self.twice_spin)
    }

    /// All `twice_m` values, ascending: `-2s, -2s+2, ..., 2s`.
    pub fn twice_ms(self) -> impl Iterator<Item = i64> + Clone {
        let ts = i64::from(self.twice_spin);
        (0..=ts).map(move |j| 2 * j - ts)
    }
}

impl TryFrom<u32> for SpinValue {
    type Error = Error;
    fn try_from(v: u32) -> Result<Self> {
        SpinValue::new(v)
    }
}

impl From<SpinValue> for u32 {
    fn from(v: SpinValue) -> u32 {
        v.twice_spin
    }
}

impl fmt::Display for SpinValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_spin.is_multiple_of(2) {
            write!(f, "{}", self.twice_spin / 2)
        } else {
            write!(f, "{}/2", self.twice_spin)
        }
    }
}

/// The Cartesian spin matrices `(Sx, Sy, Sz)` in the ascending-m basis.
#[derive(Debug, Clone)]
pub struct SpinOperators {
    pub sx: DMatrix<Complex64>,
    pub sy: DMatrix<Complex64>,
    pub sz: DMatrix<Complex64>,
}

impl SpinOperators {
    /// Raising operator `S+ = Sx + i Sy`.
    pub fn raising(&self) -> DMatrix<Complex64> {
        &self.sx + &self.sy * Complex64::i()
    }

    /// Lowering operator `S- = Sx - i Sy`.
    pub fn lowering(&self) -> DMatrix<Complex64> {
        &self.sx - &self.sy * Complex64::i()
    }
}

/// Builds `Sx, Sy, Sz` from the ladder matrix elements
/// `<m+1|S+|m> = sqrt(s(s+1) - m(m+1))`.
pub fn build_spin_operators(spin: SpinValue) -> SpinOperators {
    let d = spin.dim();
    let s = spin.s();
    let mut sz = DMatrix::<Complex64>::zeros(d, d);
    let mut sp = DMatrix::<Complex64>::zeros(d, d);
    for j in 0..d {
        let m = spin.twice_m(j) as f64 / 2.0;
        sz[(j, j)] = Complex64::new(m, 0.0);
        if j + 1 < d {
            sp[(j + 1, j)] = Complex64::new((s * (s + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
        }
    }
    let sm = sp.adjoint();
    let sx = (&sp + &sm) * Complex64::new(0.5, 0.0);
    let sy = (&sp - &sm) * Complex64::new(0.0, -0.5);
    SpinOperators { sx, sy, sz }
}
