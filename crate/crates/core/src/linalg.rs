// Copyright 2026 Robust CNOT Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense 4×4 complex matrices for two-qubit operators.
//!
//! Basis order is |00⟩, |01⟩, |10⟩, |11⟩ with qubit 1 as the left (most
//! significant) tensor factor. Hermitian exponentials go through a cyclic
//! complex Jacobi eigendecomposition, which is exact up to rounding at this
//! size and needs no step-size tuning.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on `m†m = 1` accepted by [`Unitary4::new`].
pub const UNITARY_TOL: f64 = 1e-10;
/// Tolerance on `h = h†` accepted by [`expm_i`].
pub const HERMITIAN_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, PartialEq)]
pub struct Matrix4(pub [[Complex64; 4]; 4]);

impl Matrix4 {
    pub const fn zeros() -> Self {
        Matrix4([[ZERO; 4]; 4])
    }

    pub const fn identity() -> Self {
        let mut m = [[ZERO; 4]; 4];
        m[0][0] = ONE;
        m[1][1] = ONE;
        m[2][2] = ONE;
        m[3][3] = ONE;
        Matrix4(m)
    }

    pub fn from_diagonal(d: [Complex64; 4]) -> Self {
        let mut m = Self::zeros();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    /// Builds a matrix from real entries, row-major.
    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = Complex64::new(rows[i][j], 0.0);
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2] + self.0[3][3]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|z| *z *= s);
        out
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Max entry of `|h - h†|`.
    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Max entry of `|m†m - 1|`.
    pub fn unitary_deviation(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }

    /// Trace of `self† · other` without forming the product.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let mut acc = ZERO;
        for i in 0..4 {
            for j in 0..4 {
                acc += self.0[i][j].conj() * other.0[i][j];
            }
        }
        acc
    }
}

impl Default for Matrix4 {
    fn default() -> Self {
        Self::zeros()
    }
}

impl fmt::Debug for Matrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix4[")?;
        for row in &self.0 {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix4 {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Matrix4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;
    fn mul(self, rhs: Matrix4) -> Matrix4 {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] + a[i][3] * b[3][j];
            }
        }
        Matrix4(out)
    }
}

impl Add for Matrix4 {
    type Output = Matrix4;
    fn add(mut self, rhs: Matrix4) -> Matrix4 {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl Sub for Matrix4 {
    type Output = Matrix4;
    fn sub(mut self, rhs: Matrix4) -> Matrix4 {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl Neg for Matrix4 {
    type Output = Matrix4;
    fn neg(self) -> Matrix4 {
        self.scale_real(-1.0)
    }
}

/// Eigendecomposition `h = V diag(values) V†` of a Hermitian matrix.
#[derive(Debug, Clone, Copy)]
pub struct HermitianEigen {
    pub values: [f64; 4],
    /// Columns are the orthonormal eigenvectors.
    pub vectors: Matrix4,
}

impl HermitianEigen {
    /// Cyclic Jacobi sweeps. Each rotation first removes the phase of the
    /// pivot so the 2×2 subproblem is real symmetric.
    pub fn new(h: &Matrix4) -> Result<Self> {
        if !h.is_finite() {
            return Err(Error::NonFinite("Hermitian matrix"));
        }
        let deviation = h.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        // Symmetrize so the iteration sees an exactly Hermitian input.
        let mut a = (*h + h.adjoint()).scale_real(0.5);
        let mut v = Matrix4::identity();
        let scale = a.max_abs().max(f64::MIN_POSITIVE);

        for _sweep in 0..64 {
            let off: f64 =
                (0..4).flat_map(|p| ((p + 1)..4).map(move |q| (p, q))).map(|(p, q)| a.0[p][q].norm_sqr()).sum();
            if off.sqrt() <= 1e-17 * scale {
                break;
            }
            for p in 0..3 {
                for q in (p + 1)..4 {
                    let apq = a.0[p][q];
                    let r = apq.norm();
                    if r <= 1e-300 {
                        continue;
                    }
                    let app = a.0[p][p].re;
                    let aqq = a.0[q][q].re;
                    // Conjugating with diag(1, w) on (p, q) makes the pivot
                    // apq·w = r real.
                    let w = apq.conj() / r;
                    let theta = (aqq - app) / (2.0 * r);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    // G = diag(1, w) · [[c, s], [-s, c]] embedded at (p, q).
                    let mut g = Matrix4::identity();
                    g.0[p][p] = Complex64::new(c, 0.0);
                    g.0[p][q] = Complex64::new(s, 0.0);
                    g.0[q][p] = w * (-s);
                    g.0[q][q] = w * c;
                    a = g.adjoint() * a * g;
                    a.0[p][q] = ZERO;
                    a.0[q][p] = ZERO;
                    v = v * g;
                }
            }
        }

        let values = [a.0[0][0].re, a.0[1][1].re, a.0[2][2].re, a.0[3][3].re];
        Ok(HermitianEigen { values, vectors: v })
    }

    /// `exp(i · t · h)` from the stored decomposition.
    pub fn exp_i(&self, t: f64) -> Matrix4 {
        let v = &self.vectors.0;
        let phases: [Complex64; 4] = std::array::from_fn(|k| Complex64::from_polar(1.0, self.values[k] * t));
        let mut out = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = ZERO;
                for k in 0..4 {
                    acc += v[i][k] * phases[k] * v[j][k].conj();
                }
                out[i][j] = acc;
            }
        }
        Matrix4(out)
    }
}

/// A 4×4 unitary, checked to [`UNITARY_TOL`] on construction.
#[derive(Clone, Copy, PartialEq)]
pub struct Unitary4(Matrix4);

impl Unitary4 {
    pub fn new(m: Matrix4) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite("unitary"));
        }
        let deviation = m.unitary_deviation();
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Unitary4(m))
    }

    /// Wraps a product of unitaries without re-checking; callers verify at
    /// the end of a compilation.
    pub(crate) fn new_unchecked(m: Matrix4) -> Self {
        debug_assert!(m.unitary_deviation() < 1e-6);
        Unitary4(m)
    }

    pub fn identity() -> Self {
        Unitary4(Matrix4::identity())
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix4 {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Unitary4(self.0.adjoint())
    }

    /// Multiplies by a unit-modulus phase.
    pub fn with_phase(&self, phi: f64) -> Self {
        Unitary4(self.0.scale(Complex64::from_polar(1.0, phi)))
    }

    /// The exact CNOT with qubit 1 as control: |10⟩ ↔ |11⟩.
    pub fn cnot() -> Self {
        Unitary4(Matrix4::from_real([
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
        ]))
    }
}

impl Mul for Unitary4 {
    type Output = Unitary4;
    fn mul(self, rhs: Unitary4) -> Unitary4 {
        Unitary4(self.0 * rhs.0)
    }
}

impl fmt::Debug for Unitary4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Unitary4({:?})", self.0)
    }
}

/// Computes `exp(i · h · t)` for Hermitian `h`.
pub fn expm_i(h: &Matrix4, t: f64) -> Result<Unitary4> {
    if !t.is_finite() {
        return Err(Error::NonFinite("evolution time"));
    }
    let eig = HermitianEigen::new(h)?;
    Unitary4::new(eig.exp_i(t))
}
