// Copyright 2026 Robust CNOT Contributors
// SPDX-License-Identifier: Apache-2.0

//! Two-qubit Hamiltonians expanded in the Pauli basis.
//!
//! `H = Σ_{a,b ∈ {I,X,Y,Z}} J_ab σ_a ⊗ σ_b`, with coefficients in angular
//! frequency units. Random ensembles use ChaCha8 streams keyed by a
//! SplitMix64 mix of `(seed, indices…)`, so every sample is reproducible on
//! its own regardless of the order in which samples are evaluated.

use std::ops::{Add, Index, IndexMut, Mul};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::Matrix4;
use crate::pauli::{pauli_pair, Pauli};

/// Real coefficient table `J_ab`, rows indexed by the qubit-1 Pauli.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PauliCoeffs {
    pub j: [[f64; 4]; 4],
}

impl PauliCoeffs {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(a: Pauli, b: Pauli, value: f64) -> Self {
        let mut c = Self::zero();
        c[(a, b)] = value;
        c
    }

    pub fn get(&self, a: Pauli, b: Pauli) -> f64 {
        self.j[a.index()][b.index()]
    }

    /// The `Z⊗Z` coefficient, the term isolated by refocusing.
    pub fn j_zz(&self) -> f64 {
        self.get(Pauli::Z, Pauli::Z)
    }

    pub fn validate(&self) -> Result<()> {
        if self.j.iter().flatten().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonFinite("Pauli coefficients"))
        }
    }

    /// Sums `J_ab σ_a ⊗ σ_b`. Hermitian by construction.
    pub fn hamiltonian(&self) -> Matrix4 {
        let mut h = Matrix4::zeros();
        for a in Pauli::ALL {
            for b in Pauli::ALL {
                let coeff = self.get(a, b);
                if coeff != 0.0 {
                    h = h + pauli_pair(a, b).scale_real(coeff);
                }
            }
        }
        h
    }
}

impl Index<(Pauli, Pauli)> for PauliCoeffs {
    type Output = f64;
    fn index(&self, (a, b): (Pauli, Pauli)) -> &f64 {
        &self.j[a.index()][b.index()]
    }
}

impl IndexMut<(Pauli, Pauli)> for PauliCoeffs {
    fn index_mut(&mut self, (a, b): (Pauli, Pauli)) -> &mut f64 {
        &mut self.j[a.index()][b.index()]
    }
}

impl Add for PauliCoeffs {
    type Output = PauliCoeffs;
    fn add(mut self, rhs: PauliCoeffs) -> PauliCoeffs {
        for (x, y) in self.j.iter_mut().flatten().zip(rhs.j.iter().flatten()) {
            *x += y;
        }
        self
    }
}

impl Mul<PauliCoeffs> for f64 {
    type Output = PauliCoeffs;
    fn mul(self, mut rhs: PauliCoeffs) -> PauliCoeffs {
        rhs.j.iter_mut().flatten().for_each(|x| *x *= self);
        rhs
    }
}

/// Builds the Hermitian matrix for a coefficient table.
pub fn build_hamiltonian(c: &PauliCoeffs) -> Matrix4 {
    c.hamiltonian()
}

/// Isotropic exchange `J (XX + YY + ZZ)`.
pub fn heisenberg(j: f64) -> PauliCoeffs {
    let mut c = PauliCoeffs::zero();
    c[(Pauli::X, Pauli::X)] = j;
    c[(Pauli::Y, Pauli::Y)] = j;
    c[(Pauli::Z, Pauli::Z)] = j;
    c
}

/// A Heisenberg coupling of strength `j_base` plus `r · u_ab` with every
/// `u_ab` i.i.d. uniform on [-1, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomEnsembleSpec {
    pub j_base: f64,
    pub r: f64,
    pub seed: u64,
}

impl RandomEnsembleSpec {
    pub fn new(j_base: f64, r: f64, seed: u64) -> Result<Self> {
        if !(j_base > 0.0 && j_base.is_finite()) {
            return Err(Error::Domain(format!("j_base must be positive, got {j_base}")));
        }
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::Domain(format!("random amplitude must be non-negative, got {r}")));
        }
        Ok(RandomEnsembleSpec { j_base, r, seed })
    }
}

/// Draws one member of the ensemble. All 16 perturbations, including the
/// identity term, are drawn in row-major `(a, b)` order from one stream.
pub fn random_hamiltonian(spec: &RandomEnsembleSpec) -> PauliCoeffs {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut c = heisenberg(spec.j_base);
    for a in Pauli::ALL {
        for b in Pauli::ALL {
            let u: f64 = rng.random_range(-1.0..=1.0);
            c[(a, b)] += spec.r * u;
        }
    }
    c
}

/// SplitMix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent sub-seed from a master seed and a path of
/// indices, e.g. `(grid point, sample)`.
pub fn mix_seed(seed: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix64(seed), |acc, &n| splitmix64(acc ^ splitmix64(n)))
}
