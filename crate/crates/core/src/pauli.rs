// Copyright 2026 Robust CNOT Contributors
// SPDX-License-Identifier: Apache-2.0

//! Single-qubit Pauli operators and their two-qubit tensor products.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::Error;
use crate::linalg::Matrix4;

pub type Matrix2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Row/column order of coefficient tables.
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_label(label: char) -> Result<Self, Error> {
        match label {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::InvalidPauli(other)),
        }
    }

    pub fn label(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn matrix(self) -> Matrix2 {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[l, o], [o, -l]],
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl FromStr for Pauli {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Pauli::from_label(c),
            (Some(c), Some(_)) => Err(Error::InvalidPauli(c)),
            (None, _) => Err(Error::InvalidPauli(' ')),
        }
    }
}

/// The 2×2 Pauli matrix for a label character.
pub fn pauli(label: char) -> Result<Matrix2, Error> {
    Pauli::from_label(label).map(Pauli::matrix)
}

pub fn identity2() -> Matrix2 {
    Pauli::I.matrix()
}

/// `a ⊗ b`, with `a` acting on qubit 1 (the most significant index).
pub fn kron(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    let mut out = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// `σ_a ⊗ σ_b`.
pub fn pauli_pair(a: Pauli, b: Pauli) -> Matrix4 {
    kron(&a.matrix(), &b.matrix())
}

/// Embeds a single-qubit operator on `qubit` (1 or 2).
pub fn on_qubit(qubit: u8, m: &Matrix2) -> Matrix4 {
    match qubit {
        1 => kron(m, &identity2()),
        2 => kron(&identity2(), m),
        q => panic!("qubit index {q} out of range"),
    }
}
