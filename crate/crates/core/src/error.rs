// Copyright 2026 Robust CNOT Contributors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Pauli label {0:?}, expected one of I, X, Y, Z")]
    InvalidPauli(char),

    #[error("matrix is not Hermitian (max |h - h^dagger| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (max |m^dagger m - 1| = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("cannot compile an empty pulse sequence")]
    EmptySequence,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
