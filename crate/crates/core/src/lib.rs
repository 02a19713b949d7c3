// Copyright 2026 Robust CNOT Contributors
// SPDX-License-Identifier: Apache-2.0

//! Robust two-qubit gates from composite pulse sequences.
//!
//! Sequences are plain lists of pulses ([`pulse::PulseSequence`]) that are
//! compiled to 4×4 unitaries against whatever Hamiltonian the hardware
//! actually has. The [`gates`] module builds BB1-style corrected ZZ rotations
//! and CNOTs; [`experiments`] runs the fidelity studies on top of them.

// Fixed-size matrix code reads best with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod experiments;
pub mod fidelity;
pub mod gates;
pub mod hamiltonian;
pub mod linalg;
pub mod pauli;
pub mod pulse;

pub use error::{Error, Result};
pub use fidelity::{fidelity, infidelity, phase_distance, trace_overlap};
pub use gates::{Calibration, CouplingModel, Isolation, Strategy};
pub use hamiltonian::{PauliCoeffs, RandomEnsembleSpec};
pub use linalg::{Matrix4, Unitary4};
pub use pauli::Pauli;
pub use pulse::{Axis, GateCounts, Pulse, PulseSequence, Qubit, TimingModel};
