// Copyright 2026 Robust CNOT Contributors
// SPDX-License-Identifier: Apache-2.0

//! Sequence generators for robust two-qubit gates.
//!
//! The building block is the ZZ rotation `θ_0 = exp(iθ/2 Z⊗Z)` and its
//! phase-shifted form `θ_φ = R_y^(2)(φ) θ_0 R_y^(2)(−φ)`. How `θ_0` is
//! realized depends on the [`Calibration`]:
//!
//! * `AbstractDelta`: the ambient Hamiltonian is `(1+Δ) J_P Z⊗Z` and a single
//!   evolution of length `θ / (2 J_P)` over- or under-rotates by `1+Δ`.
//! * `FullHamiltonian` with term isolation: `Q_k(θ / 2J_P)` refocuses an
//!   arbitrary two-qubit Hamiltonian down to its `Z⊗Z` part.
//! * `FullHamiltonian` with the Heisenberg shortcut: two refocused
//!   evolutions of `θ / 4J_P` each, exact for isotropic exchange.
//!
//! Composite sequences are then assembled from these primitives, and
//! [`cnot_assembly`] dresses a `(π/2)_0` entangler into a CNOT.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hamiltonian::PauliCoeffs;
use crate::linalg::{expm_i, Matrix4, Unitary4};
use crate::pauli::{pauli_pair, Pauli};
use crate::pulse::{Axis, Pulse, PulseSequence, Qubit};

/// How the `Z⊗Z` term is isolated from a general Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Isolation {
    /// `Q_k(t) = Q(t/k)^k`, valid for any two-qubit Hamiltonian.
    TermIsolation { k: u32 },
    /// `Zπ¹ e^{iHt} Zπ¹ e^{iHt}`, exact when the coupling is Heisenberg.
    HeisenbergShortcut,
}

impl Isolation {
    /// Ratio of the isolated ZZ angle to `J_ZZ · (total evolution time)/2`…
    /// more simply: the isolated generator is `κ J_ZZ Z⊗Z` per unit of the
    /// segment time passed to the builder.
    pub fn gain(self) -> f64 {
        match self {
            Isolation::TermIsolation { .. } => 1.0,
            Isolation::HeisenbergShortcut => 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CouplingModel {
    /// Only the ZZ strength is wrong: `J_ZZ = (1+Δ) J_P`.
    AbstractDelta { delta: f64 },
    /// The actual Hamiltonian, reached through an isolation scheme.
    FullHamiltonian { coeffs: PauliCoeffs, isolation: Isolation },
}

/// Predicted coupling `J_P` plus the model of what the hardware really does.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub j_predicted: f64,
    pub model: CouplingModel,
}

impl Calibration {
    pub fn new(j_predicted: f64, model: CouplingModel) -> Result<Self> {
        let cal = Calibration { j_predicted, model };
        cal.validate()?;
        Ok(cal)
    }

    pub fn abstract_delta(j_predicted: f64, delta: f64) -> Result<Self> {
        Self::new(j_predicted, CouplingModel::AbstractDelta { delta })
    }

    pub fn full(j_predicted: f64, coeffs: PauliCoeffs, isolation: Isolation) -> Result<Self> {
        Self::new(j_predicted, CouplingModel::FullHamiltonian { coeffs, isolation })
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.j_predicted > 0.0 && self.j_predicted.is_finite()) {
            return Err(Error::Domain(format!("predicted coupling must be positive, got {}", self.j_predicted)));
        }
        match self.model {
            CouplingModel::AbstractDelta { delta } if !delta.is_finite() => Err(Error::NonFinite("delta")),
            CouplingModel::FullHamiltonian { coeffs, isolation } => {
                coeffs.validate()?;
                if isolation == (Isolation::TermIsolation { k: 0 }) {
                    return Err(Error::Domain("isolation repetitions must be at least 1".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// The Hamiltonian evolutions actually experience.
    pub fn ambient_hamiltonian(&self) -> Matrix4 {
        match self.model {
            CouplingModel::AbstractDelta { delta } => {
                pauli_pair(Pauli::Z, Pauli::Z).scale_real((1.0 + delta) * self.j_predicted)
            }
            CouplingModel::FullHamiltonian { coeffs, .. } => coeffs.hamiltonian(),
        }
    }

    /// Compiles `seq` against [`Self::ambient_hamiltonian`].
    pub fn compile(&self, seq: &PulseSequence) -> Result<Unitary4> {
        seq.compile(&self.ambient_hamiltonian())
    }
}

/// The named entangler constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    Uncorrected,
    Comp1,
    Comp2,
    Comp3,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::Uncorrected, Strategy::Comp1, Strategy::Comp2, Strategy::Comp3];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Uncorrected => "uncorrected",
            Strategy::Comp1 => "comp1",
            Strategy::Comp2 => "comp2",
            Strategy::Comp3 => "comp3",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL.into_iter().find(|st| st.name() == s).ok_or_else(|| {
            let names: Vec<_> = Strategy::ALL.iter().map(|s| s.name()).collect();
            Error::Domain(format!("unknown strategy {s:?}; valid names: {}", names.join(", ")))
        })
    }
}

/// `exp(iθ/2 Z⊗Z)`, the ideal `θ_0`.
pub fn target_zz(theta: f64) -> Unitary4 {
    expm_i(&pauli_pair(Pauli::Z, Pauli::Z), theta / 2.0).expect("Z⊗Z is Hermitian")
}

fn pi_pulse(q: Qubit, axis: Axis) -> Pulse {
    Pulse::pi(q, axis)
}

/// `V_t = Xπ¹Xπ² e^{iHt/2} Xπ¹Xπ² e^{iHt/2}`.
pub fn isolate_v(t: f64) -> PulseSequence {
    let half = Pulse::evolve(t / 2.0);
    [
        pi_pulse(Qubit::One, Axis::X),
        pi_pulse(Qubit::Two, Axis::X),
        half,
        pi_pulse(Qubit::One, Axis::X),
        pi_pulse(Qubit::Two, Axis::X),
        half,
    ]
    .into_iter()
    .collect()
}

fn isolate_q_once(t: f64) -> PulseSequence {
    let v = isolate_v(t / 4.0);
    let z12 = |s: PulseSequence| s.then_pulse(pi_pulse(Qubit::One, Axis::Z)).then_pulse(pi_pulse(Qubit::Two, Axis::Z));
    let z1 = |s: PulseSequence| s.then_pulse(pi_pulse(Qubit::One, Axis::Z));
    let s = z12(PulseSequence::new()).then(&v);
    let s = z1(s).then(&v);
    let s = z12(s).then(&v);
    z1(s).then(&v)
}

/// `Q_k(t) = Q(t/k)^k`, approximating `exp(i J_ZZ t Z⊗Z)` for any ambient
/// two-qubit Hamiltonian.
pub fn isolate_q(t: f64, k: u32) -> Result<PulseSequence> {
    if k == 0 {
        return Err(Error::Domain("isolation repetitions must be at least 1".into()));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("isolation time must be non-negative, got {t}")));
    }
    Ok(isolate_q_once(t / k as f64).repeat(k as usize))
}

/// `Zπ¹ e^{iHt} Zπ¹ e^{iHt}`; for `H = J(XX+YY+ZZ)` this is exactly
/// `exp(2iJt Z⊗Z)` up to global phase.
pub fn isolate_heisenberg(t: f64) -> PulseSequence {
    [pi_pulse(Qubit::One, Axis::Z), Pulse::evolve(t), pi_pulse(Qubit::One, Axis::Z), Pulse::evolve(t)]
        .into_iter()
        .collect()
}

/// Realizes `θ_0` under `cal`. Negative angles are mirrored by conjugating
/// with `Xπ¹`, which flips the sign of `Z⊗Z`.
pub fn zz_primitive(theta: f64, cal: &Calibration) -> Result<PulseSequence> {
    cal.validate()?;
    if !theta.is_finite() {
        return Err(Error::NonFinite("rotation angle"));
    }
    if theta < 0.0 {
        let flip = pi_pulse(Qubit::One, Axis::X);
        let inner = zz_primitive(-theta, cal)?;
        return Ok(PulseSequence::new().then_pulse(flip).then(&inner).then_pulse(flip));
    }
    let jp = cal.j_predicted;
    match cal.model {
        CouplingModel::AbstractDelta { .. } => {
            Ok(PulseSequence::new().then_pulse(Pulse::evolve(theta / (2.0 * jp))).as_single_gate())
        }
        CouplingModel::FullHamiltonian { isolation, .. } => {
            let t = theta / (2.0 * jp * isolation.gain());
            match isolation {
                Isolation::TermIsolation { k } => Ok(isolate_q(t, k)?.as_single_gate()),
                Isolation::HeisenbergShortcut => Ok(isolate_heisenberg(t)),
            }
        }
    }
}

/// Wraps `inner` as `R_y^(2)(φ) · inner · R_y^(2)(−φ)`; no-op for φ = 0.
fn phase_shift(inner: &PulseSequence, phi: f64) -> PulseSequence {
    if phi == 0.0 {
        return inner.clone();
    }
    PulseSequence::new().then_pulse(Pulse::rot(Qubit::Two, Axis::Y, phi)).then(inner).then_pulse(Pulse::rot(
        Qubit::Two,
        Axis::Y,
        -phi,
    ))
}

/// `θ_φ`, built from the (possibly imperfect) ZZ primitive.
pub fn theta_primitive(theta: f64, phi: f64, cal: &Calibration) -> Result<PulseSequence> {
    if !phi.is_finite() {
        return Err(Error::NonFinite("phase"));
    }
    Ok(phase_shift(&zz_primitive(theta, cal)?, phi))
}

/// `φ = arccos(−θ / 4π)`, the phase that cancels first- and second-order
/// strength errors.
pub fn bb1_phi(theta: f64) -> Result<f64> {
    if !theta.is_finite() || theta.abs() > 4.0 * PI {
        return Err(Error::Domain(format!("BB1 phase needs |theta| <= 4*pi, got {theta}")));
    }
    Ok((-theta / (4.0 * PI)).acos())
}

/// Symmetrized BB1: `(θ/2)_0 π_φ 2π_{3φ} π_φ (θ/2)_0`.
pub fn comp1(theta: f64, cal: &Calibration) -> Result<PulseSequence> {
    let phi = bb1_phi(theta)?;
    let half = theta_primitive(theta / 2.0, 0.0, cal)?;
    Ok(half
        .clone()
        .then(&theta_primitive(PI, phi, cal)?)
        .then(&theta_primitive(2.0 * PI, 3.0 * phi, cal)?)
        .then(&theta_primitive(PI, phi, cal)?)
        .then(&half))
}

/// Unsymmetrized BB1 `θ_0 π_φ 2π_{3φ} π_φ`, the form counted in the
/// electron-spin timing estimate.
pub fn bb1_jones(theta: f64, cal: &Calibration) -> Result<PulseSequence> {
    let phi = bb1_phi(theta)?;
    Ok(theta_primitive(theta, 0.0, cal)?
        .then(&theta_primitive(PI, phi, cal)?)
        .then(&theta_primitive(2.0 * PI, 3.0 * phi, cal)?)
        .then(&theta_primitive(PI, phi, cal)?))
}

/// The refocused BB1 skeleton shared by [`comp2`] and [`comp3`]:
///
/// `(θ/2)_0 π_φ π_{3φ} Zπ² π_{−3φ} π_{−φ} (θ/2)_0 Zπ²`
///
/// Conjugation by `Zπ²` maps `α_φ` to `α_{−φ}`, so at the nominal point this
/// equals `(θ/2)_0 π_φ 2π_{3φ} π_φ (θ/2)_0` with one extra refocusing.
fn refocused_bb1<F>(theta: f64, primitive: F) -> Result<PulseSequence>
where
    F: Fn(f64, f64) -> Result<PulseSequence>,
{
    let phi = bb1_phi(theta)?;
    let z2 = pi_pulse(Qubit::Two, Axis::Z);
    let half = primitive(theta / 2.0, 0.0)?;
    Ok(half
        .clone()
        .then(&primitive(PI, phi)?)
        .then(&primitive(PI, 3.0 * phi)?)
        .then_pulse(z2)
        .then(&primitive(PI, -3.0 * phi)?)
        .then(&primitive(PI, -phi)?)
        .then(&half)
        .then_pulse(z2))
}

/// BB1 with an additional `Zπ²` refocusing pair.
pub fn comp2(theta: f64, cal: &Calibration) -> Result<PulseSequence> {
    refocused_bb1(theta, |a, phi| theta_primitive(a, phi, cal))
}

/// `(Xπ²Xπ² Zπ² (θ/16)^[2] Zπ² (θ/16)^[2])^8`: eight refocused pairs of
/// [`comp2`] pulses of one sixteenth the angle.
pub fn comp2_refocused_train(theta: f64, cal: &Calibration) -> Result<PulseSequence> {
    let piece = comp2(theta / 16.0, cal)?;
    let x2 = pi_pulse(Qubit::Two, Axis::X);
    let z2 = pi_pulse(Qubit::Two, Axis::Z);
    let block =
        PulseSequence::new().then_pulse(x2).then_pulse(x2).then_pulse(z2).then(&piece).then_pulse(z2).then(&piece);
    Ok(block.repeat(8))
}

/// Higher-order pulse: the [`comp2`] skeleton with every primitive replaced
/// by its [`comp2_refocused_train`] of the same nominal angle.
pub fn comp3(theta: f64, cal: &Calibration) -> Result<PulseSequence> {
    refocused_bb1(theta, |a, phi| Ok(phase_shift(&comp2_refocused_train(a, cal)?, phi)))
}

/// The entangler a strategy uses for `θ_0`.
pub fn entangler(strategy: Strategy, theta: f64, cal: &Calibration) -> Result<PulseSequence> {
    match strategy {
        Strategy::Uncorrected => theta_primitive(theta, 0.0, cal),
        Strategy::Comp1 => comp1(theta, cal),
        Strategy::Comp2 => comp2(theta, cal),
        Strategy::Comp3 => comp3(theta, cal),
    }
}

/// `H² R_z¹(π/2) R_z²(π/2) · entangler · H²`. With an exact `(π/2)_0`
/// entangler this is CNOT (control qubit 1) up to global phase.
pub fn cnot_assembly(entangler: &PulseSequence) -> PulseSequence {
    PulseSequence::new()
        .then_pulse(Pulse::Hadamard { qubit: Qubit::Two })
        .then_pulse(Pulse::rot(Qubit::One, Axis::Z, PI / 2.0))
        .then_pulse(Pulse::rot(Qubit::Two, Axis::Z, PI / 2.0))
        .then(entangler)
        .then_pulse(Pulse::Hadamard { qubit: Qubit::Two })
}

/// Square-root-of-swap CNOT: the dressing of [`cnot_assembly`] around two
/// exchange pulses `exp(iπ/8 (XX+YY+ZZ))` under `J_P`, refocused by `Zπ¹`.
pub fn sqrt_swap_cnot(j_predicted: f64) -> Result<PulseSequence> {
    if !(j_predicted > 0.0 && j_predicted.is_finite()) {
        return Err(Error::Domain(format!("predicted coupling must be positive, got {j_predicted}")));
    }
    Ok(cnot_assembly(&isolate_heisenberg(PI / (8.0 * j_predicted))))
}
