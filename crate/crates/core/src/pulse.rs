// Copyright 2026 Robust CNOT Contributors
// SPDX-License-Identifier: Apache-2.0

//! Pulse-sequence intermediate representation.
//!
//! A [`PulseSequence`] lists pulses in written product order: the first
//! pulse is the leftmost matrix factor, so it acts on a state last.
//!
//! Single-qubit rotations use `R_a(θ) = exp(−iθ/2 σ_a)`. Free evolution
//! `Evolve { time }` contributes `exp(+i H t)` for the ambient Hamiltonian
//! `H` supplied at compile time.
//!
//! # Text format
//!
//! One pulse per line; blank lines and lines starting with `#` are ignored.
//!
//! ```text
//! ROT q=<1|2> axis=<X|Y|Z> angle=<radians>
//! HAD q=<1|2>
//! EVOLVE t=<time> [gate=<tag>]
//! ```
//!
//! Numbers are written with Rust's shortest round-trip float formatting, so
//! printing and parsing a sequence is lossless.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{HermitianEigen, Matrix4, Unitary4};
use crate::pauli::{on_qubit, Matrix2, Pauli};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Qubit {
    One,
    Two,
}

impl Qubit {
    pub fn number(self) -> u8 {
        match self {
            Qubit::One => 1,
            Qubit::Two => 2,
        }
    }

    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Qubit::One),
            2 => Ok(Qubit::Two),
            _ => Err(Error::Domain(format!("qubit must be 1 or 2, got {n}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    fn pauli(self) -> Pauli {
        match self {
            Axis::X => Pauli::X,
            Axis::Y => Pauli::Y,
            Axis::Z => Pauli::Z,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pauli())
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" => Ok(Axis::X),
            "Y" => Ok(Axis::Y),
            "Z" => Ok(Axis::Z),
            _ => Err(Error::Domain(format!("unknown axis {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Pulse {
    Rotation {
        qubit: Qubit,
        axis: Axis,
        angle: f64,
    },
    Hadamard {
        qubit: Qubit,
    },
    /// Free evolution under the ambient Hamiltonian. Evolutions sharing a
    /// `gate` tag realize one logical two-qubit gate.
    Evolve {
        time: f64,
        gate: Option<u32>,
    },
}

impl Pulse {
    pub fn rot(qubit: Qubit, axis: Axis, angle: f64) -> Self {
        Pulse::Rotation { qubit, axis, angle }
    }

    /// π rotation, the refocusing pulse.
    pub fn pi(qubit: Qubit, axis: Axis) -> Self {
        Pulse::rot(qubit, axis, PI)
    }

    pub fn evolve(time: f64) -> Self {
        Pulse::Evolve { time, gate: None }
    }

    pub fn is_single_qubit(&self) -> bool {
        !matches!(self, Pulse::Evolve { .. })
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Pulse::Rotation { angle, .. } if !angle.is_finite() => Err(Error::NonFinite("rotation angle")),
            Pulse::Evolve { time, .. } if !time.is_finite() => Err(Error::NonFinite("evolution time")),
            Pulse::Evolve { time, .. } if time < 0.0 => {
                Err(Error::Domain(format!("evolution time must be non-negative, got {time}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Pulse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Pulse::Rotation { qubit, axis, angle } => {
                write!(f, "ROT q={} axis={} angle={:?}", qubit.number(), axis, angle)
            }
            Pulse::Hadamard { qubit } => write!(f, "HAD q={}", qubit.number()),
            Pulse::Evolve { time, gate: None } => write!(f, "EVOLVE t={time:?}"),
            Pulse::Evolve { time, gate: Some(g) } => write!(f, "EVOLVE t={time:?} gate={g}"),
        }
    }
}

/// `exp(−iθ/2 σ_axis)` on one qubit, identity on the other.
pub fn rotation_unitary(qubit: Qubit, axis: Axis, angle: f64) -> Unitary4 {
    let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
    let p = axis.pauli().matrix();
    let i = Pauli::I.matrix();
    let mut m: Matrix2 = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for k in 0..2 {
            m[r][k] = i[r][k] * c - Complex64::new(0.0, s) * p[r][k];
        }
    }
    Unitary4::new_unchecked(on_qubit(qubit.number(), &m))
}

pub fn hadamard_unitary(qubit: Qubit) -> Unitary4 {
    let h = FRAC_1_SQRT_2;
    let m: Matrix2 =
        [[Complex64::new(h, 0.0), Complex64::new(h, 0.0)], [Complex64::new(h, 0.0), Complex64::new(-h, 0.0)]];
    Unitary4::new_unchecked(on_qubit(qubit.number(), &m))
}

/// Durations for the duration model. All in nanoseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingModel {
    pub single_qubit_ns_per_pi: f64,
    pub hadamard_ns: f64,
    pub two_qubit_ns_per_pi_over_8: f64,
}

impl Default for TimingModel {
    fn default() -> Self {
        TimingModel { single_qubit_ns_per_pi: 40.0, hadamard_ns: 40.0, two_qubit_ns_per_pi_over_8: 1.0 }
    }
}

impl TimingModel {
    pub fn new(single_qubit_ns_per_pi: f64, hadamard_ns: f64, two_qubit_ns_per_pi_over_8: f64) -> Result<Self> {
        let tm = TimingModel { single_qubit_ns_per_pi, hadamard_ns, two_qubit_ns_per_pi_over_8 };
        for (name, v) in [
            ("single-qubit pi time", single_qubit_ns_per_pi),
            ("hadamard time", hadamard_ns),
            ("two-qubit pi/8 time", two_qubit_ns_per_pi_over_8),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(tm)
    }
}

/// Single- and two-qubit gate tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GateCounts {
    pub single_qubit: usize,
    pub two_qubit: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PulseSequence {
    pulses: Vec<Pulse>,
}

impl PulseSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pulses(pulses: Vec<Pulse>) -> Result<Self> {
        for p in &pulses {
            p.validate()?;
        }
        Ok(PulseSequence { pulses })
    }

    pub fn pulses(&self) -> &[Pulse] {
        &self.pulses
    }

    pub fn len(&self) -> usize {
        self.pulses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pulses.is_empty()
    }

    pub fn push(&mut self, pulse: Pulse) -> &mut Self {
        self.pulses.push(pulse);
        self
    }

    fn next_tag(&self) -> u32 {
        self.pulses
            .iter()
            .filter_map(|p| match p {
                Pulse::Evolve { gate: Some(g), .. } => Some(g + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Appends `other`, renumbering its gate tags so they stay distinct
    /// from the tags already present.
    pub fn append(&mut self, other: &PulseSequence) -> &mut Self {
        let offset = self.next_tag();
        self.pulses.extend(other.pulses.iter().map(|p| match *p {
            Pulse::Evolve { time, gate: Some(g) } => Pulse::Evolve { time, gate: Some(g + offset) },
            p => p,
        }));
        self
    }

    pub fn then(mut self, other: &PulseSequence) -> Self {
        self.append(other);
        self
    }

    pub fn then_pulse(mut self, pulse: Pulse) -> Self {
        self.pulses.push(pulse);
        self
    }

    /// `n` back-to-back copies, each with its own gate tags.
    pub fn repeat(&self, n: usize) -> Self {
        let mut out = PulseSequence::new();
        for _ in 0..n {
            out.append(self);
        }
        out
    }

    /// Marks every evolution as part of a single two-qubit gate.
    pub fn as_single_gate(mut self) -> Self {
        for p in &mut self.pulses {
            if let Pulse::Evolve { gate, .. } = p {
                *gate = Some(0);
            }
        }
        self
    }

    pub fn reversed(&self) -> Self {
        let mut pulses = self.pulses.clone();
        pulses.reverse();
        PulseSequence { pulses }
    }

    pub fn total_evolution_time(&self) -> f64 {
        self.pulses
            .iter()
            .map(|p| match p {
                Pulse::Evolve { time, .. } => *time,
                _ => 0.0,
            })
            .sum()
    }

    /// Multiplies out the pulse unitaries in written order against the
    /// ambient Hamiltonian `h`.
    pub fn compile(&self, h: &Matrix4) -> Result<Unitary4> {
        if self.pulses.is_empty() {
            return Err(Error::EmptySequence);
        }
        let eig = HermitianEigen::new(h)?;
        let mut cache: Vec<(u64, Matrix4)> = Vec::new();
        let mut acc = Matrix4::identity();
        for pulse in &self.pulses {
            pulse.validate()?;
            let factor = match *pulse {
                Pulse::Rotation { qubit, axis, angle } => rotation_unitary(qubit, axis, angle).into_matrix(),
                Pulse::Hadamard { qubit } => hadamard_unitary(qubit).into_matrix(),
                Pulse::Evolve { time, .. } => {
                    let key = time.to_bits();
                    match cache.iter().find(|(k, _)| *k == key) {
                        Some((_, m)) => *m,
                        None => {
                            let m = eig.exp_i(time);
                            if cache.len() < 16 {
                                cache.push((key, m));
                            }
                            m
                        }
                    }
                }
            };
            acc = acc * factor;
        }
        Unitary4::new(acc)
    }

    /// Wall-clock duration in ns. `j_predicted` converts evolution time to
    /// the two-qubit rotation angle `J_P · t` that the timing model prices.
    pub fn duration(&self, tm: &TimingModel, j_predicted: f64) -> f64 {
        self.pulses
            .iter()
            .map(|p| match *p {
                Pulse::Rotation { angle, .. } => angle.abs() / PI * tm.single_qubit_ns_per_pi,
                Pulse::Hadamard { .. } => tm.hadamard_ns,
                Pulse::Evolve { time, .. } => (j_predicted * time).abs() / (PI / 8.0) * tm.two_qubit_ns_per_pi_over_8,
            })
            .sum()
    }

    /// Rotations and Hadamards count as single-qubit gates. Evolutions that
    /// share a gate tag count once; untagged evolutions count individually.
    pub fn gate_counts(&self) -> GateCounts {
        let mut tags = BTreeSet::new();
        let mut counts = GateCounts::default();
        for p in &self.pulses {
            match p {
                Pulse::Evolve { gate: Some(g), .. } => {
                    tags.insert(*g);
                }
                Pulse::Evolve { gate: None, .. } => counts.two_qubit += 1,
                _ => counts.single_qubit += 1,
            }
        }
        counts.two_qubit += tags.len();
        counts
    }

    /// Fuses list-adjacent rotations about the same axis of the same qubit,
    /// wraps angles into (−π, π] and drops rotations that vanish. The result
    /// compiles to the same gate up to global phase.
    pub fn merge_rotations(&self) -> Self {
        let mut out: Vec<Pulse> = Vec::with_capacity(self.pulses.len());
        for &p in &self.pulses {
            if let Pulse::Rotation { qubit, axis, angle } = p {
                if let Some(Pulse::Rotation { qubit: q0, axis: a0, angle: prev }) = out.last_mut() {
                    if *q0 == qubit && *a0 == axis {
                        *prev += angle;
                        continue;
                    }
                }
            }
            out.push(p);
        }
        out.retain_mut(|p| match p {
            Pulse::Rotation { angle, .. } => {
                *angle = wrap_angle(*angle);
                angle.abs() > 1e-14
            }
            _ => true,
        });
        PulseSequence { pulses: out }
    }

    /// Parses the text format described in the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pulses = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let pulse = parse_line(line).map_err(|message| Error::Parse { line: n + 1, message })?;
            pulse.validate().map_err(|e| Error::Parse { line: n + 1, message: e.to_string() })?;
            pulses.push(pulse);
        }
        Ok(PulseSequence { pulses })
    }
}

impl fmt::Display for PulseSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.pulses {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for PulseSequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PulseSequence::parse(s)
    }
}

impl FromIterator<Pulse> for PulseSequence {
    fn from_iter<T: IntoIterator<Item = Pulse>>(iter: T) -> Self {
        PulseSequence { pulses: iter.into_iter().collect() }
    }
}

/// Wraps into (−π, π].
fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut w = a.rem_euclid(two_pi);
    if w > PI {
        w -= two_pi;
    }
    w
}

fn parse_line(line: &str) -> std::result::Result<Pulse, String> {
    let mut tokens = line.split_whitespace();
    let keyword = tokens.next().ok_or("empty line")?;
    let mut fields: Vec<(&str, &str)> = Vec::new();
    for tok in tokens {
        let (k, v) = tok.split_once('=').ok_or_else(|| format!("expected key=value, got {tok:?}"))?;
        if fields.iter().any(|(seen, _)| *seen == k) {
            return Err(format!("duplicate field {k:?}"));
        }
        fields.push((k, v));
    }
    let take = |key: &str| -> std::result::Result<&str, String> {
        fields.iter().find(|(k, _)| *k == key).map(|(_, v)| *v).ok_or_else(|| format!("missing field {key:?}"))
    };
    let allow = |allowed: &[&str]| -> std::result::Result<(), String> {
        match fields.iter().find(|(k, _)| !allowed.contains(k)) {
            Some((k, _)) => Err(format!("unexpected field {k:?} for {keyword}")),
            None => Ok(()),
        }
    };
    let qubit = |s: &str| -> std::result::Result<Qubit, String> {
        let n: u8 = s.parse().map_err(|_| format!("bad qubit {s:?}"))?;
        Qubit::from_number(n).map_err(|e| e.to_string())
    };
    let number =
        |s: &str| -> std::result::Result<f64, String> { s.parse::<f64>().map_err(|_| format!("bad number {s:?}")) };

    match keyword {
        "ROT" => {
            allow(&["q", "axis", "angle"])?;
            Ok(Pulse::Rotation {
                qubit: qubit(take("q")?)?,
                axis: take("axis")?.parse().map_err(|e: Error| e.to_string())?,
                angle: number(take("angle")?)?,
            })
        }
        "HAD" => {
            allow(&["q"])?;
            Ok(Pulse::Hadamard { qubit: qubit(take("q")?)? })
        }
        "EVOLVE" => {
            allow(&["t", "gate"])?;
            let gate = match fields.iter().find(|(k, _)| *k == "gate") {
                Some((_, v)) => Some(v.parse::<u32>().map_err(|_| format!("bad gate tag {v:?}"))?),
                None => None,
            };
            Ok(Pulse::Evolve { time: number(take("t")?)?, gate })
        }
        other => Err(format!("unknown pulse {other:?}")),
    }
}
