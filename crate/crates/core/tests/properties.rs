// Copyright 2026 Robust CNOT Contributors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use proptest::prelude::*;
use robust_cnot::gates::{cnot_assembly, comp2, isolate_heisenberg, target_zz};
use robust_cnot::hamiltonian::heisenberg;
use robust_cnot::linalg::expm_i;
use robust_cnot::{fidelity, phase_distance, Axis, Calibration, Matrix4, PauliCoeffs, Pulse, PulseSequence, Qubit};

fn coeffs_strategy() -> impl Strategy<Value = PauliCoeffs> {
    prop::array::uniform4(prop::array::uniform4(-2.0f64..2.0)).prop_map(|j| PauliCoeffs { j })
}

fn pulse_strategy() -> impl Strategy<Value = Pulse> {
    let qubit = prop_oneof![Just(Qubit::One), Just(Qubit::Two)];
    let axis = prop_oneof![Just(Axis::X), Just(Axis::Y), Just(Axis::Z)];
    prop_oneof![
        (qubit.clone(), axis, -7.0f64..7.0).prop_map(|(q, a, t)| Pulse::rot(q, a, t)),
        qubit.prop_map(|q| Pulse::Hadamard { qubit: q }),
        (0.0f64..3.0, prop::option::of(0u32..5)).prop_map(|(time, gate)| Pulse::Evolve { time, gate }),
    ]
}

fn sequence_strategy() -> impl Strategy<Value = PulseSequence> {
    prop::collection::vec(pulse_strategy(), 1..24).prop_map(PulseSequence::from_iter)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evolution_is_unitary(c in coeffs_strategy(), t in -3.0f64..3.0) {
        let u = expm_i(&c.hamiltonian(), t).unwrap();
        prop_assert!(u.matrix().unitary_deviation() < 1e-10);
    }

    #[test]
    fn fidelity_symmetric_and_phase_blind(a in coeffs_strategy(), b in coeffs_strategy(), phi in -PI..PI) {
        let ua = expm_i(&a.hamiltonian(), 0.7).unwrap();
        let ub = expm_i(&b.hamiltonian(), 0.7).unwrap();
        let f = fidelity(&ua, &ub);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&f));
        prop_assert!((f - fidelity(&ub, &ua)).abs() < 1e-12);
        prop_assert!((f - fidelity(&ua.with_phase(phi), &ub)).abs() < 1e-12);
        prop_assert!(phase_distance(&ua.with_phase(phi), &ua) < 1e-9);
    }

    #[test]
    fn compile_is_a_homomorphism(a in sequence_strategy(), b in sequence_strategy(), c in coeffs_strategy()) {
        let h = c.hamiltonian();
        let joined = a.clone().then(&b).compile(&h).unwrap();
        let product = a.compile(&h).unwrap() * b.compile(&h).unwrap();
        prop_assert!(joined.matrix().max_abs_diff(product.matrix()) < 1e-10);
    }

    #[test]
    fn text_round_trip_is_lossless(s in sequence_strategy()) {
        let back: PulseSequence = s.to_string().parse().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn merging_rotations_preserves_the_gate(s in sequence_strategy(), c in coeffs_strategy()) {
        let h = c.hamiltonian();
        let merged = s.merge_rotations();
        prop_assert!(merged.len() <= s.len());
        prop_assert_eq!(merged.gate_counts().two_qubit, s.gate_counts().two_qubit);
        if !merged.is_empty() {
            prop_assert!(phase_distance(&merged.compile(&h).unwrap(), &s.compile(&h).unwrap()) < 1e-9);
        }
    }

    #[test]
    fn heisenberg_shortcut_is_exact(j in 0.05f64..3.0, t in 0.0f64..2.0) {
        let u = isolate_heisenberg(t).compile(&heisenberg(j).hamiltonian()).unwrap();
        prop_assert!(phase_distance(&u, &target_zz(4.0 * j * t)) < 1e-10);
    }

    #[test]
    fn corrected_cnot_never_worse_near_nominal(d in -0.3f64..0.3) {
        let cal = Calibration::abstract_delta(1.0, d).unwrap();
        let unc = cal.compile(&cnot_assembly(&robust_cnot::gates::theta_primitive(PI / 2.0, 0.0, &cal).unwrap())).unwrap();
        let cor = cal.compile(&cnot_assembly(&comp2(PI / 2.0, &cal).unwrap())).unwrap();
        let target = robust_cnot::Unitary4::cnot();
        prop_assert!(fidelity(&cor, &target) + 1e-9 >= fidelity(&unc, &target));
    }
}

#[test]
fn reversed_sequence_of_hermitian_pulses_is_adjoint() {
    // Hadamards and π rotations are self-inverse up to phase, so reversing a
    // sequence of them yields the inverse gate.
    let s: PulseSequence = [
        Pulse::Hadamard { qubit: Qubit::Two },
        Pulse::pi(Qubit::One, Axis::X),
        Pulse::pi(Qubit::Two, Axis::Z),
        Pulse::Hadamard { qubit: Qubit::One },
    ]
    .into_iter()
    .collect();
    let h = Matrix4::zeros();
    let u = s.compile(&h).unwrap();
    let r = s.reversed().compile(&h).unwrap();
    assert!(phase_distance(&(u * r), &robust_cnot::Unitary4::identity()) < 1e-12);
}
