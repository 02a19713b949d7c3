// Copyright 2026 Robust CNOT Contributors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};

use robust_cnot::experiments::{
    linspace_step, monte_carlo_sequence, run_delta_sweep, run_isolation_convergence, run_monte_carlo,
    run_timing_report, DeltaSweepConfig, FidelityRecord, MonteCarloConfig,
};
use robust_cnot::gates::{cnot_assembly, entangler, isolate_heisenberg, target_zz};
use robust_cnot::hamiltonian::{heisenberg, mix_seed, random_hamiltonian};
use robust_cnot::{
    fidelity, infidelity, phase_distance, trace_overlap, Calibration, GateCounts, Pauli, PauliCoeffs,
    RandomEnsembleSpec, Strategy, TimingModel, Unitary4,
};

fn cnot_under_delta(s: Strategy, delta: f64) -> Unitary4 {
    let cal = Calibration::abstract_delta(1.0, delta).unwrap();
    cal.compile(&cnot_assembly(&entangler(s, PI / 2.0, &cal).unwrap())).unwrap()
}

fn cnot_fidelity(s: Strategy, delta: f64) -> f64 {
    fidelity(&cnot_under_delta(s, delta), &Unitary4::cnot())
}

fn sweep(strategies: &[Strategy], grid: Vec<f64>) -> Vec<FidelityRecord> {
    run_delta_sweep(&DeltaSweepConfig { strategies: strategies.to_vec(), delta_grid: grid, ..Default::default() })
        .unwrap()
}

fn c1_cnot_identity() -> (bool, String) {
    let worst =
        Strategy::ALL.iter().map(|&s| phase_distance(&cnot_under_delta(s, 0.0), &Unitary4::cnot())).fold(0.0, f64::max);
    (worst <= 1e-8, format!("max phase distance {worst:.2e} (tol 1e-8)"))
}

fn c2_closed_form() -> (bool, String) {
    let recs = sweep(&[Strategy::Uncorrected], linspace_step(-1.0, 1.0, 0.01).unwrap());
    let worst = recs.iter().map(|r| (r.mean_f - (PI * r.x / 4.0).cos().sqrt()).abs()).fold(0.0, f64::max);
    let fails_by_3pct = cnot_fidelity(Strategy::Uncorrected, 0.03) < 0.9999;
    (
        worst <= 1e-10 && fails_by_3pct,
        format!("max |F - sqrt(cos(pi*d/4))| = {worst:.2e} (tol 1e-10); F(0.03) < 0.9999: {fails_by_3pct}"),
    )
}

fn c3_bb1_tolerance() -> (bool, String) {
    let mut ok = true;
    let mut detail = Vec::new();
    for s in [Strategy::Comp1, Strategy::Comp2] {
        let (f20, f25) = (cnot_fidelity(s, 0.20), cnot_fidelity(s, 0.25));
        ok &= f20 >= 0.9999 && f25 < 0.9999;
        detail.push(format!("{s}: F(0.20)={f20:.8} F(0.25)={f25:.8}"));
    }
    (ok, format!("{} (need >= / < 0.9999)", detail.join("; ")))
}

fn c4_comp3_tolerance() -> (bool, String) {
    let grid: Vec<f64> = linspace_step(-0.9, 0.9, 0.01).unwrap();
    let recs = sweep(&[Strategy::Comp1, Strategy::Comp3], grid);
    let (c1, c3) = recs.split_at(recs.len() / 2);
    let plateau = c3.iter().filter(|r| r.x.abs() <= 0.38 + 1e-12).map(|r| r.mean_f).fold(1.0, f64::min);
    let worst_gap = c1.iter().zip(c3).map(|(a, b)| a.mean_f - b.mean_f).fold(f64::NEG_INFINITY, f64::max);
    (
        plateau >= 0.9999 && worst_gap <= 1e-9,
        format!("min comp3 F on |d|<=0.38 = {plateau:.8}; max(comp1 - comp3) on |d|<=0.9 = {worst_gap:.2e}"),
    )
}

/// Least-squares slope of log(infidelity) against log(Δ).
fn loglog_slope(s: Strategy) -> f64 {
    let pts: Vec<(f64, f64)> = (0..=10)
        .map(|i| {
            let d = 10f64.powf(-3.0 + i as f64 / 10.0);
            (d.ln(), infidelity(&cnot_under_delta(s, d), &Unitary4::cnot()).ln())
        })
        .collect();
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn c5_error_order() -> (bool, String) {
    let (u, a, b) = (loglog_slope(Strategy::Uncorrected), loglog_slope(Strategy::Comp1), loglog_slope(Strategy::Comp2));
    (
        (u - 2.0).abs() <= 0.1 && a >= 5.5 && b >= 5.5,
        format!("slopes: uncorrected {u:.3} (2.0±0.1), comp1 {a:.3}, comp2 {b:.3} (>= 5.5)"),
    )
}

fn unit(seed: u64, i: u64) -> f64 {
    (mix_seed(seed, &[i]) >> 11) as f64 / (1u64 << 53) as f64
}

fn c6_shortcut_exact() -> (bool, String) {
    let worst = (0..10)
        .map(|i| {
            let j = 0.1 + 2.9 * unit(6, 2 * i);
            let t = 2.0 * unit(6, 2 * i + 1);
            let u = isolate_heisenberg(t).compile(&heisenberg(j).hamiltonian()).unwrap();
            phase_distance(&u, &target_zz(4.0 * j * t))
        })
        .fold(0.0, f64::max);
    (worst <= 1e-10, format!("max phase distance over 10 (J, t) pairs {worst:.2e} (tol 1e-10)"))
}

fn c7_convergence() -> (bool, String) {
    let e = run_isolation_convergence(&[10, 20, 40], &heisenberg(1.0), 0.5).unwrap();
    let (e10, e20, e40) = (e[0].1, e[1].1, e[2].1);
    let zz = run_isolation_convergence(&[1], &PauliCoeffs::single(Pauli::Z, Pauli::Z, 1.0), 0.5).unwrap()[0].1;
    (
        e40 < e20 && e20 < e10 && e40 <= 1e-2 && zz <= 1e-10,
        format!("heisenberg: e10={e10:.3e} e20={e20:.3e} e40={e40:.3e} (need strictly decreasing, e40 <= 1e-2); pure ZZ k=1: {zz:.2e}"),
    )
}

fn c8_monte_carlo() -> (bool, String) {
    let cfg = MonteCarloConfig { master_seed: 7, ..Default::default() };
    let recs = run_monte_carlo(&cfg).unwrap();
    let at = |s: Strategy, x: f64| *recs.iter().find(|r| r.strategy == s && (r.x - x).abs() < 1e-9).unwrap();
    let unc = at(Strategy::Uncorrected, 1.0);
    let comp = at(Strategy::Comp2, 1.0);
    let dominated =
        cfg.r_over_j_grid.iter().all(|&x| at(Strategy::Comp2, x).min_f + 1e-8 >= at(Strategy::Uncorrected, x).min_f);
    let ok = (0.45..=0.55).contains(&unc.mean_f) && (0.92..=0.98).contains(&comp.mean_f) && dominated;
    (
        ok,
        format!(
            "R/J=1: uncorrected mean {:.4} (need [0.45, 0.55]), composite mean {:.4} (need [0.92, 0.98]); \
             composite min >= uncorrected min at every R/J: {dominated}",
            unc.mean_f, comp.mean_f
        ),
    )
}

/// Mean of `|Tr(U†V)|/4` (the squared fidelity) over the same R/J = 1 draws.
fn mean_trace_overlap_at_rj1(seed: u64) -> (f64, f64) {
    let grid_index = 10;
    let seqs: Vec<_> =
        [Strategy::Uncorrected, Strategy::Comp2].iter().map(|&s| monte_carlo_sequence(s, 1.0, 20).unwrap()).collect();
    let mut sums = [0.0; 2];
    for i in 0..1000u64 {
        let spec = RandomEnsembleSpec::new(1.0, 1.0, mix_seed(seed, &[grid_index, i])).unwrap();
        let h = random_hamiltonian(&spec).hamiltonian();
        for (sum, seq) in sums.iter_mut().zip(&seqs) {
            *sum += trace_overlap(&seq.compile(&h).unwrap(), &Unitary4::cnot());
        }
    }
    (sums[0] / 1000.0, sums[1] / 1000.0)
}

fn c9_timing() -> (bool, String) {
    let r = run_timing_report(&TimingModel::default()).unwrap();
    let ratio = r.comp_ns / r.naive_ns;
    let counts_ok = r.naive_counts == GateCounts { single_qubit: 6, two_qubit: 2 }
        && r.comp_counts == GateCounts { single_qubit: 16, two_qubit: 8 };
    let budget_ok = r.comp_ns > 600.0 || r.ops_in_60ms >= 100_000;
    (
        counts_ok && (2.5..=4.0).contains(&ratio) && budget_ok,
        format!(
            "counts {:?}/{:?}; {:.1} ns vs {:.1} ns, ratio {ratio:.3} (need [2.5, 4.0]); ops in 60 ms {}",
            (r.naive_counts.single_qubit, r.naive_counts.two_qubit),
            (r.comp_counts.single_qubit, r.comp_counts.two_qubit),
            r.naive_ns,
            r.comp_ns,
            r.ops_in_60ms
        ),
    )
}

fn random_output(threads: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_robust-cnot"))
        .args(["random", "--samples", "200", "--seed", "7", "--k", "20"])
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    out.stdout
}

fn c10_determinism() -> (bool, String) {
    let a = random_output("4");
    let b = random_output("4");
    let c = random_output("1");
    (
        a == b && a == c && !a.is_empty(),
        format!("repeat run identical: {}; 1 vs 4 threads identical: {}", a == b, a == c),
    )
}

type Check = fn() -> (bool, String);

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("CNOT identity at zero error", c1_cnot_identity),
        ("uncorrected closed form", c2_closed_form),
        ("comp1/comp2 tolerance band", c3_bb1_tolerance),
        ("comp3 tolerance band", c4_comp3_tolerance),
        ("error-order slopes", c5_error_order),
        ("Heisenberg shortcut exactness", c6_shortcut_exact),
        ("isolation convergence", c7_convergence),
        ("Monte Carlo headline numbers", c8_monte_carlo),
        ("timing report", c9_timing),
        ("determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let (ok, detail) = check();
        failed += usize::from(!ok);
        println!("criterion {:>2}: {} {name}: {detail}", n + 1, if ok { "PASS" } else { "FAIL" });
    }
    let (unc, comp) = mean_trace_overlap_at_rj1(7);
    println!("info: R/J=1 mean |Tr|/4 (squared fidelity): uncorrected {unc:.4}, composite {comp:.4}");
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
