// Copyright 2026 Robust CNOT Contributors
// SPDX-License-Identifier: Apache-2.0

//! Fidelity studies: miscalibration sweeps, random-Hamiltonian Monte Carlo,
//! isolation convergence and a gate timing budget.
//!
//! Monte Carlo samples are evaluated in parallel, but every sample draws from
//! its own stream `mix_seed(master, [grid_index, sample_index])` and results
//! are reduced in index order, so output is bitwise independent of the
//! thread count.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fidelity::{fidelity, phase_distance};
use crate::gates::{
    bb1_jones, cnot_assembly, entangler, isolate_q, sqrt_swap_cnot, target_zz, Calibration, CouplingModel, Isolation,
    Strategy,
};
use crate::hamiltonian::{heisenberg, mix_seed, random_hamiltonian, PauliCoeffs, RandomEnsembleSpec};
use crate::linalg::Unitary4;
use crate::pulse::{GateCounts, PulseSequence, TimingModel};

/// Inclusive arithmetic grid `start, start+step, …, stop`. Endpoints that
/// land within a millionth of a step of `stop` are snapped onto it.
pub fn linspace_step(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(Error::NonFinite("grid bounds"));
    }
    if stop < start {
        return Err(Error::Domain(format!("grid end {stop} is below start {start}")));
    }
    if start == stop {
        return Ok(vec![start]);
    }
    if step <= 0.0 {
        return Err(Error::Domain(format!("grid step must be positive, got {step}")));
    }
    let n = ((stop - start) / step + 1e-6).floor() as usize;
    if n > 10_000_000 {
        return Err(Error::Domain("grid too large".into()));
    }
    let mut grid: Vec<f64> = (0..=n).map(|i| start + i as f64 * step).collect();
    if let Some(last) = grid.last_mut() {
        if (*last - stop).abs() <= 1e-6 * step {
            *last = stop;
        }
    }
    Ok(grid)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaSweepConfig {
    pub theta: f64,
    pub delta_grid: Vec<f64>,
    pub strategies: Vec<Strategy>,
}

impl Default for DeltaSweepConfig {
    fn default() -> Self {
        DeltaSweepConfig {
            theta: PI / 2.0,
            delta_grid: linspace_step(-1.0, 1.0, 0.01).expect("static grid"),
            strategies: Strategy::ALL.to_vec(),
        }
    }
}

impl DeltaSweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.delta_grid.is_empty() {
            return Err(Error::Domain("delta grid is empty".into()));
        }
        if self.strategies.is_empty() {
            return Err(Error::Domain("no strategies selected".into()));
        }
        if !self.theta.is_finite() || self.delta_grid.iter().any(|d| !d.is_finite()) {
            return Err(Error::NonFinite("sweep parameters"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloConfig {
    pub r_over_j_grid: Vec<f64>,
    pub samples_per_point: usize,
    pub isolation_k: u32,
    pub master_seed: u64,
    /// `Uncorrected` is the square-root-of-swap CNOT; the composite
    /// strategies run through `Q_k` isolation.
    pub strategies: Vec<Strategy>,
    /// Heisenberg strength `J`; also the coupling the sequences are timed for.
    pub j_base: f64,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        MonteCarloConfig {
            r_over_j_grid: linspace_step(0.0, 1.0, 0.1).expect("static grid"),
            samples_per_point: 1000,
            isolation_k: 20,
            master_seed: 0,
            strategies: vec![Strategy::Uncorrected, Strategy::Comp2],
            j_base: 1.0,
        }
    }
}

impl MonteCarloConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples_per_point < 1 {
            return Err(Error::Domain("need at least one sample per point".into()));
        }
        if self.isolation_k < 1 {
            return Err(Error::Domain("isolation repetitions must be at least 1".into()));
        }
        if self.r_over_j_grid.is_empty() || self.strategies.is_empty() {
            return Err(Error::Domain("empty grid or strategy list".into()));
        }
        if self.r_over_j_grid.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
            return Err(Error::Domain("R/J values must be finite and non-negative".into()));
        }
        if !(self.j_base > 0.0 && self.j_base.is_finite()) {
            return Err(Error::Domain(format!("j_base must be positive, got {}", self.j_base)));
        }
        Ok(())
    }
}

/// One output row. For sweeps `n = 1` and `mean_f = min_f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityRecord {
    pub strategy: Strategy,
    /// Δ for sweeps, R/J for Monte Carlo.
    pub x: f64,
    pub mean_f: f64,
    pub min_f: f64,
    pub n: usize,
}

/// CNOT fidelity of every strategy at every Δ, ordered by strategy then Δ.
pub fn run_delta_sweep(cfg: &DeltaSweepConfig) -> Result<Vec<FidelityRecord>> {
    cfg.validate()?;
    let target = Unitary4::cnot();
    let mut jobs: Vec<(Strategy, f64)> = Vec::new();
    let mut strategies = cfg.strategies.clone();
    strategies.sort();
    strategies.dedup();
    for &s in &strategies {
        for &d in &cfg.delta_grid {
            jobs.push((s, d));
        }
    }
    jobs.par_iter()
        .map(|&(s, d)| {
            let cal = Calibration::abstract_delta(1.0, d)?;
            let seq = cnot_assembly(&entangler(s, cfg.theta, &cal)?);
            let f = fidelity(&cal.compile(&seq)?, &target);
            Ok(FidelityRecord { strategy: s, x: d, mean_f: f, min_f: f, n: 1 })
        })
        .collect()
}

/// The CNOT each Monte Carlo strategy runs, timed for `j_base`.
pub fn monte_carlo_sequence(strategy: Strategy, j_base: f64, k: u32) -> Result<PulseSequence> {
    match strategy {
        Strategy::Uncorrected => sqrt_swap_cnot(j_base),
        s => {
            let cal = Calibration::full(j_base, heisenberg(j_base), Isolation::TermIsolation { k })?;
            Ok(cnot_assembly(&entangler(s, PI / 2.0, &cal)?))
        }
    }
}

/// Mean and minimum CNOT fidelity over random Hamiltonians for every
/// `(strategy, R/J)`, ordered by grid point then strategy.
pub fn run_monte_carlo(cfg: &MonteCarloConfig) -> Result<Vec<FidelityRecord>> {
    cfg.validate()?;
    let target = Unitary4::cnot();
    let sequences = cfg
        .strategies
        .iter()
        .map(|&s| monte_carlo_sequence(s, cfg.j_base, cfg.isolation_k).map(|seq| (s, seq)))
        .collect::<Result<Vec<_>>>()?;

    let mut records = Vec::with_capacity(cfg.r_over_j_grid.len() * sequences.len());
    for (g, &rj) in cfg.r_over_j_grid.iter().enumerate() {
        // Each sample's fidelities for all strategies, in sample order.
        let per_sample: Vec<Vec<f64>> = (0..cfg.samples_per_point)
            .into_par_iter()
            .map(|i| {
                let seed = mix_seed(cfg.master_seed, &[g as u64, i as u64]);
                let spec = RandomEnsembleSpec::new(cfg.j_base, rj * cfg.j_base, seed)?;
                let h = random_hamiltonian(&spec).hamiltonian();
                sequences.iter().map(|(_, seq)| Ok(fidelity(&seq.compile(&h)?, &target))).collect()
            })
            .collect::<Result<_>>()?;

        for (col, &(strategy, _)) in sequences.iter().enumerate() {
            let mut sum = 0.0;
            let mut min = f64::INFINITY;
            for row in &per_sample {
                sum += row[col];
                min = min.min(row[col]);
            }
            let n = per_sample.len();
            // Guard the documented ordering against last-bit rounding.
            let mean = (sum / n as f64).max(min);
            records.push(FidelityRecord { strategy, x: rj, mean_f: mean, min_f: min, n });
        }
    }
    Ok(records)
}

/// `phase_distance(Q_k(t), exp(i J_ZZ t Z⊗Z))` for each `k`.
pub fn run_isolation_convergence(k_list: &[u32], coeffs: &PauliCoeffs, t: f64) -> Result<Vec<(u32, f64)>> {
    if k_list.is_empty() {
        return Err(Error::Domain("k list is empty".into()));
    }
    coeffs.validate()?;
    let h = coeffs.hamiltonian();
    let target = target_zz(2.0 * coeffs.j_zz() * t);
    k_list.iter().map(|&k| Ok((k, phase_distance(&isolate_q(t, k)?.compile(&h)?, &target)))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingReport {
    pub naive_counts: GateCounts,
    pub comp_counts: GateCounts,
    pub naive_ns: f64,
    pub comp_ns: f64,
    pub ops_in_60ms: u64,
}

/// Dephasing window the operation budget is measured against.
pub const DEPHASING_NS: f64 = 60e6;

/// Square-root-of-swap CNOT against a BB1-corrected CNOT, both isolating
/// `Z⊗Z` from exchange with the two-pulse shortcut.
pub fn timing_sequences() -> Result<(PulseSequence, PulseSequence)> {
    let jp = 1.0;
    let naive = sqrt_swap_cnot(jp)?;
    let cal = Calibration::new(
        jp,
        CouplingModel::FullHamiltonian { coeffs: heisenberg(jp), isolation: Isolation::HeisenbergShortcut },
    )?;
    let comp = cnot_assembly(&bb1_jones(PI / 2.0, &cal)?).merge_rotations();
    Ok((naive, comp))
}

pub fn run_timing_report(tm: &TimingModel) -> Result<TimingReport> {
    let tm = TimingModel::new(tm.single_qubit_ns_per_pi, tm.hadamard_ns, tm.two_qubit_ns_per_pi_over_8)?;
    let (naive, comp) = timing_sequences()?;
    let naive_ns = naive.duration(&tm, 1.0);
    let comp_ns = comp.duration(&tm, 1.0);
    Ok(TimingReport {
        naive_counts: naive.gate_counts(),
        comp_counts: comp.gate_counts(),
        naive_ns,
        comp_ns,
        ops_in_60ms: ops_in_window(comp_ns),
    })
}

/// `floor(60 ms / duration)`.
pub fn ops_in_window(duration_ns: f64) -> u64 {
    (DEPHASING_NS / duration_ns).floor() as u64
}
