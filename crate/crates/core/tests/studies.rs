// Copyright 2026 Robust CNOT Contributors
// SPDX-License-Identifier: Apache-2.0

use robust_cnot::experiments::{run_delta_sweep, run_monte_carlo, DeltaSweepConfig, FidelityRecord, MonteCarloConfig};
use robust_cnot::Strategy;

fn at(recs: &[FidelityRecord], s: Strategy, x: f64) -> f64 {
    recs.iter().find(|r| r.strategy == s && (r.x - x).abs() < 1e-9).unwrap().mean_f
}

#[test]
fn default_sweep_is_ordered() {
    let recs = run_delta_sweep(&DeltaSweepConfig::default()).unwrap();
    assert_eq!(recs.len(), 4 * 201);
    for r in &recs {
        assert!(r.mean_f >= 0.0 && r.mean_f <= 1.0 + 1e-12);
        if r.x.abs() <= 0.9 + 1e-9 {
            let unc = at(&recs, Strategy::Uncorrected, r.x);
            let c1 = at(&recs, Strategy::Comp1, r.x);
            let c3 = at(&recs, Strategy::Comp3, r.x);
            assert!(c1 + 1e-9 >= unc, "comp1 below uncorrected at {}", r.x);
            assert!(c3 + 1e-9 >= c1, "comp3 below comp1 at {}", r.x);
        }
    }
}

fn with_threads<T: Send>(n: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap().install(f)
}

#[test]
fn monte_carlo_independent_of_thread_count() {
    let cfg = MonteCarloConfig {
        r_over_j_grid: vec![0.0, 0.5, 1.0],
        samples_per_point: 40,
        isolation_k: 4,
        master_seed: 11,
        ..Default::default()
    };
    let one = with_threads(1, || run_monte_carlo(&cfg).unwrap());
    let four = with_threads(4, || run_monte_carlo(&cfg).unwrap());
    let bits = |v: &[FidelityRecord]| v.iter().map(|r| (r.mean_f.to_bits(), r.min_f.to_bits())).collect::<Vec<_>>();
    assert_eq!(bits(&one), bits(&four));
    for r in &one {
        assert!(r.min_f <= r.mean_f && r.mean_f <= 1.0 + 1e-12 && r.min_f >= 0.0);
        assert_eq!(r.n, 40);
    }
}

#[test]
fn monte_carlo_seed_changes_noisy_points_only() {
    let base =
        MonteCarloConfig { r_over_j_grid: vec![0.0, 0.8], samples_per_point: 10, isolation_k: 4, ..Default::default() };
    let a = run_monte_carlo(&MonteCarloConfig { master_seed: 1, ..base.clone() }).unwrap();
    let b = run_monte_carlo(&MonteCarloConfig { master_seed: 2, ..base }).unwrap();
    assert_eq!(a[0], b[0]);
    assert_eq!(a[1], b[1]);
    assert_ne!(a[2].mean_f, b[2].mean_f);
}
