// Copyright 2026 Robust CNOT Contributors
// SPDX-License-Identifier: Apache-2.0

//! Gate-comparison metrics. Every comparison here ignores global phase.

use std::f64::consts::PI;

use crate::linalg::{HermitianEigen, Matrix4, Unitary4};

/// `F = sqrt(|Tr(U_impl† U_target)| / Tr(U_target† U_target))`.
///
/// For 4×4 unitaries the denominator is 4. Symmetric in its arguments and
/// insensitive to a global phase on either one.
pub fn fidelity(u_impl: &Unitary4, u_target: &Unitary4) -> f64 {
    trace_overlap(u_impl, u_target).sqrt()
}

/// `|Tr(U_impl† U_target)| / 4`, the square of [`fidelity`].
pub fn trace_overlap(u_impl: &Unitary4, u_target: &Unitary4) -> f64 {
    u_impl.matrix().inner(u_target.matrix()).norm() / 4.0
}

/// `1 - fidelity`, evaluated without cancellation when the gates are close.
///
/// Near unity the direct difference loses everything below ~1e-16. Instead
/// the eigenphases λ_j of `W = U_impl† U_target` are recovered and
/// `1 - |Tr W|²/16 = ¼ Σ_{j<k} sin²((λ_j - λ_k)/2)` is used.
pub fn infidelity(u_impl: &Unitary4, u_target: &Unitary4) -> f64 {
    let w = u_impl.matrix().adjoint() * *u_target.matrix();
    let tr = w.trace();
    let overlap = tr.norm() / 4.0;
    let f = overlap.sqrt();
    let direct = 1.0 - f;
    if direct > 1e-6 || tr.norm() == 0.0 {
        return direct.max(0.0);
    }
    // Remove the mean phase so all eigenphases sit near zero, then read
    // them off the Hermitian part (W - W†)/2i, whose eigenvalues are sin λ.
    let w = w.scale(tr.conj() / tr.norm());
    let skew = (w - w.adjoint()).scale(num_complex::Complex64::new(0.0, -0.5));
    let phases = match HermitianEigen::new(&skew) {
        Ok(eig) => eig.values.map(|s| s.clamp(-1.0, 1.0).asin()),
        Err(_) => return direct.max(0.0),
    };
    let mut spread = 0.0;
    for j in 0..4 {
        for k in (j + 1)..4 {
            spread += (0.5 * (phases[j] - phases[k])).sin().powi(2);
        }
    }
    let one_minus_sq = 0.25 * spread;
    let one_minus_overlap = one_minus_sq / (1.0 + overlap);
    one_minus_overlap / (1.0 + f)
}

/// `min_φ max_ij |a_ij − e^{iφ} b_ij|`: zero exactly when the two gates
/// agree up to global phase.
pub fn phase_distance(a: &Unitary4, b: &Unitary4) -> f64 {
    let (a, b) = (a.matrix(), b.matrix());
    let dist = |phi: f64| max_dist(a, b, phi);

    // Start from the trace-aligned phase (optimal in Frobenius norm) and a
    // coarse grid, then refine the best bracket by golden section.
    let tr = b.inner(a);
    let mut best_phi = if tr.norm() > 0.0 { tr.arg() } else { 0.0 };
    let mut best = dist(best_phi);
    const GRID: usize = 256;
    let step = 2.0 * PI / GRID as f64;
    for n in 0..GRID {
        let phi = n as f64 * step;
        let d = dist(phi);
        if d < best {
            best = d;
            best_phi = phi;
        }
    }

    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (best_phi - step, best_phi + step);
    let mut x1 = hi - invphi * (hi - lo);
    let mut x2 = lo + invphi * (hi - lo);
    let (mut f1, mut f2) = (dist(x1), dist(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = dist(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = dist(x2);
        }
    }
    best.min(f1).min(f2)
}

fn max_dist(a: &Matrix4, b: &Matrix4, phi: f64) -> f64 {
    let ph = num_complex::Complex64::from_polar(1.0, phi);
    let mut m: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            m = m.max((a.0[i][j] - ph * b.0[i][j]).norm());
        }
    }
    m
}
