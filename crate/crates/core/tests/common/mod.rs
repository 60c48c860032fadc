//! Checks shared by the property tests and the acceptance runner.
//!
//! Each check returns `Ok(summary)` or `Err(summary)`; callers decide whether
//! to assert or to report.

#![allow(dead_code)]

use qinfer::ensemble::{random_density_matrix, random_hermitian, rng};
use qinfer::entanglement::{concurrence, is_separable};
use qinfer::maxent::{maxent_double, maxent_single, min_sigma2, min_sigma2_oracle, Observable};
use qinfer::qcore::{
    eigh, expectation, phi_plus, psi_minus, von_neumann_entropy, ComplexMatrix4, DensityMatrix,
    LogBase,
};
use qinfer::schemes::{bell_operator, bell_operator_from_paulis, operator_a, operator_d, BELL_MAX};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<String, String>;

pub fn verdict(ok: bool, summary: String) -> Outcome {
    if ok {
        Ok(summary)
    } else {
        Err(summary)
    }
}

/// Bisection for the last point where `inside` holds, assuming it holds at `lo`
/// and fails at `hi`.
pub fn bisect(mut lo: f64, mut hi: f64, steps: usize, inside: impl Fn(f64) -> bool) -> f64 {
    assert!(
        inside(lo) && !inside(hi),
        "predicate not bracketed on [{lo}, {hi}]"
    );
    for _ in 0..steps {
        let mid = 0.5 * (lo + hi);
        if inside(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn random_observable(r: &mut ChaCha8Rng) -> Observable {
    let vectors = eigh(&random_hermitian(r)).unwrap().eigenvectors;
    let values: [f64; 4] = std::array::from_fn(|_| r.random_range(-2.0..2.0));
    Observable::new("random", values, vectors).unwrap()
}

/// `B̂² = 16|Φ⁺⟩⟨Φ⁺| − 2√2·B̂ = 16|Ψ⁻⟩⟨Ψ⁻| + 2√2·B̂`, for both constructions of B̂.
pub fn bell_square_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for b in [bell_operator().matrix(), bell_operator_from_paulis()] {
        let sq = b * b;
        let phi = ComplexMatrix4::projector(&phi_plus()).scale(16.0) - b.scale(BELL_MAX);
        let psi = ComplexMatrix4::projector(&psi_minus()).scale(16.0) + b.scale(BELL_MAX);
        worst = worst.max(sq.max_abs_diff(&phi)).max(sq.max_abs_diff(&psi));
    }
    verdict(worst <= 1e-12, format!("max deviation {worst:.2e}"))
}

/// `Tr(ρB̂²) ≥ 2√2|Tr(ρB̂)|` on random states.
pub fn uncertainty_bound(samples: usize, seed: u64) -> Outcome {
    let b = bell_operator().matrix();
    let b2 = b * b;
    let mut r = rng(seed);
    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        let rho = random_density_matrix(&mut r).unwrap();
        let gap = expectation(&rho, &b2).unwrap() - BELL_MAX * expectation(&rho, &b).unwrap().abs();
        worst = worst.min(gap);
    }
    verdict(
        worst >= -1e-10,
        format!("{samples} states, smallest slack {worst:.3e}"),
    )
}

/// Positive partial transpose agrees with vanishing concurrence.
pub fn ppt_matches_concurrence(samples: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut disagreements = 0;
    let mut separable = 0;
    for _ in 0..samples {
        let rho = random_density_matrix(&mut r).unwrap();
        let sep = is_separable(&rho).unwrap();
        let c = concurrence(&rho).unwrap();
        separable += sep as usize;
        if sep != (c <= 1e-8) {
            disagreements += 1;
        }
    }
    verdict(
        disagreements == 0,
        format!("{samples} states, {separable} separable, {disagreements} disagreements"),
    )
}

fn hs(a: &ComplexMatrix4, b: &ComplexMatrix4) -> f64 {
    a.hs_inner(b).re
}

/// Random Hermitian direction orthogonal to each of `constraints`.
fn tangent_direction(r: &mut ChaCha8Rng, constraints: &[ComplexMatrix4]) -> ComplexMatrix4 {
    let mut basis: Vec<ComplexMatrix4> = Vec::new();
    for c in constraints {
        let mut v = *c;
        for e in &basis {
            v = v - e.scale(hs(e, &v));
        }
        let n = hs(&v, &v).sqrt();
        if n > 1e-12 {
            basis.push(v.scale(1.0 / n));
        }
    }
    let mut h = random_hermitian(r);
    for e in &basis {
        h = h - e.scale(hs(e, &h));
    }
    h.scale(1.0 / h.frobenius_norm())
}

struct Solved {
    label: String,
    obs: Observable,
    rho: DensityMatrix,
    mean: f64,
    sigma2: Option<f64>,
}

fn maximality_cases() -> Vec<Solved> {
    let mut cases = Vec::new();
    let mut single = |obs: Observable, mean: f64| {
        let rho = maxent_single(&obs, mean).unwrap().rho;
        cases.push(Solved {
            label: format!("{} <O>={mean}", obs.label()),
            obs,
            rho,
            mean,
            sigma2: None,
        });
    };
    let a = operator_a(1.0, -1.0).unwrap();
    let d = operator_d(2.0, 3.0, std::f64::consts::FRAC_PI_4).unwrap();
    for m in [0.2, 0.5, 0.85] {
        single(a.clone(), m);
    }
    for m in [-1.0, 1.5] {
        single(bell_operator(), m);
    }
    for m in [0.7, 1.6, 2.4] {
        single(d.clone(), m);
    }
    let mut double = |obs: Observable, mean: f64, s: f64| {
        let rho = maxent_double(&obs, mean, s).unwrap().rho;
        cases.push(Solved {
            label: format!("{} <O>={mean} <O2>={s}", obs.label()),
            obs,
            rho,
            mean,
            sigma2: Some(s),
        });
    };
    double(a.clone(), 0.5, 0.7);
    double(a, 0.3, 0.5);
    double(operator_d(2.0, 3.0, 0.3).unwrap(), 1.5, 3.2);
    double(operator_d(2.0, 4.0, 1.1).unwrap(), 2.0, 6.0);
    cases
}

/// No state sharing the constraints of a solved inference has larger entropy.
pub fn entropy_maximality(perturbations: usize, seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_drift: f64 = 0.0;
    let cases = maximality_cases();
    for case in &cases {
        let o = case.obs.matrix();
        let o2 = case.obs.squared_matrix();
        let mut constraints = vec![ComplexMatrix4::identity(), o];
        if case.sigma2.is_some() {
            constraints.push(o2);
        }
        let s0 = von_neumann_entropy(&case.rho, LogBase::Natural).unwrap();
        let lambda_min = case.rho.eigen().unwrap().min_eigenvalue();
        if lambda_min <= 1e-9 {
            return Err(format!("{}: inferred state is not full rank", case.label));
        }
        for k in 0..perturbations {
            let h = tangent_direction(&mut r, &constraints);
            // Spread the step sizes over several decades up to the PSD limit.
            let scale = 10f64.powf(-4.0 * (k % 5) as f64 / 4.0) * r.random_range(0.1..1.0);
            let step = scale * lambda_min;
            let candidate = (*case.rho.matrix() + h.scale(step)).hermitian_part();
            let rho = DensityMatrix::new(candidate).unwrap();
            let mut drift = (expectation(&rho, &o).unwrap() - case.mean).abs();
            if let Some(s) = case.sigma2 {
                drift = drift.max((expectation(&rho, &o2).unwrap() - s).abs());
            }
            worst_drift = worst_drift.max(drift);
            let s = von_neumann_entropy(&rho, LogBase::Natural).unwrap();
            worst_excess = worst_excess.max(s - s0);
        }
    }
    verdict(
        worst_excess <= 1e-8 && worst_drift <= 1e-6,
        format!(
            "{} inferences x {perturbations} perturbations, max entropy excess {worst_excess:.2e}, max constraint drift {worst_drift:.1e}",
            cases.len()
        ),
    )
}

/// `min_sigma2 ≤ oracle(grid) ≤ min_sigma2 + 4·max d²/grid`, nonincreasing in
/// the (nested) grid.
pub fn oracle_sandwich(cases: usize, grids: &[usize], seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut failures = Vec::new();
    let mut worst_gap: Vec<f64> = vec![0.0; grids.len()];
    for case in 0..cases {
        let obs = random_observable(&mut r);
        let (lo, hi) = (obs.min_eigenvalue(), obs.max_eigenvalue());
        let mean = lo + (hi - lo) * r.random_range(0.02..0.98);
        let exact = min_sigma2(&obs, mean).unwrap();
        let scale = obs.eigenvalues().iter().map(|d| d * d).fold(0.0, f64::max);
        let mut previous = f64::INFINITY;
        for (k, &grid) in grids.iter().enumerate() {
            let oracle = min_sigma2_oracle(&obs, mean, grid).unwrap();
            let gap = oracle - exact;
            worst_gap[k] = worst_gap[k].max(gap);
            let bound = 4.0 * scale / grid as f64;
            if gap < -1e-12 || gap > bound || oracle > previous + 1e-12 {
                failures.push(format!("case {case} grid {grid}: gap {gap:.3e}"));
            }
            previous = oracle;
        }
    }
    let gaps: Vec<String> = grids
        .iter()
        .zip(&worst_gap)
        .map(|(g, w)| format!("grid {g}: {w:.1e}"))
        .collect();
    verdict(
        failures.is_empty(),
        format!(
            "{cases} observables, worst gaps [{}]{}",
            gaps.join(", "),
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failures: {}", failures.join("; "))
            }
        ),
    )
}
