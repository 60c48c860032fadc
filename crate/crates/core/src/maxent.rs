//! Maximum-entropy states for a single observable and the minimum-σ² prescription.
//!
//! Every state produced here is diagonal in the eigenbasis of the observable,
//! so the inference problems reduce to probability vectors over its spectrum.

use crate::error::{Error, Result};
use crate::qcore::{orthonormality_error, ComplexMatrix4, DensityMatrix, StateVector4};

/// Eigenvalues closer than this are treated as one eigenspace.
pub const DEGENERACY_TOL: f64 = 1e-12;
pub const ORTHONORMAL_TOL: f64 = 1e-10;
/// Target residual of the multiplier solvers.
pub const SOLVER_TOL: f64 = 1e-12;
/// Largest constraint violation accepted from a solver.
pub const ACCEPT_TOL: f64 = 1e-9;

const MAX_BISECTIONS: usize = 200;
const MAX_BRACKET_DOUBLINGS: usize = 80;
const MAX_NEWTON_STEPS: usize = 200;
const MAX_CONDITION: f64 = 1e12;

/// Hermitian observable on two qubits, kept in spectral form.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    eigenvalues: [f64; 4],
    eigenvectors: [StateVector4; 4],
    label: String,
}

impl Observable {
    pub fn new(
        label: impl Into<String>,
        eigenvalues: [f64; 4],
        eigenvectors: [StateVector4; 4],
    ) -> Result<Self> {
        if let Some(x) = eigenvalues.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "eigenvalue {x} is not finite"
            )));
        }
        let err = orthonormality_error(&eigenvectors);
        if err > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal(err));
        }
        Ok(Self {
            eigenvalues,
            eigenvectors,
            label: label.into(),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eigenvalues(&self) -> &[f64; 4] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[StateVector4; 4] {
        &self.eigenvectors
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `Σᵢ dᵢ|i⟩⟨i|` in the product basis.
    pub fn matrix(&self) -> ComplexMatrix4 {
        ComplexMatrix4::spectral_sum(&self.eigenvalues, &self.eigenvectors)
    }

    pub fn squared_matrix(&self) -> ComplexMatrix4 {
        ComplexMatrix4::spectral_sum(&self.eigenvalues.map(|d| d * d), &self.eigenvectors)
    }

    /// `Σᵢ pᵢ|i⟩⟨i|` for a probability vector over the eigenbasis.
    pub fn state(&self, weights: &[f64; 4]) -> Result<DensityMatrix> {
        DensityMatrix::from_spectrum(weights, &self.eigenvectors)
    }

    pub fn mean_of(&self, weights: &[f64; 4]) -> f64 {
        weights
            .iter()
            .zip(&self.eigenvalues)
            .map(|(p, d)| p * d)
            .sum()
    }

    pub fn second_moment_of(&self, weights: &[f64; 4]) -> f64 {
        weights
            .iter()
            .zip(&self.eigenvalues)
            .map(|(p, d)| p * d * d)
            .sum()
    }

    /// Distinct eigenvalues in ascending order with the indices of their eigenvectors.
    pub fn eigenspaces(&self) -> Vec<Eigenspace> {
        let mut order = [0usize, 1, 2, 3];
        order.sort_by(|&i, &j| self.eigenvalues[i].total_cmp(&self.eigenvalues[j]));
        let mut spaces: Vec<Eigenspace> = Vec::new();
        for i in order {
            let d = self.eigenvalues[i];
            match spaces.last_mut() {
                Some(last) if (d - last.value).abs() <= DEGENERACY_TOL => last.indices.push(i),
                _ => spaces.push(Eigenspace {
                    value: d,
                    indices: vec![i],
                }),
            }
        }
        spaces
    }

    fn range_tol(&self) -> f64 {
        DEGENERACY_TOL
            * self
                .max_eigenvalue()
                .abs()
                .max(self.min_eigenvalue().abs())
                .max(1.0)
    }

    fn check_mean(&self, mean: f64) -> Result<()> {
        let (min, max) = (self.min_eigenvalue(), self.max_eigenvalue());
        let tol = self.range_tol();
        if !(mean >= min - tol && mean <= max + tol) {
            return Err(Error::MeanOutOfRange { mean, min, max });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenspace {
    pub value: f64,
    pub indices: Vec<usize>,
}

/// An inferred state with its Lagrange multipliers.
///
/// `beta` multiplies the observable and `gamma` its square. On the boundary of
/// the attainable moments the multipliers diverge: they are reported as signed
/// infinities and `log_partition` is `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct InferenceResult {
    pub rho: DensityMatrix,
    /// Populations of the observable's eigenvectors, in its eigenvector order.
    pub weights: [f64; 4],
    pub beta: f64,
    pub gamma: Option<f64>,
    pub achieved_mean: f64,
    pub achieved_sigma2: f64,
    pub log_partition: Option<f64>,
}

impl InferenceResult {
    fn assemble(
        obs: &Observable,
        weights: [f64; 4],
        beta: f64,
        gamma: Option<f64>,
        log_partition: Option<f64>,
    ) -> Result<Self> {
        Ok(Self {
            rho: obs.state(&weights)?,
            achieved_mean: obs.mean_of(&weights),
            achieved_sigma2: obs.second_moment_of(&weights),
            weights,
            beta,
            gamma,
            log_partition,
        })
    }
}

/// Normalized weights `∝ exp(−β·dᵢ − γ·dᵢ²)` and `ln Z`.
///
/// The exponents are shifted by their maximum before exponentiating.
pub fn gibbs_weights(eigenvalues: &[f64; 4], beta: f64, gamma: f64) -> ([f64; 4], f64) {
    let exponents = eigenvalues.map(|d| -beta * d - gamma * d * d);
    let shift = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut w = exponents.map(|e| (e - shift).exp());
    let z: f64 = w.iter().sum();
    for x in w.iter_mut() {
        *x /= z;
    }
    (w, shift + z.ln())
}

/// The Gibbs state `exp(−βÔ − γÔ²)/Z` for given multipliers.
pub fn gibbs_state(obs: &Observable, beta: f64, gamma: f64) -> Result<InferenceResult> {
    let (w, ln_z) = gibbs_weights(obs.eigenvalues(), beta, gamma);
    InferenceResult::assemble(obs, w, beta, Some(gamma), Some(ln_z))
}

fn uniform_on(spaces: &[(&Eigenspace, f64)]) -> [f64; 4] {
    let mut w = [0.0; 4];
    for (space, mass) in spaces {
        let share = mass / space.indices.len() as f64;
        for &i in &space.indices {
            w[i] = share;
        }
    }
    w
}

/// Solves `mean(β) = target` for fixed `gamma` by bisection on an expanding bracket.
fn solve_beta(obs: &Observable, target: f64, gamma: f64) -> Result<f64> {
    let d = obs.eigenvalues();
    let residual = |beta: f64| obs.mean_of(&gibbs_weights(d, beta, gamma).0) - target;

    // The mean is decreasing in β.
    let mut bound = 1.0;
    let mut doublings = 0;
    while residual(-bound) < 0.0 || residual(bound) > 0.0 {
        bound *= 2.0;
        doublings += 1;
        if doublings > MAX_BRACKET_DOUBLINGS {
            return Err(Error::NoConvergence(format!(
                "could not bracket β for mean {target}"
            )));
        }
    }
    let (mut lo, mut hi) = (-bound, bound);
    let mut best = (f64::INFINITY, 0.0);
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let r = residual(mid);
        if r.abs() < best.0 {
            best = (r.abs(), mid);
        }
        if r.abs() <= SOLVER_TOL || mid == lo || mid == hi {
            break;
        }
        if r > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Newton polish; d⟨d⟩/dβ = −Var(d).
    let (mut r_best, mut beta) = best;
    for _ in 0..3 {
        let w = gibbs_weights(d, beta, gamma).0;
        let mean = obs.mean_of(&w);
        let var = obs.second_moment_of(&w) - mean * mean;
        if !(var > 0.0) {
            break;
        }
        let next = beta + (mean - target) / var;
        let r = residual(next).abs();
        if !(r < r_best) {
            break;
        }
        (r_best, beta) = (r, next);
    }
    Ok(beta)
}

/// Maximum-entropy state given `⟨Ô⟩ = mean`: weights `∝ exp(−β·dᵢ)`.
///
/// A mean at an extreme eigenvalue gives the uniform mixture on that
/// eigenspace, the `β → ±∞` limit.
pub fn maxent_single(obs: &Observable, mean: f64) -> Result<InferenceResult> {
    obs.check_mean(mean)?;
    let spaces = obs.eigenspaces();
    let tol = obs.range_tol();
    let lowest = &spaces[0];
    let highest = &spaces[spaces.len() - 1];
    if spaces.len() == 1 {
        let w = uniform_on(&[(lowest, 1.0)]);
        return InferenceResult::assemble(obs, w, 0.0, None, Some(4f64.ln()));
    }
    if mean <= lowest.value + tol {
        let w = uniform_on(&[(lowest, 1.0)]);
        return InferenceResult::assemble(obs, w, f64::INFINITY, None, None);
    }
    if mean >= highest.value - tol {
        let w = uniform_on(&[(highest, 1.0)]);
        return InferenceResult::assemble(obs, w, f64::NEG_INFINITY, None, None);
    }

    let beta = solve_beta(obs, mean, 0.0)?;
    let (w, ln_z) = gibbs_weights(obs.eigenvalues(), beta, 0.0);
    let result = InferenceResult::assemble(obs, w, beta, None, Some(ln_z))?;
    if (result.achieved_mean - mean).abs() > ACCEPT_TOL {
        return Err(Error::NoConvergence(format!(
            "β bisection reached mean {} for target {mean}",
            result.achieved_mean
        )));
    }
    Ok(result)
}

/// Where the minimum of `⟨Ô²⟩` at fixed `⟨Ô⟩` is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Support {
    /// All weight on one eigenspace.
    Point(usize),
    /// Weights `1 − t` and `t` on eigenspaces `lower` and `upper`.
    Pair { lower: usize, upper: usize, t: f64 },
}

fn min_sigma2_support(spaces: &[Eigenspace], mean: f64, tol: f64) -> (Support, f64) {
    let mut best = (Support::Point(0), f64::INFINITY);
    for (k, s) in spaces.iter().enumerate() {
        if (s.value - mean).abs() <= tol {
            let v = s.value * s.value;
            if v < best.1 {
                best = (Support::Point(k), v);
            }
        }
    }
    for (i, lo) in spaces.iter().enumerate() {
        for (j, hi) in spaces.iter().enumerate().skip(i + 1) {
            if lo.value < mean && mean < hi.value {
                let t = (mean - lo.value) / (hi.value - lo.value);
                let v = (1.0 - t) * lo.value * lo.value + t * hi.value * hi.value;
                if v < best.1 {
                    best = (
                        Support::Pair {
                            lower: i,
                            upper: j,
                            t,
                        },
                        v,
                    );
                }
            }
        }
    }
    best
}

/// Smallest `Σ pᵢdᵢ²` over probability vectors with `Σ pᵢdᵢ = mean`.
///
/// The minimizer puts its weight on at most two eigenvalues bracketing the
/// mean, so scanning the bracketing pairs is exact.
pub fn min_sigma2(obs: &Observable, mean: f64) -> Result<f64> {
    obs.check_mean(mean)?;
    let mean = mean.clamp(obs.min_eigenvalue(), obs.max_eigenvalue());
    Ok(min_sigma2_support(&obs.eigenspaces(), mean, obs.range_tol()).1)
}

/// Largest `Σ pᵢdᵢ²` at fixed mean: the chord between the extreme eigenvalues.
pub fn max_sigma2(obs: &Observable, mean: f64) -> Result<f64> {
    obs.check_mean(mean)?;
    let (lo, hi) = (obs.min_eigenvalue(), obs.max_eigenvalue());
    Ok((lo + hi) * mean - lo * hi)
}

fn min_sigma2_weights(obs: &Observable, mean: f64) -> Result<[f64; 4]> {
    obs.check_mean(mean)?;
    let mean = mean.clamp(obs.min_eigenvalue(), obs.max_eigenvalue());
    let spaces = obs.eigenspaces();
    let (support, _) = min_sigma2_support(&spaces, mean, obs.range_tol());
    Ok(match support {
        Support::Point(k) => uniform_on(&[(&spaces[k], 1.0)]),
        Support::Pair { lower, upper, t } => {
            uniform_on(&[(&spaces[lower], 1.0 - t), (&spaces[upper], t)])
        }
    })
}

/// The maximum-entropy state among those with the minimum `⟨Ô²⟩` for `mean`.
///
/// Weight assigned to a degenerate eigenvalue is shared uniformly over its
/// eigenspace.
pub fn min_sigma2_state(obs: &Observable, mean: f64) -> Result<DensityMatrix> {
    obs.state(&min_sigma2_weights(obs, mean)?)
}

/// Brute-force upper bound on [`min_sigma2`].
///
/// Two populations run over the grid `{0, 1/grid, …, 1}`; the populations of
/// the smallest and largest eigenvalues are then fixed by normalization and
/// the mean constraint. The result converges to the true minimum from above
/// as `grid` grows.
pub fn min_sigma2_oracle(obs: &Observable, mean: f64, grid: usize) -> Result<f64> {
    if grid < 100 {
        return Err(Error::InvalidParams(format!("grid {grid} < 100")));
    }
    obs.check_mean(mean)?;
    let d = obs.eigenvalues();
    let lo_idx = (0..4).min_by(|&i, &j| d[i].total_cmp(&d[j])).unwrap();
    let hi_idx = (0..4).max_by(|&i, &j| d[i].total_cmp(&d[j])).unwrap();
    let (d_lo, d_hi) = (d[lo_idx], d[hi_idx]);
    if d_hi - d_lo <= DEGENERACY_TOL {
        return Ok(d_lo * d_lo);
    }
    let free: Vec<usize> = (0..4).filter(|&i| i != lo_idx && i != hi_idx).collect();
    let (a, b) = (free[0], free[1]);
    let step = 1.0 / grid as f64;
    let slack = 1e-12;

    let mut best = f64::INFINITY;
    for i in 0..=grid {
        let pa = i as f64 * step;
        for j in 0..=(grid - i) {
            let pb = j as f64 * step;
            let rest = 1.0 - pa - pb;
            let rest_mean = mean - pa * d[a] - pb * d[b];
            let p_hi = (rest_mean - rest * d_lo) / (d_hi - d_lo);
            let p_lo = rest - p_hi;
            if p_hi < -slack || p_lo < -slack {
                continue;
            }
            let v = pa * d[a] * d[a] + pb * d[b] * d[b] + p_lo * d_lo * d_lo + p_hi * d_hi * d_hi;
            if v < best {
                best = v;
            }
        }
    }
    Ok(best)
}

/// Maximum-entropy state given `⟨Ô⟩ = mean` and `⟨Ô²⟩ = sigma2`:
/// weights `∝ exp(−β·dᵢ − γ·dᵢ²)`.
///
/// A `sigma2` on the lower boundary returns [`min_sigma2_state`]; on the upper
/// boundary the uniform mixture over the two extreme eigenspaces.
pub fn maxent_double(obs: &Observable, mean: f64, sigma2: f64) -> Result<InferenceResult> {
    obs.check_mean(mean)?;
    let lo = min_sigma2(obs, mean)?;
    let hi = max_sigma2(obs, mean)?;
    let tol = DEGENERACY_TOL * hi.abs().max(lo.abs()).max(1.0);
    if !(sigma2 >= lo - tol && sigma2 <= hi + tol) {
        return Err(Error::Infeasible {
            mean,
            sigma2,
            min: lo,
            max: hi,
        });
    }

    let spaces = obs.eigenspaces();
    if spaces.len() <= 2 {
        // ⟨Ô²⟩ is fixed by ⟨Ô⟩ here, so the second constraint adds nothing.
        let single = maxent_single(obs, mean)?;
        return Ok(InferenceResult {
            gamma: Some(0.0),
            ..single
        });
    }

    if sigma2 <= lo + tol {
        let w = min_sigma2_weights(obs, mean)?;
        let (beta, gamma) = divergent_multipliers(obs, &w, 1.0);
        return InferenceResult::assemble(obs, w, beta, Some(gamma), None);
    }
    if sigma2 >= hi - tol {
        let (min, max) = (&spaces[0], &spaces[spaces.len() - 1]);
        let t = (mean - min.value) / (max.value - min.value);
        let w = uniform_on(&[(min, 1.0 - t), (max, t)]);
        let (beta, gamma) = divergent_multipliers(obs, &w, -1.0);
        return InferenceResult::assemble(obs, w, beta, Some(gamma), None);
    }

    let (beta, gamma) = match newton_multipliers(obs, mean, sigma2) {
        Some(m) => m,
        None => nested_bisection(obs, mean, sigma2)?,
    };
    let (w, ln_z) = gibbs_weights(obs.eigenvalues(), beta, gamma);
    let result = InferenceResult::assemble(obs, w, beta, Some(gamma), Some(ln_z))?;
    if (result.achieved_mean - mean).abs() > ACCEPT_TOL
        || (result.achieved_sigma2 - sigma2).abs() > ACCEPT_TOL
    {
        return Err(Error::NoConvergence(format!(
            "(β, γ) solve reached ({}, {}) for target ({mean}, {sigma2})",
            result.achieved_mean, result.achieved_sigma2
        )));
    }
    Ok(result)
}

/// Signed infinities describing the boundary limit: `γ → ±∞` with β following
/// the centre of the occupied eigenvalues.
fn divergent_multipliers(obs: &Observable, w: &[f64; 4], gamma_sign: f64) -> (f64, f64) {
    let occupied: Vec<f64> = (0..4)
        .filter(|&i| w[i] > 0.0)
        .map(|i| obs.eigenvalues()[i])
        .collect();
    let lo = occupied.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = occupied.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let centre = lo + hi;
    let beta = if centre == 0.0 {
        0.0
    } else {
        -gamma_sign * centre.signum() * f64::INFINITY
    };
    (beta, gamma_sign * f64::INFINITY)
}

struct Moments {
    m1: f64,
    m2: f64,
    var11: f64,
    cov12: f64,
    var22: f64,
    ln_z: f64,
}

fn moments(d: &[f64; 4], beta: f64, gamma: f64) -> Moments {
    let (w, ln_z) = gibbs_weights(d, beta, gamma);
    let mut m = [0.0; 5];
    for (p, x) in w.iter().zip(d) {
        let mut pow = 1.0;
        for slot in m.iter_mut() {
            *slot += p * pow;
            pow *= x;
        }
    }
    Moments {
        m1: m[1],
        m2: m[2],
        var11: m[2] - m[1] * m[1],
        cov12: m[3] - m[1] * m[2],
        var22: m[4] - m[2] * m[2],
        ln_z,
    }
}

/// Damped Newton on the convex dual `ln Z(β, γ) + β·mean + γ·sigma2`.
///
/// The Hessian of the dual is the covariance matrix of `(Ô, Ô²)` under the
/// Gibbs state. Returns `None` when the Hessian becomes too ill-conditioned or
/// the iteration stalls.
fn newton_multipliers(obs: &Observable, mean: f64, sigma2: f64) -> Option<(f64, f64)> {
    let d = obs.eigenvalues();
    let dual = |b: f64, g: f64| gibbs_weights(d, b, g).1 + b * mean + g * sigma2;
    let scale = sigma2.abs().max(1.0);
    let (mut beta, mut gamma) = (0.0, 0.0);
    for _ in 0..MAX_NEWTON_STEPS {
        let m = moments(d, beta, gamma);
        let g1 = mean - m.m1;
        let g2 = sigma2 - m.m2;
        if g1.abs() <= SOLVER_TOL && g2.abs() <= SOLVER_TOL * scale {
            return Some((beta, gamma));
        }
        let (h11, h12, h22) = (m.var11, m.cov12, m.var22);
        let det = h11 * h22 - h12 * h12;
        let half_trace = 0.5 * (h11 + h22);
        let disc = (0.25 * (h11 - h22).powi(2) + h12 * h12).sqrt();
        let (e_max, e_min) = (half_trace + disc, half_trace - disc);
        if !(e_min > 0.0) || e_max / e_min > MAX_CONDITION || det <= 0.0 {
            return None;
        }
        // Newton direction −H⁻¹∇G.
        let step_b = -(h22 * g1 - h12 * g2) / det;
        let step_g = -(-h12 * g1 + h11 * g2) / det;
        let slope = g1 * step_b + g2 * step_g;
        let current = m.ln_z + beta * mean + gamma * sigma2;
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let (nb, ng) = (beta + t * step_b, gamma + t * step_g);
            if dual(nb, ng) <= current + 1e-4 * t * slope {
                beta = nb;
                gamma = ng;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            // Within rounding of the optimum the dual stops decreasing.
            let m = moments(d, beta + step_b, gamma + step_g);
            if (m.m1 - mean).abs() <= ACCEPT_TOL && (m.m2 - sigma2).abs() <= ACCEPT_TOL {
                return Some((beta + step_b, gamma + step_g));
            }
            return None;
        }
    }
    None
}

/// Outer bisection on γ, inner bisection on β for the mean constraint.
///
/// Along the curve `mean(β, γ) = mean` the second moment decreases in γ.
fn nested_bisection(obs: &Observable, mean: f64, sigma2: f64) -> Result<(f64, f64)> {
    let d = obs.eigenvalues();
    let second_moment = |gamma: f64| -> Result<(f64, f64)> {
        let beta = solve_beta(obs, mean, gamma)?;
        Ok((beta, obs.second_moment_of(&gibbs_weights(d, beta, gamma).0)))
    };
    let mut bound = 1.0;
    let mut doublings = 0;
    while second_moment(-bound)?.1 < sigma2 || second_moment(bound)?.1 > sigma2 {
        bound *= 2.0;
        doublings += 1;
        if doublings > MAX_BRACKET_DOUBLINGS {
            return Err(Error::NoConvergence(format!(
                "could not bracket γ for second moment {sigma2}"
            )));
        }
    }
    let (mut lo, mut hi) = (-bound, bound);
    let mut best = (f64::INFINITY, (0.0, 0.0));
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let (beta, s) = second_moment(mid)?;
        let r = s - sigma2;
        if r.abs() < best.0 {
            best = (r.abs(), (beta, mid));
        }
        if r.abs() <= SOLVER_TOL || mid == lo || mid == hi {
            break;
        }
        if r > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(best.1)
}
