//! The three inference scenarios: the Bell-CHSH observable, the observable Â
//! (non-diagonal in the Bell basis) and the nondegenerate observable D̂.
//!
//! Each scenario offers closed-form constructors for the standard MaxEnt
//! state, the minimum-σ² state and a family of "true" states, plus the
//! separability analysis built on them.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use crate::entanglement::{min_pt_eigenvalue, SEPARABILITY_TOL};
use crate::error::{Error, Result};
use crate::maxent::{maxent_single, Observable, DEGENERACY_TOL};
use crate::qcore::{
    phi_minus, phi_plus, psi_minus, psi_plus, ComplexMatrix4, DensityMatrix, StateVector4, SIGMA_X,
    SIGMA_Z,
};

const PARAM_TOL: f64 = 1e-12;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

// ---------------------------------------------------------------------------
// Bell-CHSH observable
// ---------------------------------------------------------------------------

/// Largest attainable `|⟨B̂⟩|`.
pub const BELL_MAX: f64 = 2.0 * SQRT_2;

/// `B̂ = 2√2(|Φ⁺⟩⟨Φ⁺| − |Ψ⁻⟩⟨Ψ⁻|)`, eigenvectors `(Φ⁺, Φ⁻, Ψ⁺, Ψ⁻)`.
pub fn bell_operator() -> Observable {
    Observable::new(
        "bell",
        [BELL_MAX, 0.0, 0.0, -BELL_MAX],
        [phi_plus(), phi_minus(), psi_plus(), psi_minus()],
    )
    .expect("Bell basis is orthonormal")
}

/// `√2(σx⊗σx + σz⊗σz)` built from Pauli products.
pub fn bell_operator_from_paulis() -> ComplexMatrix4 {
    (ComplexMatrix4::kron(&SIGMA_X, &SIGMA_X) + ComplexMatrix4::kron(&SIGMA_Z, &SIGMA_Z))
        .scale(SQRT_2)
}

fn bell_fraction(b: f64) -> Result<f64> {
    if !(b.abs() <= BELL_MAX + PARAM_TOL) {
        return Err(Error::MeanOutOfRange {
            mean: b,
            min: -BELL_MAX,
            max: BELL_MAX,
        });
    }
    Ok((b / BELL_MAX).clamp(-1.0, 1.0))
}

fn bell_state(phi_p: f64, psi_m: f64, rest_each: f64) -> Result<DensityMatrix> {
    DensityMatrix::from_spectrum(
        &[phi_p, psi_m, rest_each, rest_each],
        &[phi_plus(), psi_minus(), psi_plus(), phi_minus()],
    )
}

/// Standard MaxEnt state for `⟨B̂⟩ = b`.
///
/// With `u = b/(2√2)` the weights on `(Φ⁺, Ψ⁻, Ψ⁺, Φ⁻)` are
/// `((1+u)², (1−u)², 1−u², 1−u²)/4`.
pub fn rho_me_bell(b: f64) -> Result<DensityMatrix> {
    let u = bell_fraction(b)?;
    bell_state(
        0.25 * (1.0 + u) * (1.0 + u),
        0.25 * (1.0 - u) * (1.0 - u),
        0.25 * (1.0 - u * u),
    )
}

/// Minimum-σ² state for `⟨B̂⟩ = b`.
///
/// `b = 0` returns the `b → 0⁺` limit `(|Ψ⁺⟩⟨Ψ⁺| + |Φ⁻⟩⟨Φ⁻|)/2`.
pub fn rho_ms_bell(b: f64) -> Result<DensityMatrix> {
    let u = bell_fraction(b)?;
    if u >= 0.0 {
        bell_state(u, 0.0, 0.5 * (1.0 - u))
    } else {
        bell_state(0.0, -u, 0.5 * (1.0 + u))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellSchemeParams {
    pub b: f64,
    pub alpha_t: f64,
}

impl BellSchemeParams {
    pub fn new(b: f64, alpha_t: f64) -> Result<Self> {
        let u = bell_fraction(b)?;
        if !(alpha_t >= 0.0) || u + alpha_t < -PARAM_TOL || 1.0 - u - 2.0 * alpha_t < -PARAM_TOL {
            return Err(invalid(format!(
                "Bell true-state weights negative for b = {b}, alpha = {alpha_t}"
            )));
        }
        Ok(Self { b, alpha_t })
    }
}

/// True-state family `(u+α)Φ⁺ + αΨ⁻ + ½(1−u−2α)(Φ⁻ + Ψ⁺)`, `u = b/(2√2)`.
pub fn rho_true_bell(params: &BellSchemeParams) -> Result<DensityMatrix> {
    let p = BellSchemeParams::new(params.b, params.alpha_t)?;
    let u = bell_fraction(p.b)?;
    let a = p.alpha_t;
    bell_state((u + a).max(0.0), a, (0.5 * (1.0 - u - 2.0 * a)).max(0.0))
}

// ---------------------------------------------------------------------------
// Observable Â
// ---------------------------------------------------------------------------

/// Eigenvectors of Â: `(|11⟩+|00⟩)/√2`, `(|11⟩−|00⟩)/√2`, `|01⟩`, `|10⟩`.
pub fn operator_a_basis() -> [StateVector4; 4] {
    [
        phi_plus(),
        phi_minus(),
        StateVector4::basis(1),
        StateVector4::basis(2),
    ]
}

/// `Â = κ(|1⟩⟨1| + |3⟩⟨3|) + λ|2⟩⟨2|` with `κ ≥ 0 ≥ λ`.
pub fn operator_a(kappa: f64, lambda: f64) -> Result<Observable> {
    if !(kappa >= 0.0 && lambda <= 0.0) || !kappa.is_finite() || !lambda.is_finite() {
        return Err(invalid(format!(
            "operator A needs kappa >= 0 >= lambda, got kappa = {kappa}, lambda = {lambda}"
        )));
    }
    Observable::new(
        format!("A(kappa={kappa}, lambda={lambda})"),
        [kappa, lambda, kappa, 0.0],
        operator_a_basis(),
    )
}

/// Parameters of the Â scenario. `alpha_s` only enters the true-state family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpASchemeParams {
    pub kappa: f64,
    pub lambda: f64,
    pub a: f64,
    pub alpha_s: f64,
}

impl OpASchemeParams {
    pub fn new(kappa: f64, lambda: f64, a: f64, alpha_s: f64) -> Result<Self> {
        let p = Self {
            kappa,
            lambda,
            a,
            alpha_s,
        };
        p.check_observable()?;
        p.check_mean()?;
        if !p.is_physical() {
            return Err(invalid(format!(
                "alpha = {alpha_s} outside [0, a/kappa = {}]",
                p.a_over_kappa()
            )));
        }
        Ok(p)
    }

    pub fn a_over_kappa(&self) -> f64 {
        self.a / self.kappa
    }

    fn check_observable(&self) -> Result<()> {
        if !(self.kappa > 0.0 && self.lambda <= 0.0) {
            return Err(invalid(format!(
                "need kappa > 0 >= lambda, got kappa = {}, lambda = {}",
                self.kappa, self.lambda
            )));
        }
        Ok(())
    }

    fn check_mean(&self) -> Result<()> {
        let x = self.a_over_kappa();
        if !(-PARAM_TOL..=1.0 + PARAM_TOL).contains(&x) {
            return Err(Error::MeanOutOfRange {
                mean: self.a,
                min: 0.0,
                max: self.kappa,
            });
        }
        Ok(())
    }

    /// `0 ≤ α ≤ a/κ` with a valid observable and mean.
    pub fn is_physical(&self) -> bool {
        self.check_observable().is_ok()
            && self.check_mean().is_ok()
            && self.alpha_s >= -PARAM_TOL
            && self.alpha_s <= self.a_over_kappa() + PARAM_TOL
    }
}

/// Minimum-σ² state `(a/2κ)(|1⟩⟨1| + |3⟩⟨3|) + (1 − a/κ)|4⟩⟨4|`; independent of λ.
pub fn rho_ms_a(params: &OpASchemeParams) -> Result<DensityMatrix> {
    params.check_observable()?;
    params.check_mean()?;
    let x = params.a_over_kappa().clamp(0.0, 1.0);
    DensityMatrix::from_spectrum(&[0.5 * x, 0.0, 0.5 * x, 1.0 - x], &operator_a_basis())
}

/// Standard MaxEnt state `exp(−βÂ)/Z` for `⟨Â⟩ = a`.
pub fn rho_me_a(params: &OpASchemeParams) -> Result<DensityMatrix> {
    params.check_observable()?;
    params.check_mean()?;
    let obs = operator_a(params.kappa, params.lambda)?;
    Ok(maxent_single(&obs, params.a)?.rho)
}

fn check_ratio(x: f64) -> Result<()> {
    if !(-PARAM_TOL..=1.0 + PARAM_TOL).contains(&x) {
        return Err(Error::MeanOutOfRange {
            mean: x,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(())
}

/// The only partial-transpose eigenvalue of the minimum-σ² Â state that can be
/// negative, as a function of `x = a/κ`:
/// `δ = −x/4 + 1/2 − ¼√(x(10x − 12) + 4)`.
pub fn delta_a(a_over_kappa: f64) -> Result<f64> {
    check_ratio(a_over_kappa)?;
    let x = a_over_kappa;
    Ok(-0.25 * x + 0.5 - 0.25 * (x * (10.0 * x - 12.0) + 4.0).sqrt())
}

/// True-state family `(a/κ − α)|1⟩⟨1| + α|3⟩⟨3| + (1 − a/κ)|4⟩⟨4|`.
pub fn rho_true_a(params: &OpASchemeParams) -> Result<DensityMatrix> {
    let p = OpASchemeParams::new(params.kappa, params.lambda, params.a, params.alpha_s)?;
    let x = p.a_over_kappa().clamp(0.0, 1.0);
    let alpha = p.alpha_s.clamp(0.0, x);
    DensityMatrix::from_spectrum(&[x - alpha, 0.0, alpha, 1.0 - x], &operator_a_basis())
}

/// Smallest partial-transpose eigenvalue of the Â true state:
/// `Q = ½ − x/2 + α/2 − ½√(2x² − 2x + 1 − 2α + 2α²)` with `x = a/κ`.
/// Separable iff `Q ≥ 0`.
pub fn q_separability(a_over_kappa: f64, alpha_s: f64) -> Result<f64> {
    check_ratio(a_over_kappa)?;
    let x = a_over_kappa;
    if !(alpha_s >= -PARAM_TOL && alpha_s <= x + PARAM_TOL) {
        return Err(invalid(format!(
            "alpha = {alpha_s} outside [0, a/kappa = {x}]"
        )));
    }
    let a = alpha_s;
    let disc = 2.0 * x * x - 2.0 * x + 1.0 - 2.0 * a + 2.0 * a * a;
    Ok(0.5 - 0.5 * x + 0.5 * a - 0.5 * disc.max(0.0).sqrt())
}

/// The `Q = 0` curve solved for `a/κ`: `a/κ = 2√α − α`, `α ∈ [0, 1]`.
pub fn q_boundary(alpha_s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha_s) {
        return Err(invalid(format!("alpha = {alpha_s} outside [0, 1]")));
    }
    Ok(2.0 * alpha_s.sqrt() - alpha_s)
}

/// Lower end of the bracket searched by [`critical_a`].
pub const CRITICAL_BRACKET: (f64, f64) = (0.5, 1.0);
const CRITICAL_STEPS: usize = 60;

/// `a_c/κ` above which the standard MaxEnt Â state is entangled, for a given
/// `−λ/κ`. Bisects the sign change of the smallest partial-transpose eigenvalue.
pub fn critical_a(lambda_over_kappa_neg: f64) -> Result<f64> {
    if !(lambda_over_kappa_neg >= 0.0) || !lambda_over_kappa_neg.is_finite() {
        return Err(invalid(format!(
            "-lambda/kappa must be >= 0, got {lambda_over_kappa_neg}"
        )));
    }
    let obs = operator_a(1.0, -lambda_over_kappa_neg)?;
    let min_pt = |a: f64| -> Result<f64> { min_pt_eigenvalue(&maxent_single(&obs, a)?.rho) };
    let (mut lo, mut hi) = CRITICAL_BRACKET;
    let (f_lo, f_hi) = (min_pt(lo)?, min_pt(hi)?);
    if !(f_lo >= 0.0 && f_hi < 0.0) {
        return Err(Error::NoConvergence(format!(
            "separability change not bracketed in [{lo}, {hi}]: min PT eigenvalues {f_lo:e}, {f_hi:e}"
        )));
    }
    for _ in 0..CRITICAL_STEPS {
        let mid = 0.5 * (lo + hi);
        if min_pt(mid)? >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Regions of the `(a, α)` plane, comparing the true state with the
/// minimum-σ² inference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// True state separable, minimum-σ² state entangled (fake entanglement).
    I,
    /// True state entangled, minimum-σ² state separable.
    II,
    AgreeSeparable,
    AgreeEntangled,
    Unphysical,
}

impl Region {
    pub fn label(&self) -> &'static str {
        match self {
            Region::I => "I",
            Region::II => "II",
            Region::AgreeSeparable => "agree_separable",
            Region::AgreeEntangled => "agree_entangled",
            Region::Unphysical => "unphysical",
        }
    }
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Separability of the true, minimum-σ² and standard MaxEnt states at one point.
///
/// Unphysical points report `false` for all three flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionVerdict {
    pub true_separable: bool,
    pub ms_separable: bool,
    pub me_separable: bool,
    pub region: Region,
}

pub fn classify_region(params: &OpASchemeParams) -> Result<RegionVerdict> {
    classify_region_with_tol(params, SEPARABILITY_TOL)
}

/// As [`classify_region`], with a custom slack on the partial-transpose spectrum.
pub fn classify_region_with_tol(params: &OpASchemeParams, tol: f64) -> Result<RegionVerdict> {
    if !params.is_physical() {
        return Ok(RegionVerdict {
            true_separable: false,
            ms_separable: false,
            me_separable: false,
            region: Region::Unphysical,
        });
    }
    let separable = |rho: DensityMatrix| -> Result<bool> { Ok(min_pt_eigenvalue(&rho)? >= -tol) };
    let true_separable = separable(rho_true_a(params)?)?;
    let ms_separable = separable(rho_ms_a(params)?)?;
    let me_separable = separable(rho_me_a(params)?)?;
    let region = match (true_separable, ms_separable) {
        (true, false) => Region::I,
        (false, true) => Region::II,
        (true, true) => Region::AgreeSeparable,
        (false, false) => Region::AgreeEntangled,
    };
    Ok(RegionVerdict {
        true_separable,
        ms_separable,
        me_separable,
        region,
    })
}

// ---------------------------------------------------------------------------
// Observable D̂
// ---------------------------------------------------------------------------

/// Eigenvectors of D̂: `Φ⁺`, `Φ⁻`, `sinθ|10⟩ + cosθ|01⟩`, `cosθ|10⟩ − sinθ|01⟩`.
pub fn operator_d_basis(theta: f64) -> [StateVector4; 4] {
    let (s, c) = theta.sin_cos();
    [
        phi_plus(),
        phi_minus(),
        StateVector4::normalized([0.0, c, s, 0.0].map(Into::into)).expect("unit vector"),
        StateVector4::normalized([0.0, -s, c, 0.0].map(Into::into)).expect("unit vector"),
    ]
}

/// `D̂ = |1⟩⟨1| + α₁|2⟩⟨2| + α₂|3⟩⟨3|` with `α₂ > α₁ > 1`.
pub fn operator_d(alpha1: f64, alpha2: f64, theta: f64) -> Result<Observable> {
    if !(alpha2 > alpha1 && alpha1 > 1.0) || !alpha2.is_finite() {
        return Err(invalid(format!(
            "operator D needs alpha2 > alpha1 > 1, got alpha1 = {alpha1}, alpha2 = {alpha2}"
        )));
    }
    if !theta.is_finite() {
        return Err(invalid(format!("theta = {theta} is not finite")));
    }
    Observable::new(
        format!("D(alpha1={alpha1}, alpha2={alpha2}, theta={theta})"),
        [1.0, alpha1, alpha2, 0.0],
        operator_d_basis(theta),
    )
}

/// Maps any angle onto `[0, π/2]`.
///
/// D̂(θ + π) equals D̂(θ), and D̂(π − θ) is D̂(θ) conjugated by the local unitary
/// `diag(1, i) ⊗ diag(1, −i)`, so every entanglement quantity is unchanged.
pub fn reduce_theta(theta: f64) -> f64 {
    let t = theta.rem_euclid(PI);
    if t > FRAC_PI_2 {
        PI - t
    } else {
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpDSchemeParams {
    pub alpha1: f64,
    pub alpha2: f64,
    /// Always within `[0, π/2]`, see [`reduce_theta`].
    pub theta: f64,
    pub d: f64,
}

impl OpDSchemeParams {
    pub fn new(alpha1: f64, alpha2: f64, theta: f64, d: f64) -> Result<Self> {
        operator_d(alpha1, alpha2, theta)?;
        if !(d >= -PARAM_TOL && d <= alpha2 + PARAM_TOL) {
            return Err(Error::MeanOutOfRange {
                mean: d,
                min: 0.0,
                max: alpha2,
            });
        }
        Ok(Self {
            alpha1,
            alpha2,
            theta: reduce_theta(theta),
            d: d.clamp(0.0, alpha2),
        })
    }

    pub fn observable(&self) -> Result<Observable> {
        operator_d(self.alpha1, self.alpha2, self.theta)
    }
}

/// Minimum-σ² state for D̂, piecewise in `d`:
///
/// * `[0, 1]`: `d|1⟩⟨1| + (1 − d)|4⟩⟨4|`
/// * `[1, α₁]`: `(α₁ − d)/(α₁ − 1)|1⟩⟨1| + (d − 1)/(α₁ − 1)|2⟩⟨2|`
/// * `[α₁, α₂]`: `(α₂ − d)/(α₂ − α₁)|2⟩⟨2| + (d − α₁)/(α₂ − α₁)|3⟩⟨3|`
pub fn rho_ms_d(params: &OpDSchemeParams) -> Result<DensityMatrix> {
    let p = OpDSchemeParams::new(params.alpha1, params.alpha2, params.theta, params.d)?;
    let (a1, a2, d) = (p.alpha1, p.alpha2, p.d);
    let weights = if d <= 1.0 {
        [d, 0.0, 0.0, 1.0 - d]
    } else if d <= a1 {
        [(a1 - d) / (a1 - 1.0), (d - 1.0) / (a1 - 1.0), 0.0, 0.0]
    } else {
        [0.0, (a2 - d) / (a2 - a1), (d - a1) / (a2 - a1), 0.0]
    };
    DensityMatrix::from_spectrum(&weights, &operator_d_basis(p.theta))
}

/// Standard MaxEnt state `exp(−βD̂)/Z` for `⟨D̂⟩ = d`.
pub fn rho_me_d(params: &OpDSchemeParams) -> Result<DensityMatrix> {
    let p = OpDSchemeParams::new(params.alpha1, params.alpha2, params.theta, params.d)?;
    Ok(maxent_single(&p.observable()?, p.d)?.rho)
}

/// An observable with nondegenerate spectrum rescaled to the D̂ form.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedObservable {
    /// Eigenvalues `(0, 1, α₁, α₂)` on the input eigenvectors.
    pub observable: Observable,
    pub alpha1: f64,
    pub alpha2: f64,
    /// `d₁`; the original is `offset + scale·D̂`.
    pub offset: f64,
    /// `d₂ − d₁`.
    pub scale: f64,
}

impl NormalizedObservable {
    /// Mean of the normalized observable for a mean of the original one.
    pub fn normalize_mean(&self, mean: f64) -> f64 {
        (mean - self.offset) / self.scale
    }
}

/// `D̂ = (D̃ − d₁)/(d₂ − d₁)` for `d₁ < d₂ < d₃ < d₄`.
pub fn normalize_observable(
    eigenvalues: [f64; 4],
    eigenvectors: [StateVector4; 4],
) -> Result<NormalizedObservable> {
    for pair in eigenvalues.windows(2) {
        if (pair[1] - pair[0]).abs() <= DEGENERACY_TOL {
            return Err(Error::DegenerateSpectrum(format!(
                "eigenvalues {} and {} coincide",
                pair[0], pair[1]
            )));
        }
        if pair[1] < pair[0] {
            return Err(invalid(format!(
                "eigenvalues must be ascending, got {eigenvalues:?}"
            )));
        }
    }
    let offset = eigenvalues[0];
    let scale = eigenvalues[1] - eigenvalues[0];
    let normalized = eigenvalues.map(|d| (d - offset) / scale);
    let observable = Observable::new(
        "normalized",
        [0.0, 1.0, normalized[2], normalized[3]],
        eigenvectors,
    )?;
    Ok(NormalizedObservable {
        observable,
        alpha1: normalized[2],
        alpha2: normalized[3],
        offset,
        scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::{is_separable, partial_transpose};
    use crate::maxent::min_sigma2_state;
    use crate::qcore::{eigh, expectation, Complex64};

    fn a_params(a: f64, alpha: f64) -> OpASchemeParams {
        OpASchemeParams::new(1.0, -1.0, a, alpha).unwrap()
    }

    #[test]
    fn bell_operator_matches_pauli_form() {
        let b = bell_operator().matrix();
        assert!(b.max_abs_diff(&bell_operator_from_paulis()) < 1e-12);
        assert!(b.trace().norm() < 1e-12);
        let projector_form = (ComplexMatrix4::projector(&phi_plus())
            - ComplexMatrix4::projector(&psi_minus()))
        .scale(BELL_MAX);
        assert!(b.max_abs_diff(&projector_form) < 1e-12);
        // ⟨00|B̂|11⟩ = √2 from σx⊗σx.
        assert!((b[(0, 3)] - Complex64::new(SQRT_2, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn bell_me_examples() {
        let rho = rho_me_bell(0.0).unwrap();
        assert!(
            rho.matrix()
                .max_abs_diff(DensityMatrix::maximally_mixed().matrix())
                < 1e-15
        );
        let rho = rho_me_bell(BELL_MAX).unwrap();
        assert!(
            rho.matrix()
                .max_abs_diff(&ComplexMatrix4::projector(&phi_plus()))
                < 1e-15
        );
        let rho = rho_me_bell(SQRT_2).unwrap();
        let pops = [phi_plus(), psi_minus(), psi_plus(), phi_minus()].map(|v| rho.population(&v));
        let want = [9.0 / 16.0, 1.0 / 16.0, 3.0 / 16.0, 3.0 / 16.0];
        for (x, w) in pops.iter().zip(want) {
            assert!((x - w).abs() < 1e-15);
        }
        assert!(matches!(
            rho_me_bell(3.0),
            Err(Error::MeanOutOfRange { .. })
        ));
    }

    #[test]
    fn bell_me_is_the_gibbs_state() {
        for &b in &[-2.0, -0.5, 0.3, 1.7, 2.7] {
            let closed = rho_me_bell(b).unwrap();
            let solved = maxent_single(&bell_operator(), b).unwrap().rho;
            assert!(closed.matrix().max_abs_diff(solved.matrix()) < 1e-10);
        }
    }

    #[test]
    fn bell_ms_examples() {
        let top = rho_ms_bell(BELL_MAX).unwrap();
        assert!(
            top.matrix()
                .max_abs_diff(&ComplexMatrix4::projector(&phi_plus()))
                < 1e-15
        );
        let bottom = rho_ms_bell(-BELL_MAX).unwrap();
        assert!(
            bottom
                .matrix()
                .max_abs_diff(&ComplexMatrix4::projector(&psi_minus()))
                < 1e-15
        );
        let edge = rho_ms_bell(SQRT_2).unwrap();
        assert!((edge.population(&phi_plus()) - 0.5).abs() < 1e-15);
        let zero = rho_ms_bell(0.0).unwrap();
        assert!((zero.population(&psi_plus()) - 0.5).abs() < 1e-15);
        assert!((zero.population(&phi_minus()) - 0.5).abs() < 1e-15);
        for &b in &[-2.5, -1.0, 0.0, 1.0, 2.5] {
            let generic = min_sigma2_state(&bell_operator(), b).unwrap();
            assert!(
                rho_ms_bell(b)
                    .unwrap()
                    .matrix()
                    .max_abs_diff(generic.matrix())
                    < 1e-14
            );
        }
    }

    #[test]
    fn bell_true_examples() {
        let b = 1.3;
        let t = rho_true_bell(&BellSchemeParams::new(b, 0.0).unwrap()).unwrap();
        assert!(t.matrix().max_abs_diff(rho_ms_bell(b).unwrap().matrix()) < 1e-15);
        let t = rho_true_bell(&BellSchemeParams::new(0.0, 0.25).unwrap()).unwrap();
        assert!(
            t.matrix()
                .max_abs_diff(DensityMatrix::maximally_mixed().matrix())
                < 1e-15
        );
        let bop = bell_operator().matrix();
        for &(b, alpha) in &[(0.5, 0.1), (-1.0, 0.4), (2.0, 0.05)] {
            let t = rho_true_bell(&BellSchemeParams::new(b, alpha).unwrap()).unwrap();
            assert!((expectation(&t, &bop).unwrap() - b).abs() < 1e-12);
        }
        assert!(BellSchemeParams::new(2.0, 0.3).is_err());
        assert!(BellSchemeParams::new(0.0, -0.1).is_err());
    }

    #[test]
    fn operator_a_examples() {
        let a = operator_a(1.0, -1.0).unwrap().matrix();
        assert!((a.trace() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let v2 = phi_minus();
        assert!((a.sandwich(&v2, &v2).re + 1.0).abs() < 1e-15);
        let p = operator_a(1.0, 0.0).unwrap().matrix();
        assert!(((p * p) - p).max_abs() < 1e-15);
        assert!(operator_a(-1.0, -1.0).is_err());
        assert!(operator_a(1.0, 0.5).is_err());
    }

    #[test]
    fn rho_ms_a_examples() {
        let zero = rho_ms_a(&a_params(0.0, 0.0)).unwrap();
        assert!(
            zero.matrix()
                .max_abs_diff(&ComplexMatrix4::projector(&StateVector4::basis(2)))
                < 1e-15
        );
        let top = rho_ms_a(&a_params(1.0, 0.0)).unwrap();
        let want = (ComplexMatrix4::projector(&phi_plus())
            + ComplexMatrix4::projector(&StateVector4::basis(1)))
        .scale(0.5);
        assert!(top.matrix().max_abs_diff(&want) < 1e-15);
        let edge = rho_ms_a(&a_params(8.0 / 9.0, 0.0)).unwrap();
        assert!(min_pt_eigenvalue(&edge).unwrap().abs() < 1e-9);
    }

    #[test]
    fn delta_examples() {
        assert!(delta_a(8.0 / 9.0).unwrap().abs() < 1e-15);
        assert!(delta_a(0.0).unwrap().abs() < 1e-15);
        let d1 = delta_a(1.0).unwrap();
        assert!((d1 - (0.25 - SQRT_2 / 4.0)).abs() < 1e-15);
        let pt = eigh(&partial_transpose(&rho_ms_a(&a_params(1.0, 0.0)).unwrap())).unwrap();
        assert!((pt.min_eigenvalue() - d1).abs() < 1e-12);
        assert!(delta_a(1.1).is_err());
    }

    #[test]
    fn rho_true_a_examples() {
        let sep = rho_true_a(&a_params(0.6, 0.6)).unwrap();
        assert!(is_separable(&sep).unwrap());
        let bell = rho_true_a(&a_params(1.0, 0.0)).unwrap();
        assert!(
            bell.matrix()
                .max_abs_diff(&ComplexMatrix4::projector(&phi_plus()))
                < 1e-15
        );
        let p = a_params(0.9, 0.9);
        assert!((q_separability(0.9, 0.9).unwrap() - 0.1).abs() < 1e-15);
        assert!(is_separable(&rho_true_a(&p).unwrap()).unwrap());
        assert!(OpASchemeParams::new(1.0, -1.0, 0.5, 0.6).is_err());
    }

    #[test]
    fn q_examples() {
        assert!((q_separability(1.0, 0.0).unwrap() + 0.5).abs() < 1e-15);
        let q = q_separability(0.85, 0.0).unwrap();
        assert!((q - (0.075 - 0.5 * 0.745f64.sqrt())).abs() < 1e-15);
        assert!(q < 0.0);
        for i in 0..=20 {
            let a = i as f64 / 20.0;
            let q = q_separability(a, a).unwrap();
            assert!((q - a.min(1.0 - a)).abs() < 1e-12);
        }
        for i in 1..=20 {
            let alpha = i as f64 / 20.0;
            let x = q_boundary(alpha).unwrap();
            assert!(q_separability(x, alpha).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn regions() {
        assert_eq!(
            classify_region(&a_params(0.9, 0.9)).unwrap().region,
            Region::I
        );
        assert_eq!(
            classify_region(&a_params(0.85, 0.0)).unwrap().region,
            Region::II
        );
        assert_eq!(
            classify_region(&a_params(0.5, 0.25)).unwrap().region,
            Region::AgreeSeparable
        );
        let bad = OpASchemeParams {
            kappa: 1.0,
            lambda: -1.0,
            a: 0.3,
            alpha_s: 0.5,
        };
        assert_eq!(classify_region(&bad).unwrap().region, Region::Unphysical);
    }

    #[test]
    fn operator_d_examples() {
        let d = operator_d(2.0, 3.0, FRAC_PI_2 / 2.0).unwrap();
        let v = d.eigenvectors();
        assert!((v[2].inner(&psi_plus()).norm() - 1.0).abs() < 1e-15);
        assert!((v[3].inner(&psi_minus()).norm() - 1.0).abs() < 1e-15);
        let d0 = operator_d(2.0, 3.0, 0.0).unwrap();
        assert_eq!(d0.eigenvectors()[2], StateVector4::basis(1));
        assert_eq!(d0.eigenvectors()[3], StateVector4::basis(2));
        let tr = operator_d(2.5, 4.0, 0.3).unwrap().matrix().trace().re;
        assert!((tr - 7.5).abs() < 1e-14);
        assert!(operator_d(3.0, 2.0, 0.0).is_err());
        assert!(operator_d(1.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn theta_reduction() {
        assert_eq!(reduce_theta(0.3), 0.3);
        assert!((reduce_theta(PI - 0.3) - 0.3).abs() < 1e-15);
        assert!((reduce_theta(PI + 0.3) - 0.3).abs() < 1e-14);
        assert!((reduce_theta(-0.3) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn rho_ms_d_examples() {
        let p = |d: f64| OpDSchemeParams::new(2.0, 3.0, 0.4, d).unwrap();
        let basis = operator_d_basis(0.4);
        let half = rho_ms_d(&p(0.5)).unwrap();
        let want = DensityMatrix::from_spectrum(&[0.5, 0.5], &[basis[0], basis[3]]).unwrap();
        assert!(half.matrix().max_abs_diff(want.matrix()) < 1e-15);
        let mid = rho_ms_d(&p(1.5)).unwrap();
        let want = DensityMatrix::from_spectrum(&[0.5, 0.5], &[basis[0], basis[1]]).unwrap();
        assert!(mid.matrix().max_abs_diff(want.matrix()) < 1e-15);
        let one = rho_ms_d(&p(1.0)).unwrap();
        let below = rho_ms_d(&p(1.0 - 1e-12)).unwrap();
        assert!(
            one.matrix()
                .max_abs_diff(&ComplexMatrix4::projector(&basis[0]))
                < 1e-15
        );
        assert!(below.matrix().max_abs_diff(one.matrix()) < 1e-11);
        assert!(OpDSchemeParams::new(2.0, 3.0, 0.0, 3.5).is_err());
    }

    #[test]
    fn rho_me_d_examples() {
        let p = OpDSchemeParams::new(2.0, 3.0, 0.7, 1.5).unwrap();
        let rho = rho_me_d(&p).unwrap();
        assert!(
            rho.matrix()
                .max_abs_diff(DensityMatrix::maximally_mixed().matrix())
                < 1e-10
        );
        let basis = operator_d_basis(0.7);
        let low = rho_me_d(&OpDSchemeParams::new(2.0, 3.0, 0.7, 0.0).unwrap()).unwrap();
        assert!(
            low.matrix()
                .max_abs_diff(&ComplexMatrix4::projector(&basis[3]))
                < 1e-15
        );
        let high = rho_me_d(&OpDSchemeParams::new(2.0, 3.0, 0.7, 3.0).unwrap()).unwrap();
        assert!(
            high.matrix()
                .max_abs_diff(&ComplexMatrix4::projector(&basis[2]))
                < 1e-15
        );
    }

    #[test]
    fn normalization() {
        let basis = [0, 1, 2, 3].map(StateVector4::basis);
        let n = normalize_observable([0.0, 1.0, 2.0, 3.0], basis).unwrap();
        assert_eq!((n.alpha1, n.alpha2), (2.0, 3.0));
        let n = normalize_observable([5.0, 7.0, 9.0, 13.0], basis).unwrap();
        assert_eq!((n.alpha1, n.alpha2), (2.0, 4.0));
        assert_eq!(n.observable.eigenvalues(), &[0.0, 1.0, 2.0, 4.0]);
        assert!(matches!(
            normalize_observable([0.0, 1.0, 1.0, 3.0], basis),
            Err(Error::DegenerateSpectrum(_))
        ));
        assert!(normalize_observable([0.0, 2.0, 1.0, 3.0], basis).is_err());
    }

    #[test]
    fn normalization_preserves_min_sigma2_state() {
        let basis = operator_d_basis(0.9);
        let raw = [-1.0, 0.5, 2.0, 4.0];
        let original = Observable::new("raw", raw, basis).unwrap();
        let n = normalize_observable(raw, basis).unwrap();
        for &m in &[-0.5, 0.5, 1.0, 3.0] {
            let a = min_sigma2_state(&original, m).unwrap();
            let b = min_sigma2_state(&n.observable, n.normalize_mean(m)).unwrap();
            assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-12);
        }
    }
}
