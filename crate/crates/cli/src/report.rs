//! Text reports for `classify` and `infer`.

use std::fmt::Write as _;

use qinfer::entanglement::EntanglementReport;
use qinfer::maxent::{maxent_single, min_sigma2_state, Observable};
use qinfer::qcore::{bell_basis, expectation, von_neumann_entropy, LogBase, StateVector4};
use qinfer::schemes::{
    bell_operator, classify_region_with_tol, operator_a, operator_d, OpASchemeParams, RegionVerdict,
};

use crate::config::{Basis, ObservableSpec, RunConfig, Scheme};
use crate::error::{invalid, CliResult};
use crate::format::real;

pub fn classify(config: &RunConfig, a: f64, alpha: f64) -> CliResult<(RegionVerdict, String)> {
    config.validate()?;
    let (kappa, lambda) = (config.kappa, config.lambda);
    if !(kappa > 0.0 && lambda <= 0.0) {
        return Err(invalid(format!(
            "need kappa > 0 >= lambda, got kappa = {kappa}, lambda = {lambda}"
        )));
    }
    // Validates the mean; α is checked by the classifier itself.
    OpASchemeParams::new(kappa, lambda, a, 0.0)?;
    let params = OpASchemeParams {
        kappa,
        lambda,
        a,
        alpha_s: alpha,
    };
    let v = classify_region_with_tol(&params, config.tol)?;
    let mut text = String::new();
    writeln!(
        text,
        "a = {}, alpha = {}, kappa = {}, lambda = {}",
        real(a),
        real(alpha),
        real(kappa),
        real(lambda)
    )
    .unwrap();
    writeln!(text, "true_separable: {}", v.true_separable).unwrap();
    writeln!(text, "ms_separable: {}", v.ms_separable).unwrap();
    writeln!(text, "me_separable: {}", v.me_separable).unwrap();
    writeln!(text, "region: {}", v.region).unwrap();
    Ok((v, text))
}

pub fn build_observable(spec: &ObservableSpec) -> CliResult<Observable> {
    Ok(match spec {
        ObservableSpec::Bell => bell_operator(),
        ObservableSpec::OpA { kappa, lambda } => operator_a(*kappa, *lambda)?,
        ObservableSpec::OpD {
            alpha1,
            alpha2,
            theta,
        } => operator_d(*alpha1, *alpha2, *theta)?,
        ObservableSpec::Custom { eigenvalues, basis } => {
            let vectors = match basis {
                Basis::Product => [0, 1, 2, 3].map(StateVector4::basis),
                Basis::Bell => bell_basis(),
            };
            Observable::new(format!("custom ({basis} basis)"), *eigenvalues, vectors)?
        }
    })
}

pub fn infer(
    config: &RunConfig,
    spec: &ObservableSpec,
    mean: f64,
    scheme: Scheme,
) -> CliResult<String> {
    config.validate()?;
    let obs = build_observable(spec)?;
    let rho = match scheme {
        Scheme::MaxEnt => maxent_single(&obs, mean)?.rho,
        Scheme::MinSigma2 => min_sigma2_state(&obs, mean)?,
    };
    let report = EntanglementReport::with_tolerance(&rho, config.tol)?;
    let achieved = expectation(&rho, &obs.matrix())?;
    let second = expectation(&rho, &obs.squared_matrix())?;

    let mut text = String::new();
    writeln!(text, "observable: {spec}").unwrap();
    writeln!(text, "scheme: {scheme}").unwrap();
    writeln!(
        text,
        "density matrix (product basis |00>,|01>,|10>,|11>; re,im):"
    )
    .unwrap();
    for i in 0..4 {
        let cells: Vec<String> = (0..4)
            .map(|j| {
                let z = rho.matrix()[(i, j)];
                format!("{},{}", real(z.re), real(z.im))
            })
            .collect();
        writeln!(text, "  {}", cells.join("  ")).unwrap();
    }
    writeln!(text, "mean: {}", real(achieved)).unwrap();
    writeln!(text, "sigma2: {}", real(second)).unwrap();
    writeln!(
        text,
        "entropy_bits: {}",
        real(von_neumann_entropy(&rho, LogBase::Two)?)
    )
    .unwrap();
    writeln!(text, "concurrence: {}", real(report.concurrence)).unwrap();
    writeln!(text, "eof: {}", real(report.eof)).unwrap();
    writeln!(
        text,
        "min_pt_eigenvalue: {}",
        real(report.min_pt_eigenvalue)
    )
    .unwrap();
    writeln!(
        text,
        "separable: {}",
        if report.separable { "true" } else { "false" }
    )
    .unwrap();
    writeln!(
        text,
        "verdict: {}",
        if report.separable {
            "separable"
        } else {
            "entangled"
        }
    )
    .unwrap();
    Ok(text)
}
