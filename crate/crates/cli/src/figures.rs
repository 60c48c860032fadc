//! Figure data as tables of entanglement-of-formation curves.

use rayon::prelude::*;

use qinfer::entanglement::entanglement_of_formation;
use qinfer::qcore::DensityMatrix;
use qinfer::schemes::{
    critical_a, q_boundary, rho_me_a, rho_me_bell, rho_me_d, rho_ms_a, rho_ms_bell, rho_ms_d,
    rho_true_a, rho_true_bell, BellSchemeParams, OpASchemeParams, OpDSchemeParams, BELL_MAX,
};

use crate::config::{Grid, RunConfig};
use crate::error::{invalid, CliResult};
use crate::format::real;
use crate::table::{CurveSample, Table};

/// The main table, plus the inset table for fig 4.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub main: Table,
    pub inset: Option<Table>,
}

fn eof(rho: DensityMatrix) -> CliResult<f64> {
    Ok(entanglement_of_formation(&rho)?)
}

fn tabulate(
    config: &RunConfig,
    columns: Vec<String>,
    grid: Grid,
    row: impl Fn(f64) -> CliResult<Vec<Option<f64>>> + Sync,
) -> CliResult<Table> {
    let rows: Vec<CurveSample> = grid
        .points()
        .into_par_iter()
        .map(|x| {
            Ok(CurveSample {
                abscissa: x,
                ordinates: row(x)?,
            })
        })
        .collect::<CliResult<_>>()?;
    let mut table = Table::new(config.echo(), columns);
    for r in rows {
        table.push(r)?;
    }
    Ok(table)
}

fn labelled(prefix: &str, values: &[f64]) -> Vec<String> {
    values
        .iter()
        .map(|v| format!("{prefix}={}", real(*v)))
        .collect()
}

pub fn figure(config: &RunConfig, n: u8) -> CliResult<FigureData> {
    config.validate()?;
    let main = match n {
        1 => fig1(config)?,
        2 => fig2(config)?,
        3 => fig3(config)?,
        4 => {
            return Ok(FigureData {
                main: fig4(config)?,
                inset: Some(fig4_inset(config)?),
            })
        }
        5 => fig5(config)?,
        _ => return Err(invalid(format!("figure {n} does not exist (1..5)"))),
    };
    Ok(FigureData { main, inset: None })
}

/// Bell observable: MaxEnt, minimum-σ² and true-family EoF against `b`.
fn fig1(config: &RunConfig) -> CliResult<Table> {
    let grid = config.grid.unwrap_or(Grid::new(0.0, BELL_MAX, 0.01)?);
    let mut columns = vec!["b".to_string(), "E_me".into(), "E_ms".into()];
    columns.extend(labelled("E_true_alpha", &config.alphas));
    tabulate(config, columns, grid, |b| {
        let mut row = vec![Some(eof(rho_me_bell(b)?)?), Some(eof(rho_ms_bell(b)?)?)];
        for &alpha in &config.alphas {
            // Outside the family's admissible range the cell stays empty.
            row.push(match BellSchemeParams::new(b, alpha) {
                Ok(p) => Some(eof(rho_true_bell(&p)?)?),
                Err(_) => None,
            });
        }
        Ok(row)
    })
}

/// Separability boundaries in the `(α, a/κ)` plane.
fn fig2(config: &RunConfig) -> CliResult<Table> {
    let grid = config.grid.unwrap_or(Grid::new(0.0, 1.0, 0.01)?);
    let ratio = -config.lambda / config.kappa;
    let a_c = critical_a(ratio)?;
    let columns = vec![
        "alpha".to_string(),
        "true_boundary".into(),
        "ms_boundary".into(),
        "me_boundary".into(),
    ];
    tabulate(config, columns, grid, |alpha| {
        Ok(vec![Some(q_boundary(alpha)?), Some(8.0 / 9.0), Some(a_c)])
    })
}

/// Observable Â: EoF of the MaxEnt, minimum-σ² and true states against `a`.
fn fig3(config: &RunConfig) -> CliResult<Table> {
    let (kappa, lambda) = (config.kappa, config.lambda);
    let grid = config.grid.unwrap_or(Grid::new(0.0, kappa, 0.005 * kappa)?);
    let mut columns = vec!["a".to_string(), "E_meI".into(), "E_ms".into()];
    columns.extend(labelled("E_true_alpha", &config.alphas));
    tabulate(config, columns, grid, |a| {
        let p = OpASchemeParams::new(kappa, lambda, a, 0.0)?;
        let mut row = vec![Some(eof(rho_me_a(&p)?)?), Some(eof(rho_ms_a(&p)?)?)];
        for &alpha in &config.alphas {
            let t = OpASchemeParams {
                alpha_s: alpha,
                ..p
            };
            row.push(if t.is_physical() {
                Some(eof(rho_true_a(&t)?)?)
            } else {
                None
            });
        }
        Ok(row)
    })
}

/// Observable Â: EoF against `a/κ` for several `−λ/κ`.
fn fig4(config: &RunConfig) -> CliResult<Table> {
    let kappa = config.kappa;
    let grid = config.grid.unwrap_or(Grid::new(0.0, 1.0, 0.005)?);
    let mut columns = vec!["a_over_kappa".to_string(), "E_ms".into()];
    columns.extend(labelled("E_meI_ratio", &config.ratios));
    tabulate(config, columns, grid, |x| {
        let a = x * kappa;
        let ms = OpASchemeParams::new(kappa, -kappa, a, 0.0)?;
        let mut row = vec![Some(eof(rho_ms_a(&ms)?)?)];
        for &r in &config.ratios {
            let p = OpASchemeParams::new(kappa, -r * kappa, a, 0.0)?;
            row.push(Some(eof(rho_me_a(&p)?)?));
        }
        Ok(row)
    })
}

fn fig4_inset(config: &RunConfig) -> CliResult<Table> {
    let mut ratios = config.ratios.clone();
    ratios.sort_by(f64::total_cmp);
    ratios.dedup();
    let values: Vec<f64> = ratios
        .par_iter()
        .map(|&r| Ok(critical_a(r)?))
        .collect::<CliResult<_>>()?;
    let mut table = Table::new(config.echo(), vec!["ratio".into(), "a_c".into()]);
    for (r, a_c) in ratios.into_iter().zip(values) {
        table.push(CurveSample {
            abscissa: r,
            ordinates: vec![Some(a_c)],
        })?;
    }
    Ok(table)
}

/// Observable D̂: MaxEnt and minimum-σ² EoF against `d` for each θ.
fn fig5(config: &RunConfig) -> CliResult<Table> {
    let (a1, a2) = (config.alpha1, config.alpha2);
    let grid = config.grid.unwrap_or(Grid::new(0.0, a2, 0.01)?);
    let mut columns = vec!["d".to_string()];
    columns.extend(labelled("E_me_theta", &config.thetas));
    columns.extend(labelled("E_ms_theta", &config.thetas));
    tabulate(config, columns, grid, |d| {
        let params: Vec<OpDSchemeParams> = config
            .thetas
            .iter()
            .map(|&t| OpDSchemeParams::new(a1, a2, t, d))
            .collect::<Result<_, _>>()?;
        let mut row = Vec::with_capacity(2 * params.len());
        for p in &params {
            row.push(Some(eof(rho_me_d(p)?)?));
        }
        for p in &params {
            row.push(Some(eof(rho_ms_d(p)?)?));
        }
        Ok(row)
    })
}
