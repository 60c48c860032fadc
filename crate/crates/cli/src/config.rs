//! Run configuration shared by all subcommands.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qinfer::entanglement::SEPARABILITY_TOL;

use crate::error::{invalid, CliError, CliResult};
use crate::format::real;

/// `start:stop:step`, sampled at `start + k·step` and always ending at `stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(start: f64, stop: f64, step: f64) -> CliResult<Self> {
        if ![start, stop, step].iter().all(|x| x.is_finite()) {
            return Err(invalid("grid bounds must be finite"));
        }
        if !(step > 0.0) {
            return Err(invalid(format!("grid step must be positive, got {step}")));
        }
        if !(start < stop) {
            return Err(invalid(format!(
                "grid start {start} must be below stop {stop}"
            )));
        }
        if (stop - start) / step > 1e7 {
            return Err(invalid("grid has more than 1e7 points"));
        }
        Ok(Self { start, stop, step })
    }

    pub fn points(&self) -> Vec<f64> {
        // Points closer than a thousandth of a step to `stop` are replaced by it.
        let n = ((self.stop - self.start) / self.step - 1e-3)
            .ceil()
            .max(0.0) as usize;
        let mut pts: Vec<f64> = (0..n).map(|k| self.start + k as f64 * self.step).collect();
        pts.push(self.stop);
        pts
    }
}

impl FromStr for Grid {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(invalid(format!("grid '{s}' is not start:stop:step")));
        }
        let mut v = [0.0; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p
                .trim()
                .parse()
                .map_err(|_| invalid(format!("grid '{s}': '{p}' is not a number")))?;
        }
        Grid::new(v[0], v[1], v[2])
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}",
            real(self.start),
            real(self.stop),
            real(self.step)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    MaxEnt,
    MinSigma2,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::MaxEnt => "maxent",
            Scheme::MinSigma2 => "min-sigma2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Product,
    Bell,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Product => "product",
            Basis::Bell => "bell",
        })
    }
}

/// Observable named on the command line, with its parameters resolved.
#[derive(Debug, Clone, PartialEq)]
pub enum ObservableSpec {
    Bell,
    OpA {
        kappa: f64,
        lambda: f64,
    },
    OpD {
        alpha1: f64,
        alpha2: f64,
        theta: f64,
    },
    Custom {
        eigenvalues: [f64; 4],
        basis: Basis,
    },
}

impl fmt::Display for ObservableSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObservableSpec::Bell => f.write_str("bell"),
            ObservableSpec::OpA { kappa, lambda } => {
                write!(f, "opA({},{})", real(*kappa), real(*lambda))
            }
            ObservableSpec::OpD {
                alpha1,
                alpha2,
                theta,
            } => write!(
                f,
                "opD({},{},{})",
                real(*alpha1),
                real(*alpha2),
                real(*theta)
            ),
            ObservableSpec::Custom { eigenvalues, basis } => {
                let vals: Vec<String> = eigenvalues.iter().map(|x| real(*x)).collect();
                write!(f, "custom({};{basis})", vals.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Fig(u8),
    Classify {
        a: f64,
        alpha: f64,
    },
    Infer {
        observable: ObservableSpec,
        mean: f64,
        scheme: Scheme,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub kappa: f64,
    pub lambda: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    /// Angles for fig 5; every other use takes the first entry.
    pub thetas: Vec<f64>,
    pub alphas: Vec<f64>,
    pub ratios: Vec<f64>,
    pub grid: Option<Grid>,
    pub out: Option<PathBuf>,
    pub tol: f64,
}

pub const DEFAULT_RATIOS: [f64; 6] = [0.0, 0.5, 1.0, 2.0, 4.0, 8.0];
pub const DEFAULT_THETAS: [f64; 3] = [0.0, FRAC_PI_8, FRAC_PI_4];

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            kappa: 1.0,
            lambda: -1.0,
            alpha1: 2.0,
            alpha2: 3.0,
            thetas: DEFAULT_THETAS.to_vec(),
            alphas: Vec::new(),
            ratios: DEFAULT_RATIOS.to_vec(),
            grid: None,
            out: None,
            tol: SEPARABILITY_TOL,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(invalid(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        let all_finite = [self.kappa, self.lambda, self.alpha1, self.alpha2]
            .iter()
            .chain(&self.thetas)
            .chain(&self.alphas)
            .chain(&self.ratios)
            .all(|x| x.is_finite());
        if !all_finite {
            return Err(invalid("parameters must be finite"));
        }
        if let Command::Fig(n) = self.command {
            if !(1..=5).contains(&n) {
                return Err(invalid(format!("figure {n} does not exist (1..5)")));
            }
            if n == 4 && self.ratios.is_empty() {
                return Err(invalid("fig 4 needs at least one ratio"));
            }
            if n == 5 && self.thetas.is_empty() {
                return Err(invalid("fig 5 needs at least one theta"));
            }
        }
        Ok(())
    }

    pub fn theta(&self) -> f64 {
        self.thetas.first().copied().unwrap_or(FRAC_PI_4)
    }

    /// One-line echo written as the first CSV line.
    pub fn echo(&self) -> String {
        let list = |v: &[f64]| v.iter().map(|x| real(*x)).collect::<Vec<_>>().join(",");
        let command = match &self.command {
            Command::Fig(n) => format!("fig {n}"),
            Command::Classify { a, alpha } => format!("classify {} {}", real(*a), real(*alpha)),
            Command::Infer {
                observable,
                mean,
                scheme,
            } => format!("infer {observable} {} scheme={scheme}", real(*mean)),
        };
        format!(
            "qinfer {command} kappa={} lambda={} alpha1={} alpha2={} theta={} alphas={} ratios={} grid={} tol={}",
            real(self.kappa),
            real(self.lambda),
            real(self.alpha1),
            real(self.alpha2),
            list(&self.thetas),
            list(&self.alphas),
            list(&self.ratios),
            self.grid.map(|g| g.to_string()).unwrap_or_else(|| "default".into()),
            real(self.tol),
        )
    }
}
