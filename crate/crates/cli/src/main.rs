use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qinfer_cli::config::{Basis, Command, Grid, ObservableSpec, RunConfig, Scheme};
use qinfer_cli::error::{CliError, CliResult};

/// MaxEnt inference of two-qubit states and the entanglement of the inferred states.
#[derive(Parser, Debug)]
#[command(name = "qinfer", version, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Eigenvalue κ of the observable Â.
    #[arg(long, global = true, default_value_t = 1.0)]
    kappa: f64,
    /// Eigenvalue λ ≤ 0 of the observable Â.
    #[arg(long, global = true, default_value_t = -1.0, allow_hyphen_values = true)]
    lambda: f64,
    /// Eigenvalue α₁ of the observable D̂.
    #[arg(long, global = true, default_value_t = 2.0)]
    alpha1: f64,
    /// Eigenvalue α₂ of the observable D̂.
    #[arg(long, global = true, default_value_t = 3.0)]
    alpha2: f64,
    /// Angle(s) θ of D̂, comma separated [default: 0,π/8,π/4 for fig 5, π/4 otherwise].
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    theta: Option<Vec<f64>>,
    /// True-family weights α for figs 1 and 3, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    /// Values of −λ/κ for fig 4, comma separated [default: 0,0.5,1,2,4,8].
    #[arg(long, global = true, value_delimiter = ',')]
    ratios: Option<Vec<f64>>,
    /// Abscissa grid as start:stop:step.
    #[arg(long, global = true, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Output path (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Slack on the partial-transpose spectrum for separability verdicts.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Write the data behind figure N (1..5) as CSV.
    Fig { n: u8 },
    /// Classify the point (a, α) of the Â plane.
    #[command(allow_negative_numbers = true)]
    Classify { a: f64, alpha: f64 },
    /// Infer a state from the mean of an observable.
    #[command(allow_negative_numbers = true)]
    Infer {
        /// bell, opA[(κ,λ)], opD[(α₁,α₂,θ)] or custom.
        observable: String,
        mean: f64,
        #[arg(long, value_enum, default_value_t = SchemeArg::Maxent)]
        scheme: SchemeArg,
        /// Four eigenvalues for a custom observable, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        eigenvalues: Option<Vec<f64>>,
        /// Eigenbasis for a custom observable.
        #[arg(long, value_enum, default_value_t = BasisArg::Product)]
        basis: BasisArg,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SchemeArg {
    Maxent,
    MinSigma2,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BasisArg {
    Product,
    Bell,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::InvalidConfig(msg.into())
}

/// `name` or `name(p1,p2,...)`.
fn split_call(s: &str) -> CliResult<(String, Vec<f64>)> {
    let s = s.trim();
    let Some(open) = s.find('(') else {
        return Ok((s.to_ascii_lowercase(), Vec::new()));
    };
    let inner = s[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| invalid(format!("unbalanced parentheses in '{s}'")))?;
    let args = inner
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| invalid(format!("'{p}' is not a number in '{s}'")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok((s[..open].trim().to_ascii_lowercase(), args))
}

fn observable_spec(
    text: &str,
    config: &RunConfig,
    eigenvalues: Option<Vec<f64>>,
    basis: BasisArg,
) -> CliResult<ObservableSpec> {
    let (name, args) = split_call(text)?;
    let arity = |n: usize| {
        if args.is_empty() || args.len() == n {
            Ok(())
        } else {
            Err(invalid(format!(
                "{name} takes {n} parameters, got {}",
                args.len()
            )))
        }
    };
    let spec = match name.as_str() {
        "bell" => {
            arity(0)?;
            ObservableSpec::Bell
        }
        "opa" => {
            arity(2)?;
            let (kappa, lambda) = match args.as_slice() {
                [k, l] => (*k, *l),
                _ => (config.kappa, config.lambda),
            };
            ObservableSpec::OpA { kappa, lambda }
        }
        "opd" => {
            arity(3)?;
            let (alpha1, alpha2, theta) = match args.as_slice() {
                [a, b, t] => (*a, *b, *t),
                _ => (config.alpha1, config.alpha2, config.theta()),
            };
            ObservableSpec::OpD {
                alpha1,
                alpha2,
                theta,
            }
        }
        "custom" => {
            let values = if args.is_empty() {
                eigenvalues.ok_or_else(|| invalid("custom observable needs --eigenvalues"))?
            } else {
                args
            };
            let eigenvalues: [f64; 4] = values.try_into().map_err(|v: Vec<f64>| {
                invalid(format!(
                    "custom observable needs 4 eigenvalues, got {}",
                    v.len()
                ))
            })?;
            let basis = match basis {
                BasisArg::Product => Basis::Product,
                BasisArg::Bell => Basis::Bell,
            };
            ObservableSpec::Custom { eigenvalues, basis }
        }
        other => return Err(invalid(format!("unknown observable '{other}'"))),
    };
    Ok(spec)
}

fn build_config(cli: Cli) -> CliResult<RunConfig> {
    let mut config = RunConfig::new(Command::Fig(1));
    config.kappa = cli.kappa;
    config.lambda = cli.lambda;
    config.alpha1 = cli.alpha1;
    config.alpha2 = cli.alpha2;
    if let Some(t) = cli.theta {
        config.thetas = t;
    } else if !matches!(cli.command, Cmd::Fig { n: 5 }) {
        config.thetas = vec![std::f64::consts::FRAC_PI_4];
    }
    if let Some(a) = cli.alphas {
        config.alphas = a;
    }
    if let Some(r) = cli.ratios {
        config.ratios = r;
    }
    config.grid = cli.grid.as_deref().map(str::parse::<Grid>).transpose()?;
    config.out = cli.out;
    if let Some(t) = cli.tol {
        config.tol = t;
    }
    config.command = match cli.command {
        Cmd::Fig { n } => Command::Fig(n),
        Cmd::Classify { a, alpha } => Command::Classify { a, alpha },
        Cmd::Infer {
            observable,
            mean,
            scheme,
            eigenvalues,
            basis,
        } => Command::Infer {
            observable: observable_spec(&observable, &config, eigenvalues, basis)?,
            mean,
            scheme: match scheme {
                SchemeArg::Maxent => Scheme::MaxEnt,
                SchemeArg::MinSigma2 => Scheme::MinSigma2,
            },
        },
    };
    config.validate()?;
    Ok(config)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = build_config(cli).and_then(|config| {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        qinfer_cli::run(&config, &mut lock)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qinfer: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
