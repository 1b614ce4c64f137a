//! Command-line front end. Every subcommand validates its whole configuration
//! before computing and writes files only once all output is ready.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::algebra::{max_abs, partial_trace_matrix, trace_of_product, DensityMatrix};
use crate::asymptotic::AlphaFamilyState;
use crate::dynamics::{asymptotic_state, evolve, vectorize};
use crate::entanglement::{concurrence_of_matrix, CriticalR, Mode, Radicand};
use crate::error::{Error, Result};
use crate::generator::{build_generator, EnvironmentParams};
use crate::io::{format_float, format_matrix, protocol_csv, read_matrix_file, write_atomic};
use crate::protocol::{figure_grid, inclusive_range, sweep, Figure, Grid, Method, FIGURE_ONE_LOWER_BOUND};
use crate::verify::{verify_groups, Tolerances, GROUPS};

pub const EXIT_OK: i32 = 0;
/// Some verification claim failed.
pub const EXIT_CLAIM_FAILED: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NON_CONVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qubit-bath", version, about = "Qubits relaxing in a shared permutation-symmetric bath")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Asymptotic state reached from an initial state.
    Steady(SteadyArgs),
    /// State at a finite time.
    Evolve(EvolveArgs),
    /// Concurrence sweep of the ancilla protocol, as CSV.
    Protocol(ProtocolArgs),
    /// Check every closed form against numerics and the concurrence oracle.
    Verify(VerifyArgs),
    /// Environment purity above which the ancilla always helps at alpha = 1/3.
    CriticalR(CriticalRArgs),
}

#[derive(Debug, Clone, Args)]
pub struct EnvArgs {
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// Shorthand for `--a 1 --b R`.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub omega: f64,
}

impl EnvArgs {
    pub fn params(&self) -> Result<EnvironmentParams> {
        match (self.b, self.r) {
            (Some(b), None) => EnvironmentParams::new(self.a.unwrap_or(1.0), b, self.c, self.omega),
            (None, Some(r)) => {
                if self.a.is_some_and(|a| a != 1.0) {
                    return Err(Error::Validation("--r fixes a = 1; drop --a or use --b".into()));
                }
                EnvironmentParams::new(1.0, r, self.c, self.omega)
            }
            (Some(_), Some(_)) => Err(Error::Validation("give exactly one of --b and --r, not both".into())),
            (None, None) => Err(Error::Validation("give exactly one of --b and --r".into())),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Number of qubits, 1 to 3.
    #[arg(long)]
    pub n: usize,
    /// Start from the alpha family (with a maximally mixed third qubit when n = 3).
    #[arg(long, conflicts_with = "input")]
    pub alpha: Option<f64>,
    /// Start from a density matrix in the matrix file format.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

impl StateArgs {
    pub fn initial_state(&self) -> Result<DensityMatrix> {
        if !(1..=3).contains(&self.n) {
            return Err(Error::Validation(format!("--n must be 1, 2 or 3, got {}", self.n)));
        }
        match (&self.input, self.alpha) {
            (Some(path), _) => {
                let rho = DensityMatrix::from_numeric(read_matrix_file(path)?)?;
                if rho.qubit_count() != self.n {
                    return Err(Error::Validation(format!(
                        "{} holds a {}-qubit state but --n is {}",
                        path.display(),
                        rho.qubit_count(),
                        self.n
                    )));
                }
                Ok(rho)
            }
            (None, Some(alpha)) if self.n >= 2 => Ok(AlphaFamilyState::new(alpha, self.n)?.state()),
            (None, Some(_)) => Err(Error::Validation("--alpha needs --n 2 or --n 3".into())),
            (None, None) if self.n == 1 => Ok(DensityMatrix::maximally_mixed(1)),
            (None, None) => Err(Error::Validation("give --alpha or --input for an initial state".into())),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SteadyArgs {
    #[command(flatten)]
    pub env: EnvArgs,
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Also write the asymptote to this file.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub env: EnvArgs,
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long)]
    pub t: f64,
    /// Print a trajectory table with this many equally spaced times instead of the final state.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ProtocolArgs {
    /// Preset grid of figure 1, 2 or 3.
    #[arg(long, conflicts_with_all = ["r", "r_range", "alpha", "alpha_range"])]
    pub figure: Option<u8>,
    #[arg(long, conflicts_with = "r_range")]
    pub r: Option<f64>,
    /// `lo,hi,step`.
    #[arg(long, allow_hyphen_values = true)]
    pub r_range: Option<String>,
    #[arg(long, conflicts_with = "alpha_range")]
    pub alpha: Option<f64>,
    /// `lo,hi,step`; defaults to `0,1/3,0.005`.
    #[arg(long)]
    pub alpha_range: Option<String>,
    /// Alpha lower bound of figure 1 (also clipped by the separability threshold).
    #[arg(long, default_value_t = FIGURE_ONE_LOWER_BOUND)]
    pub lower_bound: f64,
    #[arg(long, default_value = "analytic")]
    pub method: Method,
    /// Source of the delta columns.
    #[arg(long, default_value = "paper")]
    pub mode: Mode,
    /// With `--figure`, a sibling `<stem>_oracle.csv` in oracle mode is written too.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// One tolerance for every numeric claim.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Comma-separated claim groups.
    #[arg(long, value_delimiter = ',')]
    pub claims: Vec<String>,
    /// Values of b to check (a = c = omega = 1); repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Vec<f64>,
    /// Write the CSV report here instead of printing it.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CriticalRArgs {
    #[arg(long, default_value = "delta")]
    pub radicand: Radicand,
}

/// Parses `lo,hi,step`.
pub fn parse_range(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Validation(format!("bad range {text:?} (expected lo,hi,step)"))))
        .collect::<Result<_>>()?;
    let [lo, hi, step] = parts[..] else {
        return Err(Error::Validation(format!("bad range {text:?} (expected lo,hi,step)")));
    };
    inclusive_range(lo, hi, step)
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NonConvergence { .. } => EXIT_NON_CONVERGENCE,
        _ => EXIT_VALIDATION,
    }
}

pub fn cmd_steady(args: &SteadyArgs) -> Result<String> {
    let params = args.env.params()?;
    let rho0 = args.state.initial_state()?;
    if !(args.tol > 0.0) {
        return Err(Error::Validation(format!("--tol must be positive, got {}", args.tol)));
    }
    params.require_nondegenerate()?;
    let generator = build_generator(&params, args.state.n)?;
    let result = asymptotic_state(&vectorize(&generator), &rho0, args.tol)?;
    let stationarity = max_abs(&generator.apply(result.state.matrix()));
    let matrix = format_matrix(result.state.matrix());
    if let Some(path) = &args.output {
        write_atomic(path, &matrix)?;
    }
    let mut out = matrix;
    let _ = writeln!(out, "stationarity {stationarity:e}");
    let _ = writeln!(out, "horizon {}", format_float(result.horizon));
    Ok(out)
}

pub fn cmd_evolve(args: &EvolveArgs) -> Result<String> {
    let params = args.env.params()?;
    let rho0 = args.state.initial_state()?;
    if !(args.t >= 0.0) || !args.t.is_finite() {
        return Err(Error::Validation(format!("--t must be a finite non-negative time, got {}", args.t)));
    }
    let superop = vectorize(&build_generator(&params, args.state.n)?);
    let out = match args.samples {
        Some(0) => return Err(Error::Validation("--samples must be at least 1".into())),
        Some(k) => {
            let mut out = String::from("t,purity,C_12\n");
            for i in 0..=k {
                let t = args.t * i as f64 / k as f64;
                let rho = evolve(&superop, &rho0, t)?;
                let purity = trace_of_product(rho.matrix(), rho.matrix()).re;
                let c = match args.state.n {
                    1 => f64::NAN,
                    2 => concurrence_of_matrix(rho.matrix())?.value,
                    _ => concurrence_of_matrix(&partial_trace_matrix(rho.matrix(), &[1, 2])?)?.value,
                };
                let _ = writeln!(out, "{},{},{}", format_float(t), format_float(purity), format_float(c));
            }
            out
        }
        None => format_matrix(evolve(&superop, &rho0, args.t)?.matrix()),
    };
    if let Some(path) = &args.output {
        write_atomic(path, &out)?;
    }
    Ok(out)
}

/// The grid and config echo described by protocol arguments.
pub fn protocol_grid(args: &ProtocolArgs) -> Result<(Grid, Vec<(&'static str, String)>)> {
    let mut echo = vec![("method", args.method.name().to_owned())];
    let grid = if let Some(k) = args.figure {
        let fig = Figure::from_index(k)?;
        if !(0.0..=1.0 / 3.0).contains(&args.lower_bound) {
            return Err(Error::Validation(format!("--lower-bound must lie in [0, 1/3], got {}", args.lower_bound)));
        }
        echo.push(("figure", k.to_string()));
        if fig == Figure::One {
            echo.push(("lower_bound", format_float(args.lower_bound)));
        }
        figure_grid(fig, args.lower_bound)
    } else {
        let rs = match (args.r, &args.r_range) {
            (Some(r), None) => vec![r],
            (None, Some(range)) => parse_range(range)?,
            _ => return Err(Error::Validation("give --figure, --r or --r-range".into())),
        };
        let alphas = match (args.alpha, &args.alpha_range) {
            (Some(a), None) => vec![a],
            (None, Some(range)) => parse_range(range)?,
            _ => crate::protocol::alpha_values(0.0, 1.0 / 3.0),
        };
        echo.push(("r", rs.iter().map(|&x| format_float(x)).collect::<Vec<_>>().join(";")));
        echo.push(("alpha", alphas.iter().map(|&x| format_float(x)).collect::<Vec<_>>().join(";")));
        Grid::rectangular(&rs, &alphas)
    };
    grid.validate()?;
    echo.push(("c", "1.0".into()));
    echo.push(("omega", "1.0".into()));
    echo.push(("points", grid.len().to_string()));
    Ok((grid, echo))
}

/// `dir/stem_oracle.csv` next to `path`.
pub fn oracle_sibling(path: &Path) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}_oracle.csv"))
}

pub fn cmd_protocol(args: &ProtocolArgs) -> Result<String> {
    let (grid, echo) = protocol_grid(args)?;
    let records = sweep(&grid, args.method)?;
    let with_mode = |mode: Mode| {
        let mut config = echo.clone();
        config.insert(0, ("mode", mode.name().to_owned()));
        protocol_csv(&records, mode, &config)
    };
    let primary = if args.figure.is_some() { Mode::ClosedForm } else { args.mode };
    let csv = with_mode(primary);
    if let Some(path) = &args.output {
        if args.figure.is_some() {
            let sibling = oracle_sibling(path);
            let oracle = with_mode(Mode::Oracle);
            write_atomic(path, &csv)?;
            if let Err(e) = write_atomic(&sibling, &oracle) {
                let _ = std::fs::remove_file(path);
                return Err(e);
            }
            return Ok(format!("wrote {} and {} ({} rows)\n", path.display(), sibling.display(), records.len()));
        }
        write_atomic(path, &csv)?;
        return Ok(format!("wrote {} ({} rows)\n", path.display(), records.len()));
    }
    Ok(csv)
}

/// Report text and whether every claim passed.
pub fn cmd_verify(args: &VerifyArgs) -> Result<(String, bool)> {
    let tol = match args.tol {
        Some(t) if t > 0.0 => Tolerances::uniform(t),
        Some(t) => return Err(Error::Validation(format!("--tol must be positive, got {t}"))),
        None => Tolerances::default(),
    };
    let params = args
        .b
        .iter()
        .map(|&b| EnvironmentParams::new(1.0, b, 1.0, 1.0))
        .collect::<Result<Vec<_>>>()?;
    let groups: Vec<&str> = if args.claims.is_empty() {
        GROUPS.to_vec()
    } else {
        args.claims.iter().map(String::as_str).collect()
    };
    let report = verify_groups(&params, &tol, &groups)?;
    let mut out = report.to_table();
    match &args.output {
        Some(path) => write_atomic(path, &report.to_csv())?,
        None => {
            out.push('\n');
            out.push_str(&report.to_csv());
        }
    }
    Ok((out, report.passed()))
}

pub fn cmd_critical_r(args: &CriticalRArgs) -> Result<String> {
    let c = CriticalR::compute(args.radicand)?;
    let mut out = String::new();
    let _ = writeln!(out, "radicand {}", c.radicand.name());
    let _ = writeln!(out, "root {:.10}", c.root);
    let _ = writeln!(out, "alpha_minus(root) {:.10}", c.alpha_minus_at_root);
    let _ = writeln!(out, "oracle_crossing {:.10}", c.oracle_crossing);
    let _ = writeln!(out, "root - oracle_crossing {:.3e}", c.root - c.oracle_crossing);
    let _ = writeln!(out, "quoted {}", c.quoted_value);
    let _ = writeln!(out, "quoted - root {:.3e}", c.quoted_value - c.root);
    Ok(out)
}

/// Parses `args` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Steady(a) => cmd_steady(a).map(|s| (s, true)),
        Command::Evolve(a) => cmd_evolve(a).map(|s| (s, true)),
        Command::Protocol(a) => cmd_protocol(a).map(|s| (s, true)),
        Command::Verify(a) => cmd_verify(a),
        Command::CriticalR(a) => cmd_critical_r(a).map(|s| (s, true)),
    };
    match result {
        Ok((text, ok)) => {
            let _ = stdout.write_all(text.as_bytes());
            if ok {
                EXIT_OK
            } else {
                EXIT_CLAIM_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
