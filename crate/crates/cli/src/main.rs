use std::fmt;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use posmom::posmometry::{expand_state_grid, posmogram_in_sector, ExpandOptions, ParitySector};
use posmom::sphere::{Superposition, Term};
use posmom::validation::{self, Suite, ValidationOptions};
use posmom::{posmogram_with, Execution, LambdaGrid, ModeIndex};

mod config;
mod format;
mod output;

use config::{GridArgs, OutputFormat, QuadArgs, RunConfig};

/// Posmom distributions of spherical harmonics on the unit sphere.
#[derive(Parser)]
#[command(name = "posmogram", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute |I_lm(λ)|² for one or more modes
    Density(DensityArgs),
    /// Run the built-in validation suites
    Validate(ValidateArgs),
    /// Compare a posmogram with a harmonic-oscillator momentum density
    CompareSho(CompareArgs),
    /// Expand a superposition of spherical harmonics in the Q_z eigenbasis
    Expand(ExpandArgs),
}

#[derive(Args)]
struct DensityArgs {
    /// Degree l
    #[arg(long)]
    l: i64,
    /// Order m: a single value such as -2, or an inclusive range such as 0..5
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    m: String,
    /// Parity sector (+ or -); defaults to the non-vanishing one
    #[arg(long, allow_hyphen_values = true)]
    parity: Option<ParitySector>,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Output file; standard output if absent
    #[arg(long, short)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Suite to run (repeatable): selection-rule, symmetry, m-reflection,
    /// normalization, closed-forms, nodes, stencil, sho
    #[arg(long)]
    suite: Vec<Suite>,
    /// Tolerance of the closed-form comparison
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    quad: QuadArgs,
    /// Write the JSON report here instead of standard output
    #[arg(long, short)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    l: i64,
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    /// Oscillator level
    #[arg(long)]
    n: u32,
    /// Lower end of the λ grid
    #[arg(long, allow_hyphen_values = true)]
    lo: Option<f64>,
    /// Upper end of the λ grid
    #[arg(long, allow_hyphen_values = true)]
    hi: Option<f64>,
    /// Number of grid points (`--n` is the oscillator level here)
    #[arg(long)]
    points: Option<usize>,
    #[command(flatten)]
    quad: QuadArgs,
    /// Emit the report and overlay as JSON
    #[arg(long)]
    json: bool,
    #[arg(long, short)]
    output: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct ExpandArgs {
    /// Term of the state as l,m,re[,im]; repeat for each term
    #[arg(long = "term", allow_hyphen_values = true)]
    terms: Vec<TermArg>,
    /// Accept a state whose norm differs from 1
    #[arg(long)]
    allow_unnormalized: bool,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long, short)]
    output: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone)]
struct TermArg {
    l: i64,
    m: i64,
    coefficient: Complex64,
}

impl std::str::FromStr for TermArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(format!("expected l,m,re[,im], got '{s}'"));
        }
        let int = |p: &str| p.parse::<i64>().map_err(|e| format!("'{p}': {e}"));
        let real = |p: &str| p.parse::<f64>().map_err(|e| format!("'{p}': {e}"));
        let im = if parts.len() == 4 { real(parts[3])? } else { 0.0 };
        Ok(Self {
            l: int(parts[0])?,
            m: int(parts[1])?,
            coefficient: Complex64::new(real(parts[2])?, im),
        })
    }
}

/// Invalid input detected after argument parsing.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<Usage>().is_some() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<posmom::Error>() {
            return match e {
                posmom::Error::Domain(_) | posmom::Error::InvalidMode { .. } | posmom::Error::InvalidConfig(_) => 2,
                _ => 3,
            };
        }
    }
    1
}

fn parse_orders(text: &str) -> anyhow::Result<Vec<i64>> {
    let bad = || usage(format!("invalid order '{text}': expected an integer or a range a..b"));
    match text.split_once("..") {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![text.trim().parse().map_err(|_| bad())?]),
    }
}

fn write_output(path: Option<&Path>, data: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, data).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(data.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => Ok(other?),
            }
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("POSMOGRAM_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| usage(format!("POSMOGRAM_THREADS must be a positive integer, got '{v}'")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
        log::debug!("using {n} worker threads");
    }
    Ok(())
}

fn density(args: DensityArgs) -> anyhow::Result<()> {
    let file = args.quad.file()?;
    let modes = parse_orders(&args.m)?
        .into_iter()
        .map(|m| ModeIndex::from_signed(args.l, m))
        .collect::<posmom::Result<Vec<_>>>()?;
    let run = RunConfig {
        modes,
        grid: args.grid.resolve(&file, LambdaGrid::default())?,
        quadrature: args.quad.resolve(&file),
        output_format: args.format.or(file.format).unwrap_or_default(),
        output_path: args.output.or(file.output),
    };
    run.quadrature.validate()?;
    let mut posmograms = vec![];
    for &mode in &run.modes {
        log::info!("computing mode {mode}");
        let p = match args.parity {
            Some(parity) => posmogram_in_sector(mode, parity, &run.grid, &run.quadrature, Execution::Parallel)?,
            None => posmogram_with(mode, &run.grid, &run.quadrature, Execution::Parallel)?,
        };
        posmograms.push(p);
    }
    let data = match run.output_format {
        OutputFormat::Csv => output::density_csv(&posmograms),
        OutputFormat::Json => output::density_json(&posmograms)?,
    };
    write_output(run.output_path.as_deref(), &data)
}

fn validate(args: ValidateArgs) -> anyhow::Result<bool> {
    let file = args.quad.file()?;
    let suites = if args.suite.is_empty() {
        Suite::DEFAULT.to_vec()
    } else {
        args.suite
    };
    let opts = ValidationOptions {
        tol: args.tol,
        config: args.quad.resolve(&file),
        execution: Execution::Parallel,
    };
    let report = validation::run(&suites, &opts)?;
    for s in &report.suites {
        eprintln!("{} {} ({} checks)", if s.pass { "PASS" } else { "FAIL" }, s.suite, s.checks.len());
        for c in s.checks.iter().filter(|c| !c.pass) {
            eprintln!("  failed: {} = {} (limit {})", c.name, c.value, c.limit);
        }
        for n in &s.notes {
            eprintln!("  note: {n}");
        }
    }
    let json = serde_json::to_string_pretty(&report)? + "\n";
    write_output(args.output.as_deref(), &json)?;
    Ok(report.pass)
}

fn compare_sho(args: CompareArgs) -> anyhow::Result<()> {
    let file = args.quad.file()?;
    let mode = ModeIndex::from_signed(args.l, args.m)?;
    let grid_args = GridArgs { lo: args.lo, hi: args.hi, n: args.points };
    let grid = grid_args.resolve(&file, validation::normalization_grid(mode.l()))?;
    let cfg = args.quad.resolve(&file);
    let p = posmogram_with(mode, &grid, &cfg, Execution::Parallel)?;
    let report = posmom::sho::compare(&p, args.n)?;
    let overlay = posmom::sho::overlay(&p, args.n)?;
    eprintln!(
        "mode {mode} vs SHO n={}: scale {:.6}, L∞ {:.4e} ({:.2}% of peak), L1 {:.4e}",
        args.n,
        report.scale,
        report.linf_diff,
        100.0 * report.linf_relative,
        report.l1_diff
    );
    let data = if args.json {
        output::compare_json(&report, &overlay)?
    } else {
        output::overlay_csv(&report, &overlay)
    };
    write_output(args.output.or(file.output).as_deref(), &data)
}

fn expand(args: ExpandArgs) -> anyhow::Result<()> {
    if args.terms.is_empty() {
        bail!(usage("the state needs at least one --term l,m,re[,im]"));
    }
    let file = args.quad.file()?;
    let terms = args
        .terms
        .iter()
        .map(|t| {
            Ok(Term {
                mode: ModeIndex::from_signed(t.l, t.m)?,
                coefficient: t.coefficient,
            })
        })
        .collect::<posmom::Result<Vec<_>>>()?;
    let state = Superposition::new(terms)?;
    let norm = state.norm_squared();
    if !state.is_normalized(1e-8) && !args.allow_unnormalized {
        bail!(usage(format!(
            "state has squared norm {norm}; normalize it or pass --allow-unnormalized"
        )));
    }
    let grid = args.grid.resolve(&file, LambdaGrid::new(-20.0, 20.0, 801)?)?;
    let cfg = args.quad.resolve(&file);
    let opts = ExpandOptions {
        degree_hint: state.max_degree(),
        execution: Execution::Parallel,
    };
    let coeffs = expand_state_grid(&state, &grid, &cfg, opts)?;
    eprintln!(
        "parseval sum {:.10} (state norm² {norm:.10})",
        coeffs.parseval()
    );
    let data = match args.format.or(file.format).unwrap_or_default() {
        OutputFormat::Csv => output::expansion_csv(&coeffs, cfg.abs_tol),
        OutputFormat::Json => output::expansion_json(&coeffs, cfg.abs_tol)?,
    };
    write_output(args.output.or(file.output).as_deref(), &data)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    configure_threads()?;
    match cli.command {
        Command::Density(a) => density(a).map(|_| true),
        Command::Validate(a) => validate(a),
        Command::CompareSho(a) => compare_sho(a).map(|_| true),
        Command::Expand(a) => expand(a).map(|_| true),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
