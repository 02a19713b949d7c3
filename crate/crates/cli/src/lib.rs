// Copyright 2026 Robust CNOT Contributors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end for the robust CNOT experiments.
//!
//! Every command renders its full output in memory first; `--out` is only
//! written once the command has succeeded, so a failed run leaves no file.
//!
//! `--config FILE` reads `key=value` lines (flag names without the leading
//! dashes, `#` comments allowed). Values from the file are used only for
//! flags that were not given on the command line.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use robust_cnot::experiments::{
    linspace_step, run_delta_sweep, run_isolation_convergence, run_monte_carlo, run_timing_report, DeltaSweepConfig,
    FidelityRecord, MonteCarloConfig,
};
use robust_cnot::gates::{cnot_assembly, entangler, target_zz};
use robust_cnot::hamiltonian::{heisenberg, random_hamiltonian};
use robust_cnot::{
    fidelity, Calibration, Isolation, Pauli, PauliCoeffs, RandomEnsembleSpec, Strategy, TimingModel, Unitary4,
};

/// Exit status for malformed flags or out-of-domain values.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for I/O failures.
pub const EXIT_IO: i32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Clap(#[from] clap::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Clap(e) if !e.use_stderr() => 0,
            CliError::Clap(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

impl From<robust_cnot::Error> for CliError {
    fn from(e: robust_cnot::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "robust-cnot", version, about = "Composite-pulse CNOT fidelity experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// CNOT fidelity against a fractional coupling error Δ.
    Sweep(SweepArgs),
    /// Mean and minimum fidelity over random Hamiltonians.
    Random(RandomArgs),
    /// Accuracy of k-fold term isolation.
    Convergence(ConvergenceArgs),
    /// Gate counts, durations and the operation budget.
    Timing(TimingArgs),
    /// Print a pulse sequence in the text format.
    Export(ExportArgs),
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: robust_cnot::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = PI / 2.0, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub delta_min: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub delta_max: f64,
    #[arg(long, default_value_t = 0.01)]
    pub delta_step: f64,
    /// Comma-separated: uncorrected, comp1, comp2, comp3.
    #[arg(long, value_delimiter = ',', value_parser = parse_strategy, default_value = "uncorrected,comp1,comp2,comp3")]
    pub strategies: Vec<Strategy>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub k: u32,
    #[arg(long, default_value_t = 0.0)]
    pub rj_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub rj_max: f64,
    #[arg(long, default_value_t = 0.1)]
    pub rj_step: f64,
    /// `uncorrected` is the square-root-of-swap CNOT; others use k-fold isolation.
    #[arg(long, value_delimiter = ',', value_parser = parse_strategy, default_value = "uncorrected,comp2")]
    pub strategies: Vec<Strategy>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HamiltonianKind {
    Heisenberg,
    Random,
    Zz,
}

#[derive(Debug, Args)]
pub struct ConvergenceArgs {
    #[arg(long, value_delimiter = ',', default_value = "1,2,5,10,20,40")]
    pub k_list: Vec<u32>,
    #[arg(long, value_enum, default_value_t = HamiltonianKind::Heisenberg)]
    pub hamiltonian: HamiltonianKind,
    #[arg(long, default_value_t = 0.5)]
    pub t: f64,
    /// Seed for `--hamiltonian random`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random amplitude for `--hamiltonian random`.
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TimingArgs {
    #[arg(long, default_value_t = 40.0, allow_negative_numbers = true)]
    pub single_pi_ns: f64,
    #[arg(long, default_value_t = 40.0, allow_negative_numbers = true)]
    pub hadamard_ns: f64,
    #[arg(long = "two-pi8-ns", default_value_t = 1.0, allow_negative_numbers = true)]
    pub two_pi8_ns: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long, value_parser = parse_strategy)]
    pub strategy: Strategy,
    #[arg(long, default_value_t = PI / 2.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Fractional coupling error; the sequence is a bare ZZ-timed pulse train.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["seed", "r"])]
    pub delta: Option<f64>,
    /// Seed of a random Hamiltonian; the sequence uses k-fold isolation.
    #[arg(long, requires = "r")]
    pub seed: Option<u64>,
    #[arg(long, requires = "seed")]
    pub r: Option<f64>,
    #[arg(long, default_value_t = 20)]
    pub k: u32,
    /// Wrap the entangler into a CNOT (θ must be π/2 for an exact CNOT).
    #[arg(long)]
    pub cnot: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// `%.12g`-style: 12 significant digits, trailing zeros dropped.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let (_, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let (mant, _) = sci.split_once('e').unwrap();
        return format!("{}e{}{:02}", trim_zeros(mant), if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Reads `key=value` lines. Blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> CliResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", n + 1)))?;
        let key = k.trim();
        if key.is_empty() || key.starts_with('-') {
            return Err(CliError::Usage(format!("config line {}: bad key {key:?}", n + 1)));
        }
        out.push((key.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Pulls `--config` out of `args` and splices the file's settings in right
/// after the subcommand, skipping any flag the command line already sets.
fn expand_config(args: Vec<OsString>) -> CliResult<Vec<OsString>> {
    let mut rest = Vec::with_capacity(args.len());
    let mut config = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            let path = it.next().ok_or_else(|| CliError::Usage("--config needs a file path".into()))?;
            config = Some(PathBuf::from(path));
        } else if let Some(p) = s.strip_prefix("--config=") {
            config = Some(PathBuf::from(p));
        } else {
            rest.push(a);
        }
    }
    let Some(path) = config else { return Ok(rest) };
    let text = fs::read_to_string(&path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    let given: Vec<String> = rest
        .iter()
        .filter_map(|a| a.to_str())
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect();
    let mut injected = Vec::new();
    for (key, value) in parse_config(&text)? {
        if given.contains(&key) {
            continue;
        }
        match value.as_str() {
            "true" => injected.push(OsString::from(format!("--{key}"))),
            "false" => {}
            _ => {
                injected.push(OsString::from(format!("--{key}")));
                injected.push(OsString::from(value));
            }
        }
    }
    // Position 0 is the program name; the subcommand is the first non-flag.
    let sub = rest.iter().skip(1).position(|a| !a.to_string_lossy().starts_with('-')).map(|p| p + 2);
    let at = sub.ok_or_else(|| CliError::Usage("--config given without a subcommand".into()))?;
    rest.splice(at..at, injected);
    Ok(rest)
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the text that was produced and where it should go.
pub fn execute<I, T>(args: I) -> CliResult<(String, Option<PathBuf>)>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args = expand_config(args.into_iter().map(Into::into).collect())?;
    let cli = Cli::try_parse_from(args)?;
    match cli.command {
        Command::Sweep(a) => Ok((cmd_sweep(&a)?, a.out)),
        Command::Random(a) => Ok((cmd_random(&a)?, a.out)),
        Command::Convergence(a) => Ok((cmd_convergence(&a)?, a.out)),
        Command::Timing(a) => Ok((cmd_timing(&a)?, a.out)),
        Command::Export(a) => Ok((cmd_export(&a)?, a.out)),
    }
}

/// Full entry point: runs, writes output, reports errors. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let result = execute(args).and_then(|(text, out)| match out {
        Some(path) => {
            fs::write(&path, &text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
        }
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    });
    match result {
        Ok(()) => 0,
        Err(CliError::Clap(e)) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            let _ =
                if code == 0 { stdout.write_all(rendered.as_bytes()) } else { stderr.write_all(rendered.as_bytes()) };
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub const SWEEP_HEADER: &str = "strategy,delta,fidelity";
pub const RANDOM_HEADER: &str = "strategy,r_over_j,n_samples,mean_fidelity,min_fidelity";
pub const CONVERGENCE_HEADER: &str = "k,error";

pub fn cmd_sweep(a: &SweepArgs) -> CliResult<String> {
    let cfg = DeltaSweepConfig {
        theta: a.theta,
        delta_grid: linspace_step(a.delta_min, a.delta_max, a.delta_step)?,
        strategies: a.strategies.clone(),
    };
    Ok(format_sweep(&run_delta_sweep(&cfg)?))
}

pub fn format_sweep(records: &[FidelityRecord]) -> String {
    let mut s = format!("{SWEEP_HEADER}\n");
    for r in records {
        s += &format!("{},{},{}\n", r.strategy, fmt_sig(r.x), fmt_sig(r.mean_f));
    }
    s
}

pub fn cmd_random(a: &RandomArgs) -> CliResult<String> {
    if a.samples < 1 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let cfg = MonteCarloConfig {
        r_over_j_grid: linspace_step(a.rj_min, a.rj_max, a.rj_step)?,
        samples_per_point: a.samples,
        isolation_k: a.k,
        master_seed: a.seed,
        strategies: a.strategies.clone(),
        ..Default::default()
    };
    Ok(format_random(&run_monte_carlo(&cfg)?))
}

pub fn format_random(records: &[FidelityRecord]) -> String {
    let mut s = format!("{RANDOM_HEADER}\n");
    for r in records {
        s += &format!("{},{},{},{},{}\n", r.strategy, fmt_sig(r.x), r.n, fmt_sig(r.mean_f), fmt_sig(r.min_f));
    }
    s
}

pub fn cmd_convergence(a: &ConvergenceArgs) -> CliResult<String> {
    if a.k_list.is_empty() {
        return Err(CliError::Usage("--k-list is empty".into()));
    }
    if a.k_list.contains(&0) {
        return Err(CliError::Usage("--k-list values must be at least 1".into()));
    }
    let coeffs = match a.hamiltonian {
        HamiltonianKind::Heisenberg => heisenberg(1.0),
        HamiltonianKind::Zz => PauliCoeffs::single(Pauli::Z, Pauli::Z, 1.0),
        HamiltonianKind::Random => random_hamiltonian(&RandomEnsembleSpec::new(1.0, a.r, a.seed)?),
    };
    let rows = run_isolation_convergence(&a.k_list, &coeffs, a.t)?;
    Ok(format_convergence(&rows))
}

pub fn format_convergence(rows: &[(u32, f64)]) -> String {
    let mut s = format!("{CONVERGENCE_HEADER}\n");
    for (k, e) in rows {
        s += &format!("{k},{}\n", fmt_sig(*e));
    }
    s
}

pub fn cmd_timing(a: &TimingArgs) -> CliResult<String> {
    let tm = TimingModel::new(a.single_pi_ns, a.hadamard_ns, a.two_pi8_ns)?;
    let r = run_timing_report(&tm)?;
    let line = |name: &str, c: robust_cnot::GateCounts, ns: f64| {
        format!("{name}: {} single-qubit, {} two-qubit gates, {} ns\n", c.single_qubit, c.two_qubit, fmt_sig(ns))
    };
    let mut s = String::new();
    s += &line("naive CNOT", r.naive_counts, r.naive_ns);
    s += &line("composite CNOT", r.comp_counts, r.comp_ns);
    s += &format!("duration ratio: {}\n", fmt_sig(r.comp_ns / r.naive_ns));
    s += &format!("operations in 60 ms: {}\n", r.ops_in_60ms);
    Ok(s)
}

pub fn cmd_export(a: &ExportArgs) -> CliResult<String> {
    let (cal, header) = match (a.delta, a.seed, a.r) {
        (Some(delta), None, None) => (Calibration::abstract_delta(1.0, delta)?, format!("# ambient: delta={delta:?}")),
        (None, Some(seed), Some(r)) => {
            let coeffs = random_hamiltonian(&RandomEnsembleSpec::new(1.0, r, seed)?);
            let cal = Calibration::full(1.0, coeffs, Isolation::TermIsolation { k: a.k })?;
            (cal, format!("# ambient: random r={r:?} seed={seed} k={}", a.k))
        }
        (None, None, None) => (Calibration::abstract_delta(1.0, 0.0)?, "# ambient: delta=0.0".to_string()),
        _ => return Err(CliError::Usage("use either --delta or both --seed and --r".into())),
    };
    let ent = entangler(a.strategy, a.theta, &cal)?;
    let (seq, target) = if a.cnot { (cnot_assembly(&ent), Unitary4::cnot()) } else { (ent, target_zz(a.theta)) };
    let f = fidelity(&cal.compile(&seq)?, &target);
    let counts = seq.gate_counts();
    let mut s = format!("# strategy: {} theta={:?}\n{header}\n", a.strategy, a.theta);
    s += &format!(
        "# gates: {} single-qubit, {} two-qubit; fidelity {}\n",
        counts.single_qubit,
        counts.two_qubit,
        fmt_sig(f)
    );
    s += &seq.to_string();
    Ok(s)
}

fn bad_row(n: usize, what: &str) -> CliError {
    CliError::Usage(format!("csv line {n}: {what}"))
}

fn csv_rows<'a>(text: &'a str, header: &str) -> CliResult<impl Iterator<Item = (usize, Vec<&'a str>)>> {
    let mut lines = text.lines();
    if lines.next() != Some(header) {
        return Err(CliError::Usage(format!("expected header {header:?}")));
    }
    Ok(lines.enumerate().filter(|(_, l)| !l.is_empty()).map(|(i, l)| (i + 2, l.split(',').collect())))
}

fn num<T: std::str::FromStr>(n: usize, field: &str) -> CliResult<T> {
    field.parse().map_err(|_| bad_row(n, &format!("bad number {field:?}")))
}

/// Reads sweep CSV back into records (`n = 1`, `mean_f = min_f`).
pub fn parse_sweep_csv(text: &str) -> CliResult<Vec<FidelityRecord>> {
    csv_rows(text, SWEEP_HEADER)?
        .map(|(n, f)| {
            let [s, x, v] = f[..] else { return Err(bad_row(n, "expected 3 fields")) };
            let v = num(n, v)?;
            Ok(FidelityRecord {
                strategy: parse_strategy(s).map_err(|e| bad_row(n, &e))?,
                x: num(n, x)?,
                mean_f: v,
                min_f: v,
                n: 1,
            })
        })
        .collect()
}

pub fn parse_random_csv(text: &str) -> CliResult<Vec<FidelityRecord>> {
    csv_rows(text, RANDOM_HEADER)?
        .map(|(n, f)| {
            let [s, x, count, mean, min] = f[..] else { return Err(bad_row(n, "expected 5 fields")) };
            Ok(FidelityRecord {
                strategy: parse_strategy(s).map_err(|e| bad_row(n, &e))?,
                x: num(n, x)?,
                mean_f: num(n, mean)?,
                min_f: num(n, min)?,
                n: num(n, count)?,
            })
        })
        .collect()
}

pub fn parse_convergence_csv(text: &str) -> CliResult<Vec<(u32, f64)>> {
    csv_rows(text, CONVERGENCE_HEADER)?
        .map(|(n, f)| {
            let [k, e] = f[..] else { return Err(bad_row(n, "expected 2 fields")) };
            Ok((num(n, k)?, num(n, e)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(-0.5), "-0.5");
        assert_eq!(fmt_sig(0.840896415253714), "0.840896415254");
        assert_eq!(fmt_sig(123456.7890123456), "123456.789012");
        assert_eq!(fmt_sig(1.5e-7), "1.5e-07");
        assert_eq!(fmt_sig(2.0e13), "2e+13");
        assert_eq!(fmt_sig(0.99999999999999), "1");
        assert_eq!(fmt_sig(0.0001), "0.0001");
    }

    #[test]
    fn formatted_values_reparse_to_twelve_digits() {
        for x in [PI, -1e-9, 0.999987654321234, 42.0] {
            let back: f64 = fmt_sig(x).parse().unwrap();
            assert!((back - x).abs() <= 1e-11 * x.abs());
        }
    }

    #[test]
    fn config_parsing() {
        let cfg = parse_config("# note\nsamples = 5\n\nseed=3\n").unwrap();
        assert_eq!(cfg, vec![("samples".into(), "5".into()), ("seed".into(), "3".into())]);
        assert!(parse_config("samples").is_err());
        assert!(parse_config("--samples=3").is_err());
    }

    #[test]
    fn csv_parsers_reject_bad_input() {
        assert!(parse_sweep_csv("wrong\n").is_err());
        assert!(parse_sweep_csv("strategy,delta,fidelity\ncomp9,0,1\n").is_err());
        assert!(parse_random_csv("strategy,r_over_j,n_samples,mean_fidelity,min_fidelity\ncomp2,0,x,1,1\n").is_err());
        assert_eq!(parse_convergence_csv("k,error\n3,0.5\n").unwrap(), vec![(3, 0.5)]);
    }
}
