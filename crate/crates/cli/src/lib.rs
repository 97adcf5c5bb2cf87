//! Command-line front end: every subcommand builds a [`SweepTable`] and emits
//! it as CSV or JSON.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage or input-domain error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use xxchain::fidelity::fidelity_sweep;
use xxchain::kernel::{kernel_matrix, magnetization, xx_corr, zz_corr};
use xxchain::pairstate::{concurrence, measure_sweep, one_tangle, Measure};
use xxchain::spectrum::{crossing_fields, ground_energy, region_index, ChainSpec};
use xxchain::thermo::{
    bulk_concurrence, bulk_magnetization, bulk_xx, bulk_zz, energy_per_spin, k_fraction,
    xx_asymptote, BulkParams,
};
use xxchain::validation::{validate_chain, CHECKS, ORACLE_TOLERANCE};

pub mod table;

pub use table::{Cell, SweepTable};

const CONVENTIONS: &str = "\
Conventions:
  Exchange coupling J = 1; fields are dimensionless.
  Region k counts crossing fields B_k = cos(k pi/(n+1)) strictly above B, so at an
  exact crossing the higher-field ground state is reported. Offset B yourself to
  get the other branch.
  Field sweeps default to region midpoints, with the two outer regions closed off
  at B = 1.1 and B = -1.1; --b-min/--b-max/--steps selects a uniform grid instead.";

#[derive(Debug, Parser)]
#[command(
    name = "xxchain",
    version,
    about = "Exact XX-chain spectra, correlations, entanglement and fidelity"
)]
#[command(after_help = CONVENTIONS)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct Output {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FieldGrid {
    /// Single field value
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["b_min", "b_max", "steps"])]
    b: Option<f64>,
    /// Lower end of a uniform field grid
    #[arg(long, allow_hyphen_values = true, requires_all = ["b_max", "steps"])]
    b_min: Option<f64>,
    /// Upper end of a uniform field grid
    #[arg(long, allow_hyphen_values = true, requires_all = ["b_min", "steps"])]
    b_max: Option<f64>,
    /// Number of grid points
    #[arg(long, requires_all = ["b_min", "b_max"])]
    steps: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Crossing fields B_k
    Crossings {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Ground-state energy
    Energy {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        grid: FieldGrid,
        /// Divide by the chain length
        #[arg(long)]
        per_spin: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Kernel entries and spin correlators
    Corr {
        #[arg(long)]
        n: usize,
        /// Field (selects the region)
        #[arg(
            long,
            allow_hyphen_values = true,
            required_unless_present = "k",
            conflicts_with = "k"
        )]
        b: Option<f64>,
        /// Region index
        #[arg(long)]
        k: Option<usize>,
        /// First site; all sites when omitted with --kind z
        #[arg(long)]
        l: Option<usize>,
        /// Second site; swept when omitted
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum)]
        kind: CorrKind,
        #[command(flatten)]
        output: Output,
    },
    /// One-tangle of a site
    Tangle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        /// Sweep region midpoints (default when --b is absent)
        #[arg(long, conflicts_with = "b")]
        sweep: bool,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Concurrence of a pair of sites
    Concurrence {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
        /// Sweep region midpoints (default when --b is absent)
        #[arg(long, conflicts_with = "b")]
        sweep: bool,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Single-spin fidelity and susceptibility at every crossing
    Fidelity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        site: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Thermodynamic-limit observables
    Thermo {
        #[arg(long, value_enum)]
        observable: ThermoObservable,
        #[command(flatten)]
        grid: FieldGrid,
        /// Distance between the two sites
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Sweep distances r..=r_max at a single field instead of sweeping fields
        #[arg(long)]
        r_max: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Compare analytic results with brute-force state vectors
    Validate {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        cases_per_region: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CorrKind {
    Kernel,
    Z,
    Zz,
    Xx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ThermoObservable {
    Energy,
    Mag,
    Zz,
    Xx,
    XxAsymptote,
    Concurrence,
    KFraction,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Solver(#[from] xxchain::Error),
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl FieldGrid {
    /// Field values requested on the command line, if any.
    fn values(&self) -> Result<Option<Vec<f64>>> {
        if let Some(b) = self.b {
            return Ok(Some(vec![b]));
        }
        match (self.b_min, self.b_max, self.steps) {
            (Some(lo), Some(hi), Some(steps)) => {
                if steps == 0 {
                    return Err(usage("--steps must be >= 1"));
                }
                if lo.is_nan() || hi.is_nan() || lo > hi {
                    return Err(usage(format!(
                        "--b-min = {lo} must not exceed --b-max = {hi}"
                    )));
                }
                if steps == 1 {
                    return Ok(Some(vec![lo]));
                }
                let span = hi - lo;
                Ok(Some(
                    (0..steps)
                        .map(|i| lo + span * i as f64 / (steps - 1) as f64)
                        .collect(),
                ))
            }
            _ => Ok(None),
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let text = err.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            err.exit_code()
        }
    }
}

fn emit(table: &SweepTable, output: &Output, stdout: &mut dyn Write) -> Result<()> {
    let text = match output.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let (table, output, code) = match command {
        Command::Crossings { n, output } => (crossings(n)?, output, 0),
        Command::Energy {
            n,
            grid,
            per_spin,
            output,
        } => (energy(n, &grid, per_spin)?, output, 0),
        Command::Corr {
            n,
            b,
            k,
            l,
            m,
            kind,
            output,
        } => (corr(n, b, k, l, m, kind)?, output, 0),
        Command::Tangle {
            n, l, b, output, ..
        } => (tangle(n, l, b)?, output, 0),
        Command::Concurrence {
            n, l, m, b, output, ..
        } => (pair_concurrence(n, l, m, b)?, output, 0),
        Command::Fidelity { n, site, output } => (fidelity(n, site)?, output, 0),
        Command::Thermo {
            observable,
            grid,
            r,
            r_max,
            output,
        } => (thermo(observable, &grid, r, r_max)?, output, 0),
        Command::Validate {
            n_max,
            cases_per_region,
            output,
        } => {
            let (table, passed) = validate(n_max, cases_per_region, stderr)?;
            (table, output, if passed { 0 } else { 1 })
        }
    };
    emit(&table, &output, stdout)?;
    Ok(code)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(usage("--n must be >= 1"));
    }
    Ok(())
}

fn crossings(n: usize) -> Result<SweepTable> {
    check_n(n)?;
    let mut table = SweepTable::new("crossings", &["k", "b_k"]).with_n(n);
    for (k, b) in crossing_fields(n).into_iter().enumerate() {
        table.push(vec![(k + 1).into(), b.into()]);
    }
    Ok(table.finish())
}

fn midpoint_fields(n: usize) -> Vec<f64> {
    xxchain::pairstate::region_midpoints(n)
        .into_iter()
        .map(|(_, b)| b)
        .collect()
}

fn energy(n: usize, grid: &FieldGrid, per_spin: bool) -> Result<SweepTable> {
    check_n(n)?;
    let fields = grid.values()?.unwrap_or_else(|| midpoint_fields(n));
    let label = if per_spin {
        "energy_per_spin"
    } else {
        "energy"
    };
    let mut table = SweepTable::new("energy", &["b", label, "k"]).with_n(n);
    for b in fields {
        let spec = ChainSpec::new(n, b)?;
        let e = ground_energy(spec);
        let e = if per_spin { e / n as f64 } else { e };
        table.push(vec![b.into(), e.into(), region_index(spec).into()]);
    }
    Ok(table.finish())
}

fn corr(
    n: usize,
    b: Option<f64>,
    k: Option<usize>,
    l: Option<usize>,
    m: Option<usize>,
    kind: CorrKind,
) -> Result<SweepTable> {
    check_n(n)?;
    let k = match (b, k) {
        (Some(b), None) => region_index(ChainSpec::new(n, b)?),
        (None, Some(k)) => k,
        _ => return Err(usage("exactly one of --b and --k is required")),
    };
    let kern = kernel_matrix(n, k)?;
    let (name, sites): (&str, Vec<(usize, usize)>) = match kind {
        CorrKind::Z => {
            let ls: Vec<usize> = match l {
                Some(l) => vec![l],
                None => (1..=n).collect(),
            };
            ("z", ls.into_iter().map(|l| (l, l)).collect())
        }
        _ => {
            let l = l.ok_or_else(|| usage("--l is required for two-site correlators"))?;
            let ms: Vec<usize> = match (m, kind) {
                (Some(m), _) => vec![m],
                (None, CorrKind::Kernel) => (1..=n).collect(),
                (None, CorrKind::Xx) => (l + 1..=n).collect(),
                (None, _) => (1..=n).filter(|&m| m != l).collect(),
            };
            let name = match kind {
                CorrKind::Kernel => "kernel",
                CorrKind::Zz => "zz",
                _ => "xx",
            };
            (name, ms.into_iter().map(|m| (l, m)).collect())
        }
    };
    let first = sites.first().map(|s| s.0).unwrap_or(1);
    let mut table = SweepTable::new("corr", &["site", name])
        .with_n(n)
        .with_sites(&[first])
        .with_observable(name)
        .note(format!("region k = {k}"));
    for (l, m) in sites {
        let value = match kind {
            CorrKind::Z => magnetization(&kern, l)?,
            CorrKind::Kernel => xxchain::kernel::kernel_entry(n, k, l, m)?,
            CorrKind::Zz => zz_corr(&kern, l, m)?,
            CorrKind::Xx => {
                if l == m {
                    return Err(usage("xx correlator needs distinct sites"));
                }
                xx_corr(&kern, l.min(m), l.max(m))?
            }
        };
        let x = if kind == CorrKind::Z { l } else { m };
        table.push(vec![x.into(), value.into()]);
    }
    Ok(table.finish())
}

fn region_rows(n: usize, b: Option<f64>, measure: Measure) -> Result<Vec<(f64, usize, f64)>> {
    if let Some(b) = b {
        let k = region_index(ChainSpec::new(n, b)?);
        let kern = kernel_matrix(n, k)?;
        let value = match measure {
            Measure::Tangle { l } => one_tangle(&kern, l)?,
            Measure::Concurrence { l, m } => {
                concurrence(&xxchain::kernel::two_spin_density(&kern, l, m)?)?
            }
        };
        return Ok(vec![(b, k, value)]);
    }
    Ok(measure_sweep(n, measure)?
        .into_iter()
        .map(|p| (p.b, p.k, p.value))
        .collect())
}

fn tangle(n: usize, l: usize, b: Option<f64>) -> Result<SweepTable> {
    check_n(n)?;
    let mut table = SweepTable::new("tangle", &["b", "tangle", "k"])
        .with_n(n)
        .with_sites(&[l])
        .with_observable("tangle");
    for (b, k, v) in region_rows(n, b, Measure::Tangle { l })? {
        table.push(vec![b.into(), v.into(), k.into()]);
    }
    Ok(table.finish())
}

fn pair_concurrence(n: usize, l: usize, m: usize, b: Option<f64>) -> Result<SweepTable> {
    check_n(n)?;
    let mut table = SweepTable::new("concurrence", &["b", "concurrence", "k"])
        .with_n(n)
        .with_sites(&[l, m])
        .with_observable("concurrence");
    for (b, k, v) in region_rows(n, b, Measure::Concurrence { l, m })? {
        table.push(vec![b.into(), v.into(), k.into()]);
    }
    Ok(table.finish())
}

fn fidelity(n: usize, site: usize) -> Result<SweepTable> {
    check_n(n)?;
    let mut table = SweepTable::new("fidelity", &["k", "b_k", "fidelity", "chi"])
        .with_n(n)
        .with_sites(&[site])
        .with_observable("fidelity")
        .note("chi uses delta_B = B_(k-1) - B_k; k = 1 uses B_1 - B_2");
    for p in fidelity_sweep(n, site)? {
        table.push(vec![p.k.into(), p.b_k.into(), p.fid.into(), p.chi.into()]);
    }
    Ok(table.finish())
}

fn thermo_value(observable: ThermoObservable, b: f64, r: usize) -> Result<f64> {
    let bulk = || BulkParams::new(b);
    Ok(match observable {
        ThermoObservable::Energy => energy_per_spin(b),
        ThermoObservable::Mag => bulk_magnetization(b),
        ThermoObservable::Zz => bulk_zz(&bulk()?, r)?,
        ThermoObservable::Xx => bulk_xx(&bulk()?, r)?,
        ThermoObservable::XxAsymptote => xx_asymptote(r)?,
        ThermoObservable::Concurrence => bulk_concurrence(&bulk()?, r)?,
        ThermoObservable::KFraction => k_fraction(b)?,
    })
}

fn thermo(
    observable: ThermoObservable,
    grid: &FieldGrid,
    r: usize,
    r_max: Option<usize>,
) -> Result<SweepTable> {
    let name = observable
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let fields = grid.values()?;
    for b in fields.iter().flatten() {
        if !b.is_finite() {
            return Err(usage(format!("field {b} must be finite")));
        }
    }
    if let Some(r_max) = r_max {
        let b = match fields.as_deref() {
            None => 0.0,
            Some([b]) => *b,
            Some(_) => return Err(usage("--r-max needs a single field (--b)")),
        };
        if r_max < r {
            return Err(usage(format!("--r-max = {r_max} must be >= --r = {r}")));
        }
        let mut table = SweepTable::new("thermo", &["r", &name])
            .with_observable(&name)
            .note(format!("b = {b:?}"));
        for dist in r..=r_max {
            table.push(vec![dist.into(), thermo_value(observable, b, dist)?.into()]);
        }
        return Ok(table.finish());
    }
    let mut table = SweepTable::new("thermo", &["b", &name])
        .with_observable(&name)
        .note(format!("r = {r}"));
    for b in fields.unwrap_or_else(|| vec![0.0]) {
        table.push(vec![b.into(), thermo_value(observable, b, r)?.into()]);
    }
    Ok(table.finish())
}

fn validate(n_max: usize, cases: usize, report: &mut dyn Write) -> Result<(SweepTable, bool)> {
    if !(2..=xxchain::oracle::MAX_ORACLE_SITES).contains(&n_max) {
        return Err(usage(format!(
            "--n-max = {n_max} must lie in 2..={}",
            xxchain::oracle::MAX_ORACLE_SITES
        )));
    }
    let mut columns = vec!["n", "cases"];
    columns.extend(CHECKS);
    columns.push("pass");
    let mut table =
        SweepTable::new("validate", &columns).note(format!("tolerance = {ORACLE_TOLERANCE:e}"));
    let mut worst = [0.0f64; CHECKS.len()];
    let mut all_passed = true;
    for n in 2..=n_max {
        let r = validate_chain(n, cases)?;
        all_passed &= r.passed();
        for (w, e) in worst.iter_mut().zip(r.max_error) {
            *w = w.max(e);
        }
        let mut row: Vec<Cell> = vec![n.into(), r.cases.into()];
        row.extend(r.max_error.iter().map(|&e| Cell::Real(e)));
        row.push(usize::from(r.passed()).into());
        table.push(row);
    }
    for (name, err) in CHECKS.iter().zip(worst) {
        let verdict = if err < ORACLE_TOLERANCE {
            "PASS"
        } else {
            "FAIL"
        };
        writeln!(
            report,
            "check {name:<12} max error {err:.3e} (tol {ORACLE_TOLERANCE:e}) {verdict}"
        )?;
    }
    Ok((table.finish(), all_passed))
}
