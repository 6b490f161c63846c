//! Command-line front end: sweeps, figure presets, oracle verification and
//! the monogamy threshold.
//!
//! All tables are CSV with a header row, comma delimiter, LF line endings and
//! floats printed with 17 significant digits, so that re-parsing a file and
//! re-evaluating a row reproduces it exactly.

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::correlations::{report, violation_threshold, CorrelationReport, Quantity, Threshold};
use crate::fock_oracle::{verify, Bounds, VerificationRecord};
use crate::special::{LaguerreOrder, StrengthParam};
use crate::states::{ModelParams, Parity};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Failures of a subcommand, each mapped onto an exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("verification failed at {failures} of {points} points")]
    Verification { failures: usize, points: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Verification { .. } => EXIT_VERIFICATION,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Sweep variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Alpha2,
    /// `p = e^{−2|α|²}`.
    P,
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "alpha2" => Ok(Axis::Alpha2),
            "p" => Ok(Axis::P),
            _ => Err(format!("unknown axis '{s}' (expected alpha2 or p)")),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Alpha2 => "alpha2",
            Axis::P => "p",
        })
    }
}

/// A validated sweep request.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub m_list: Vec<LaguerreOrder>,
    pub k_list: Vec<Parity>,
    pub quantities: Vec<Quantity>,
    /// `None` writes to standard output.
    pub output: Option<PathBuf>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |msg: String| Err(CliError::Usage(msg));
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start >= self.stop {
            return usage(format!("need start < stop, got {} and {}", self.start, self.stop));
        }
        if self.steps < 2 {
            return usage(format!("need at least 2 steps, got {}", self.steps));
        }
        match self.axis {
            Axis::Alpha2 if self.start < 0.0 => {
                return usage(format!("alpha2 must be non-negative, got start {}", self.start))
            }
            Axis::P if self.start <= 0.0 || self.stop > 1.0 => {
                return usage(format!(
                    "p range must lie in (0, 1], got [{}, {}]",
                    self.start, self.stop
                ))
            }
            _ => {}
        }
        if self.m_list.is_empty() || self.k_list.is_empty() {
            return usage("m and k lists must be non-empty".into());
        }
        if self.quantities.is_empty() {
            return usage("no quantities requested".into());
        }
        Ok(())
    }

    /// Axis values, evenly spaced and inclusive of both ends.
    pub fn axis_values(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.stop
                } else {
                    self.start + span * i as f64 / last
                }
            })
            .collect()
    }

    fn strength(&self, value: f64) -> Result<StrengthParam, CliError> {
        Ok(match self.axis {
            Axis::Alpha2 => StrengthParam::new(value)?,
            Axis::P => StrengthParam::from_overlap(value)?,
        })
    }

    /// One report per `(k, m, axis value)`, in that sort order.
    pub fn evaluate(&self) -> Result<Vec<CorrelationReport>, CliError> {
        self.validate()?;
        let mut k_list = self.k_list.clone();
        k_list.sort();
        k_list.dedup();
        let mut m_list = self.m_list.clone();
        m_list.sort();
        m_list.dedup();
        let values = self.axis_values();
        let mut rows = Vec::with_capacity(k_list.len() * m_list.len() * values.len());
        for &parity in &k_list {
            for &order in &m_list {
                for &v in &values {
                    rows.push(report(&ModelParams {
                        strength: self.strength(v)?,
                        order,
                        parity,
                    }));
                }
            }
        }
        Ok(rows)
    }
}

/// `{:.16e}`: 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

/// Writes the sweep table: `alpha2, p, m, k` and then the requested quantities.
pub fn write_sweep<W: Write>(spec: &SweepSpec, out: W) -> Result<(), CliError> {
    let rows = spec.evaluate()?;
    let mut w = csv_writer(out);
    let mut header = vec!["alpha2".to_string(), "p".into(), "m".into(), "k".into()];
    header.extend(spec.quantities.iter().map(|q| q.name().to_string()));
    w.write_record(&header)?;
    for r in &rows {
        let mut record = vec![
            format_float(r.params.alpha2()),
            format_float(r.params.overlap()),
            r.params.m().to_string(),
            r.params.parity.k().to_string(),
        ];
        record.extend(
            spec.quantities
                .iter()
                .map(|&q| r.get(q).map(format_float).unwrap_or_default()),
        );
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

fn with_output<F>(path: Option<&Path>, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    match path {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let mut out = BufWriter::new(file);
            body(&mut out)?;
            out.flush()?;
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            body(&mut out)
        }
    }
}

pub fn cmd_sweep(spec: &SweepSpec) -> Result<(), CliError> {
    spec.validate()?;
    with_output(spec.output.as_deref(), |out| write_sweep(spec, out))
}

/// The eight figure presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

impl FigureId {
    pub const ALL: [FigureId; 8] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8,
    ];

    /// Plotted quantity and parity.
    pub fn binding(self) -> (Quantity, Parity) {
        match self {
            FigureId::Fig1 => (Quantity::E12, Parity::Even),
            FigureId::Fig2 => (Quantity::E12, Parity::Odd),
            FigureId::Fig3 => (Quantity::D12, Parity::Even),
            FigureId::Fig5 => (Quantity::D12, Parity::Odd),
            FigureId::Fig4 => (Quantity::D23, Parity::Even),
            FigureId::Fig6 => (Quantity::D23, Parity::Odd),
            FigureId::Fig7 => (Quantity::Delta123, Parity::Even),
            FigureId::Fig8 => (Quantity::Delta123, Parity::Odd),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
            FigureId::Fig8 => "fig8",
        }
    }
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown figure '{s}' (expected fig1 ... fig8)"))
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub const FIGURE_POINTS: usize = 400;
pub const FIGURE_RANGE: (f64, f64) = (0.01, 4.0);
pub const FIGURE_ORDERS: [u32; 4] = [0, 1, 2, 3];

/// A figure id bound to its sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct FigurePreset {
    pub id: FigureId,
    pub spec: SweepSpec,
}

impl FigurePreset {
    pub fn new(id: FigureId, output: Option<PathBuf>) -> Self {
        let (quantity, parity) = id.binding();
        Self {
            id,
            spec: SweepSpec {
                axis: Axis::Alpha2,
                start: FIGURE_RANGE.0,
                stop: FIGURE_RANGE.1,
                steps: FIGURE_POINTS,
                m_list: FIGURE_ORDERS
                    .iter()
                    .map(|&m| LaguerreOrder::new(m).expect("small order"))
                    .collect(),
                k_list: vec![parity],
                quantities: vec![quantity],
                output,
            },
        }
    }

    /// A gnuplot script that reads the figure CSV at `csv_path`, one curve per `m`.
    pub fn plot_script(&self, csv_path: &str) -> String {
        let (quantity, parity) = self.id.binding();
        let orders = FIGURE_ORDERS;
        format!(
            "set datafile separator ','\n\
             set xlabel '|alpha|^2'\n\
             set ylabel '{q}'\n\
             set title '{q}, k = {k}'\n\
             plot for [m={lo}:{hi}] '{csv_path}' skip 1 using 1:($3 == m ? $5 : 1/0) with lines title sprintf('m = %d', m)\n",
            q = quantity.name(),
            k = parity.k(),
            lo = orders[0],
            hi = orders[orders.len() - 1],
        )
    }
}

pub fn cmd_figure(preset: &FigurePreset, plot_script: Option<&Path>) -> Result<(), CliError> {
    cmd_sweep(&preset.spec)?;
    if let Some(script) = plot_script {
        let csv_name = preset
            .spec
            .output
            .as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| format!("{}.csv", preset.id));
        std::fs::write(script, preset.plot_script(&csv_name))
            .map_err(|e| CliError::Io(format!("{}: {e}", script.display())))?;
    }
    Ok(())
}

/// Points checked by `verify`.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyGrid {
    pub alpha2: Vec<f64>,
    pub m_list: Vec<LaguerreOrder>,
    pub k_list: Vec<Parity>,
}

impl Default for VerifyGrid {
    /// `|α|² ∈ {0.1, 0.2, …, 4.0}`, `m ∈ 0..=4`, `k ∈ {0, 1}`: 400 points.
    fn default() -> Self {
        Self {
            alpha2: (1..=40).map(|i| f64::from(i) / 10.0).collect(),
            m_list: (0..=4).map(|m| LaguerreOrder::new(m).expect("small order")).collect(),
            k_list: vec![Parity::Even, Parity::Odd],
        }
    }
}

impl VerifyGrid {
    pub fn points(&self) -> Result<Vec<ModelParams>, CliError> {
        let mut out = Vec::new();
        for &parity in &self.k_list {
            for &order in &self.m_list {
                for &a in &self.alpha2 {
                    out.push(ModelParams {
                        strength: StrengthParam::new(a)?,
                        order,
                        parity,
                    });
                }
            }
        }
        Ok(out)
    }
}

/// Totals of a verification run.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifySummary {
    pub records: Vec<VerificationRecord>,
    pub failures: usize,
    pub max_exact: f64,
    pub max_discord: f64,
}

pub fn run_verification(
    grid: &VerifyGrid,
    bounds: &Bounds,
    nmax_override: Option<usize>,
) -> Result<VerifySummary, CliError> {
    let mut records = Vec::new();
    for p in grid.points()? {
        // odd parity at vanishing amplitude has no state to rebuild
        if p.is_limit_regime() {
            continue;
        }
        records.push(verify(&p, nmax_override)?);
    }
    let failures = records.iter().filter(|r| !r.passes(bounds)).count();
    let max_exact = records.iter().map(|r| r.max_deviation_where(false)).fold(0.0, f64::max);
    let max_discord = records.iter().map(|r| r.max_deviation_where(true)).fold(0.0, f64::max);
    Ok(VerifySummary {
        records,
        failures,
        max_exact,
        max_discord,
    })
}

/// One row per point: coordinates, signed deviation per field, max and pass flag.
pub fn write_verification<W: Write>(summary: &VerifySummary, bounds: &Bounds, out: W) -> Result<(), CliError> {
    let mut w = csv_writer(out);
    let mut header: Vec<String> = ["alpha2", "p", "m", "k", "nmax"].map(String::from).to_vec();
    header.extend(Quantity::ALL.iter().map(|q| format!("dev_{}", q.name())));
    header.push("max_deviation".into());
    header.push("pass".into());
    w.write_record(&header)?;
    for r in &summary.records {
        let mut record = vec![
            format_float(r.params.alpha2()),
            format_float(r.params.overlap()),
            r.params.m().to_string(),
            r.params.parity.k().to_string(),
            r.nmax.to_string(),
        ];
        record.extend(r.deviations.iter().map(|d| format_float(d.signed)));
        record.push(format_float(r.max_deviation()));
        record.push(r.passes(bounds).to_string());
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_verify(
    grid: &VerifyGrid,
    bounds: &Bounds,
    nmax_override: Option<usize>,
    output: Option<&Path>,
) -> Result<VerifySummary, CliError> {
    let summary = run_verification(grid, bounds, nmax_override)?;
    with_output(output, |out| write_verification(&summary, bounds, out))?;
    eprintln!(
        "verified {} points: max entropy/concurrence deviation {:.3e} (bound {:.1e}), max discord deviation {:.3e} (bound {:.1e}), {} failing",
        summary.records.len(),
        summary.max_exact,
        bounds.exact,
        summary.max_discord,
        bounds.discord,
        summary.failures
    );
    if summary.failures > 0 {
        return Err(CliError::Verification {
            failures: summary.failures,
            points: summary.records.len(),
        });
    }
    Ok(summary)
}

/// Human-readable threshold line.
pub fn format_threshold(m: LaguerreOrder, parity: Parity, t: &Threshold) -> String {
    let head = format!("m={} k={}", m, parity.k());
    match t {
        Threshold::Root { alpha2, p } => format!("{head} alpha2*={alpha2:.7} p*={p:.7}"),
        Threshold::MonogamousEverywhere => format!("{head} monogamous everywhere"),
        Threshold::ViolatedThroughout => format!("{head} violated across the whole scan"),
    }
}

pub fn cmd_threshold(m: LaguerreOrder, parity: Parity) -> Threshold {
    let t = violation_threshold(m, parity);
    println!("{}", format_threshold(m, parity, &t));
    t
}

#[derive(Parser, Debug)]
#[command(
    name = "pacs-corr",
    version,
    about = "Correlations of photon-added coherent quasi-Bell and quasi-GHZ states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate report quantities over a range of |alpha|^2 or p.
    Sweep(SweepArgs),
    /// Emit the data behind one of the eight figures.
    Figure(FigureArgs),
    /// Compare the closed forms with the truncated-Fock oracle.
    Verify(VerifyArgs),
    /// Locate the |alpha|^2 below which discord monogamy fails.
    Threshold(ThresholdArgs),
}

fn parse_parity(s: &str) -> Result<Parity, String> {
    match s {
        "even" => Ok(Parity::Even),
        "odd" => Ok(Parity::Odd),
        _ => s
            .parse::<u32>()
            .map(Parity::from_k)
            .map_err(|_| format!("invalid k '{s}' (expected an integer, even or odd)")),
    }
}

fn parse_order(s: &str) -> Result<LaguerreOrder, String> {
    let m: u32 = s.parse().map_err(|_| format!("invalid m '{s}'"))?;
    LaguerreOrder::new(m).map_err(|e| e.to_string())
}

fn parse_quantity(s: &str) -> Result<Quantity, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value = "alpha2")]
    axis: Axis,
    #[arg(long)]
    start: f64,
    #[arg(long)]
    stop: f64,
    #[arg(long, default_value_t = FIGURE_POINTS)]
    steps: usize,
    /// Photon-addition orders, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0", value_parser = parse_order)]
    m: Vec<LaguerreOrder>,
    /// Parities `k`, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0", value_parser = parse_parity)]
    k: Vec<Parity>,
    /// Report fields, comma separated (e.g. D12,D23,Delta123).
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_quantity)]
    quantities: Vec<Quantity>,
    /// Output CSV path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FigureArgs {
    /// fig1 ... fig8
    id: FigureId,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script that plots the CSV.
    #[arg(long)]
    plot_script: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0.1)]
    start: f64,
    #[arg(long, default_value_t = 4.0)]
    stop: f64,
    #[arg(long, default_value_t = 40)]
    steps: usize,
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4", value_parser = parse_order)]
    m: Vec<LaguerreOrder>,
    #[arg(long, value_delimiter = ',', default_value = "0,1", value_parser = parse_parity)]
    k: Vec<Parity>,
    /// Single bound applied to every field instead of the default 1e-8 / 1e-3 pair.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Fock cutoff used for every point instead of the automatic rule.
    #[arg(long)]
    nmax_override: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    #[arg(long, value_parser = parse_order)]
    m: LaguerreOrder,
    #[arg(long, value_parser = parse_parity)]
    k: Parity,
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep(a) => cmd_sweep(&SweepSpec {
            axis: a.axis,
            start: a.start,
            stop: a.stop,
            steps: a.steps,
            m_list: a.m,
            k_list: a.k,
            quantities: a.quantities,
            output: a.out,
        }),
        Command::Figure(a) => cmd_figure(&FigurePreset::new(a.id, a.out), a.plot_script.as_deref()),
        Command::Verify(a) => {
            let axis = SweepSpec {
                axis: Axis::Alpha2,
                start: a.start,
                stop: a.stop,
                steps: a.steps,
                m_list: a.m.clone(),
                k_list: a.k.clone(),
                quantities: vec![Quantity::D12],
                output: None,
            };
            axis.validate()?;
            let bounds = match a.tolerance {
                Some(t) if t.is_finite() && t >= 0.0 => Bounds::uniform(t),
                Some(t) => return Err(CliError::Usage(format!("invalid tolerance {t}"))),
                None => Bounds::default(),
            };
            let grid = VerifyGrid {
                alpha2: axis.axis_values(),
                m_list: a.m,
                k_list: a.k,
            };
            cmd_verify(&grid, &bounds, a.nmax_override, a.out.as_deref()).map(|_| ())
        }
        Command::Threshold(a) => {
            cmd_threshold(a.m, a.k);
            Ok(())
        }
    }
}

/// Parses `args` (program name first) and runs the subcommand; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("pacs-corr: {e}");
            e.exit_code()
        }
    }
}
