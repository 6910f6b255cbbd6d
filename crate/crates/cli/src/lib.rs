//! Command-line front end for `deltawell`. Each subcommand evaluates one
//! analysis and produces a table, written as CSV or JSON.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deltawell::fourier::{self, FourierExpansion};
use deltawell::lattice::{self, Location, PointKind};
use deltawell::model::{nu_n, phi_mode};
use deltawell::observables::{self, AmplitudeExtremum};
use deltawell::spectrum::{self, LevelSource};
use deltawell::wavefn::{self, LimitPoint, Side, WaveKind};
use deltawell::{oracle, Setup, X0Spec};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] deltawell::Error),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for bad arguments, 3 for domain errors, 4 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) | CliError::Csv(_) => 2,
            CliError::Core(e) if e.is_domain() => 3,
            CliError::Core(_) => 4,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Parser, Debug)]
#[command(name = "deltawell", version, about = "Spectral data for a box with a point interaction")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Box length L.
    #[arg(long = "L", global = true, default_value_t = 1.0)]
    pub length: f64,
    /// hbar^2 / 2m.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub c: f64,
    /// Position of the interaction: rational:<p>/<q> (in units of L/2) or real:<x0>.
    #[arg(long, global = true, default_value = "rational:0/1")]
    pub x0: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LimitKind {
    Hat,
    Under,
    Over,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Below,
    Above,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lattice points and the intervals between them.
    Partition {
        /// Largest nu to list (default 10 nu1).
        #[arg(long, allow_hyphen_values = true)]
        nu_max: Option<String>,
    },
    /// Lowest energy levels for a given alpha.
    Spectrum {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 6)]
        levels: usize,
        /// Repeat for x0 = (i/K) L/2, i = 0..K-1.
        #[arg(long)]
        x0_sweep: Option<u64>,
    },
    /// alpha, r, E(x) and rho along nu.
    Sweep(SweepArgs),
    /// Samples of normalized states, limit functions and free modes.
    Wavefunction(WaveArgs),
    /// Residual check of a limit function.
    Limit {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 8192)]
        grid: usize,
    },
    /// Sine-series coefficients or partial sums.
    Fourier(FourierArgs),
    /// Probability ratio r(nu) on a grid.
    Ratio(GridArgs),
    /// Position expectation on a grid.
    Expectation(GridArgs),
    /// Amplitude extrema of the centred well.
    Amplitude {
        #[arg(long, default_value_t = 1)]
        n: u64,
        /// List every odd n up to this value.
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Finite-difference comparison of the lowest levels.
    Oracle {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 2047)]
        grid: usize,
        #[arg(long, default_value_t = 6)]
        count: usize,
        /// Move the interaction to the nearest node when x0 is off the grid.
        #[arg(long)]
        snap: bool,
    },
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Sweep inside this interval.
    #[arg(long)]
    pub interval: Option<usize>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Range of the alpha grid mapped into the interval.
    #[arg(long, default_value_t = 50.0)]
    pub alpha_max: f64,
    /// Lower end for the unbounded interval, or of the range.
    #[arg(long, allow_hyphen_values = true)]
    pub nu_min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu_max: Option<String>,
}

#[derive(Args, Debug)]
pub struct GridArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub nu_min: String,
    #[arg(long, allow_hyphen_values = true, default_value = "10nu1")]
    pub nu_max: String,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Args, Debug)]
pub struct PointArgs {
    #[arg(long, value_enum)]
    pub limit: Option<LimitKind>,
    /// k for under, l for over.
    #[arg(long)]
    pub index: Option<u64>,
    /// nu = nu_n; required for --limit hat.
    #[arg(long)]
    pub nu_mode: Option<u64>,
    #[arg(long, value_enum, default_value_t = SideArg::Below)]
    pub side: SideArg,
}

#[derive(Args, Debug)]
pub struct WaveArgs {
    /// Spectral parameter, as a number or a multiple of nu1 (e.g. -3nu1). Repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Vec<String>,
    #[command(flatten)]
    pub point: PointArgs,
    /// Free mode Phi_n. Repeatable.
    #[arg(long)]
    pub phi: Vec<u64>,
    #[arg(long, requires = "snapshots")]
    pub interval: Option<usize>,
    /// Five states across the interval: both ends, nu_n (or the midpoint) and the quarter points.
    #[arg(long, requires = "interval")]
    pub snapshots: bool,
    #[arg(long, default_value_t = 201)]
    pub points: usize,
}

#[derive(Args, Debug)]
pub struct FourierArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, default_value_t = fourier::DEFAULT_MODES)]
    pub modes: usize,
    /// Emit partial sums at this many points instead of coefficients.
    #[arg(long)]
    pub points: Option<usize>,
    /// Emit one row with the truncation diagnostics.
    #[arg(long, conflicts_with = "points")]
    pub summary: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    F(f64),
    U(u64),
    S(String),
    Empty,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::F(x) => format_float(*x),
            Cell::U(n) => n.to_string(),
            Cell::S(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        use serde_json::Value;
        match self {
            Cell::F(x) if x.is_finite() => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::F(x) => Value::String(format_float(*x)),
            Cell::U(n) => Value::from(*n),
            Cell::S(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

fn opt_u(v: Option<u64>) -> Cell {
    v.map_or(Cell::Empty, Cell::U)
}

/// Shortest round-trip decimal; exponent form for very small or large
/// magnitudes, `inf`/`-inf`/`nan` otherwise unrepresentable.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else if x != 0.0 && (x.abs() < 1e-5 || x.abs() >= 1e16) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Index of a column by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj = self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&rows).expect("json serialization");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => Ok(self.to_json()),
        }
    }
}

pub fn parse_x0(spec: &str) -> Result<X0Spec<f64>> {
    if let Some(rest) = spec.strip_prefix("rational:") {
        let Some((p, q)) = rest.split_once('/') else {
            return usage(format!("expected rational:<p>/<q>, got {spec}"));
        };
        let p = p.trim().parse().map_err(|_| CliError::Usage(format!("bad numerator in {spec}")))?;
        let q = q.trim().parse().map_err(|_| CliError::Usage(format!("bad denominator in {spec}")))?;
        Ok(X0Spec::Rational { p, q })
    } else if let Some(rest) = spec.strip_prefix("real:") {
        let value = rest.trim().parse().map_err(|_| CliError::Usage(format!("bad value in {spec}")))?;
        Ok(X0Spec::Real { value })
    } else {
        usage(format!("x0 must be rational:<p>/<q> or real:<value>, got {spec}"))
    }
}

/// `<float>` or `<float>nu1`.
pub fn parse_nu(s: &str, setup: &Setup<f64>) -> Result<f64> {
    let t = s.trim();
    let (num, scale) = match t.strip_suffix("nu1") {
        Some(head) => (head, nu_n(setup, 1)),
        None => (t, 1.0),
    };
    let v: f64 = match num {
        "" | "+" => 1.0,
        "-" => -1.0,
        _ => num.parse().map_err(|_| CliError::Usage(format!("bad nu value {s}")))?,
    };
    if !v.is_finite() {
        return usage(format!("nu must be finite, got {s}"));
    }
    Ok(v * scale)
}

pub fn build_setup(g: &Global) -> Result<Setup<f64>> {
    Ok(Setup::new(g.length, parse_x0(&g.x0)?, g.c)?)
}

/// Parses `args` (without the program name) and evaluates the command.
pub fn run_args<I, S>(args: I) -> Result<Table>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("deltawell".to_string()).chain(args.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))?;
    run(&cli)
}

pub fn run(cli: &Cli) -> Result<Table> {
    let setup = build_setup(&cli.global)?;
    match &cli.command {
        Command::Partition { nu_max } => cmd_partition(&setup, nu_max.as_deref()),
        Command::Spectrum { alpha, levels, x0_sweep } => cmd_spectrum(&cli.global, &setup, *alpha, *levels, *x0_sweep),
        Command::Sweep(a) => cmd_sweep(&setup, a),
        Command::Wavefunction(a) => cmd_wavefunction(&setup, a),
        Command::Limit { point, grid } => cmd_limit(&setup, point, *grid),
        Command::Fourier(a) => cmd_fourier(&setup, a),
        Command::Ratio(a) => cmd_ratio(&setup, a),
        Command::Expectation(a) => cmd_expectation(&setup, a),
        Command::Amplitude { n, n_max } => cmd_amplitude(*n, *n_max),
        Command::Oracle { alpha, grid, count, snap } => cmd_oracle(&setup, *alpha, *grid, *count, *snap),
    }
}

/// Runs the command and writes the table where `--output` points.
pub fn execute(cli: &Cli) -> Result<()> {
    let text = run(cli)?.render(cli.global.format)?;
    match &cli.global.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn kind_name(kind: PointKind) -> (&'static str, Option<u64>, Option<u64>) {
    match kind {
        PointKind::Under(k) => ("under", Some(k), None),
        PointKind::Over(l) => ("over", None, Some(l)),
        PointKind::Both(k, l) => ("both", Some(k), Some(l)),
    }
}

pub fn cmd_partition(setup: &Setup<f64>, nu_max: Option<&str>) -> Result<Table> {
    let nu_max = match nu_max {
        Some(s) => parse_nu(s, setup)?,
        None => nu_n(setup, 10),
    };
    if !(nu_max > 0.0) {
        return usage("--nu-max must be positive");
    }
    let part = lattice::partition(setup, nu_max);
    let mut t = Table::new(&["record", "index", "nu", "kind", "k", "l", "lower", "upper", "case", "mode"]);
    for (i, p) in part.points.iter().enumerate() {
        let (name, k, l) = kind_name(p.kind);
        let mode = match p.kind {
            PointKind::Both(k, l) => Some(k + l),
            _ => None,
        };
        t.push(vec![
            Cell::S("point".into()),
            Cell::U(i as u64 + 1),
            Cell::F(p.nu),
            Cell::S(name.into()),
            opt_u(k),
            opt_u(l),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            opt_u(mode),
        ]);
    }
    for iv in &part.intervals {
        t.push(vec![
            Cell::S("interval".into()),
            Cell::U(iv.index as u64),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            iv.lower.map_or(Cell::Empty, |p| Cell::F(p.nu)),
            Cell::F(iv.upper_nu()),
            Cell::S(iv.case_tag.name().into()),
            opt_u(iv.contains_mode),
        ]);
    }
    Ok(t)
}

pub fn cmd_spectrum(g: &Global, setup: &Setup<f64>, alpha: f64, count: usize, sweep: Option<u64>) -> Result<Table> {
    let setups = match sweep {
        None => vec![*setup],
        Some(0) => return usage("--x0-sweep must be positive"),
        Some(k) => (0..k)
            .map(|i| Setup::new(g.length, X0Spec::Rational { p: i, q: k }, g.c))
            .collect::<std::result::Result<_, _>>()?,
    };
    let mut t = Table::new(&["x0", "record", "index", "nu", "energy"]);
    for s in &setups {
        for lv in spectrum::levels(s, alpha, count)? {
            let (record, index) = match lv.source {
                LevelSource::Interval(j) => ("interval", j as u64),
                LevelSource::Kappa(n) => ("kappa", n),
            };
            t.push(vec![Cell::F(s.x0()), Cell::S(record.into()), Cell::U(index), Cell::F(lv.nu), Cell::F(lv.energy)]);
        }
    }
    Ok(t)
}

fn is_regular(setup: &Setup<f64>, nu: f64) -> bool {
    matches!(lattice::locate(setup, nu), Location::Interval(_))
}

fn uniform(lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    if samples <= 1 {
        return vec![lo];
    }
    (0..samples).map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64).collect()
}

pub fn cmd_sweep(setup: &Setup<f64>, a: &SweepArgs) -> Result<Table> {
    let mut nus = Vec::new();
    match a.interval {
        Some(j) => {
            let iv = lattice::interval(setup, j);
            let hi = iv.upper_nu();
            let lo = match (iv.lower, &a.nu_min) {
                (Some(p), _) => p.nu,
                (None, Some(s)) => parse_nu(s, setup)?,
                (None, None) => -hi,
            };
            if !(lo < hi) {
                return usage("--nu-min must lie below the interval's upper end");
            }
            let n = a.samples.max(1);
            nus.extend((1..=n).map(|i| lo + (hi - lo) * i as f64 / (n + 1) as f64));
            for alpha in uniform(-a.alpha_max, a.alpha_max, a.samples) {
                let nu = spectrum::solve_nu(setup, alpha, &iv)?;
                if nu > lo && nu < hi {
                    nus.push(nu);
                }
            }
        }
        None => {
            let (Some(lo), Some(hi)) = (&a.nu_min, &a.nu_max) else {
                return usage("sweep needs --interval or both --nu-min and --nu-max");
            };
            let (lo, hi) = (parse_nu(lo, setup)?, parse_nu(hi, setup)?);
            if !(lo < hi) {
                return usage("--nu-min must be below --nu-max");
            }
            nus = uniform(lo, hi, a.samples.max(2));
        }
    }
    nus.retain(|&nu| is_regular(setup, nu));
    nus.sort_by(f64::total_cmp);
    nus.dedup();
    let mut t = Table::new(&["nu", "alpha", "r", "ex", "rho"]);
    for nu in nus {
        t.push(vec![
            Cell::F(nu),
            Cell::F(spectrum::alpha_from_nu(setup, nu)?),
            Cell::F(observables::prob_ratio(setup, nu).r),
            Cell::F(observables::expectation_x(setup, nu)?),
            Cell::F(wavefn::rho(setup, nu)),
        ]);
    }
    Ok(t)
}

fn limit_point(p: &PointArgs) -> Result<Option<LimitPoint>> {
    let side = match p.side {
        SideArg::Below => Side::Below,
        SideArg::Above => Side::Above,
    };
    Ok(match p.limit {
        None => None,
        Some(LimitKind::Hat) => match p.nu_mode.or(p.index) {
            Some(n) => Some(LimitPoint::Hat(n)),
            None => return usage("--limit hat needs --nu-mode"),
        },
        Some(LimitKind::Under) => match p.index {
            Some(k) => Some(LimitPoint::Under(k, side)),
            None => return usage("--limit under needs --index"),
        },
        Some(LimitKind::Over) => match p.index {
            Some(l) => Some(LimitPoint::Over(l)),
            None => return usage("--limit over needs --index"),
        },
    })
}

fn point_label(p: LimitPoint) -> String {
    match p {
        LimitPoint::Hat(n) => format!("hat_{n}"),
        LimitPoint::Under(k, Side::Below) => format!("under_{k}_below"),
        LimitPoint::Under(k, Side::Above) => format!("under_{k}_above"),
        LimitPoint::Over(l) => format!("over_{l}"),
    }
}

fn wave_kind(kind: WaveKind<f64>) -> &'static str {
    match kind {
        WaveKind::Trig(_) => "trig",
        WaveKind::Linear => "linear",
        WaveKind::Hyper(_) => "hyper",
        WaveKind::Limit(_) => "limit",
    }
}

/// nu values shown for an interval: just inside both ends, nu_n (or the
/// midpoint) and halfway to each end. The unbounded interval starts at 0.
pub fn snapshot_nus(setup: &Setup<f64>, j: usize) -> Vec<f64> {
    let iv = lattice::interval(setup, j);
    let hi = iv.upper_nu();
    let lo = iv.lower.map_or(0.0, |p| p.nu);
    let mid = iv.contains_mode.map_or((lo + hi) / 2.0, |n| nu_n(setup, n));
    let eps = 1e-6 * (hi - lo);
    vec![lo + eps, (lo + mid) / 2.0, mid, (mid + hi) / 2.0, hi - eps]
}

pub fn cmd_wavefunction(setup: &Setup<f64>, a: &WaveArgs) -> Result<Table> {
    let mut t = Table::new(&["curve", "nu", "kind", "x", "value"]);
    let points = a.points.max(2);
    let xs = wavefn::grid(setup, points);
    let state = |t: &mut Table, label: String, nu: f64| -> Result<()> {
        for s in wavefn::sample_normalized(setup, nu, points)? {
            t.push(vec![Cell::S(label.clone()), Cell::F(nu), Cell::S(wave_kind(s.kind).into()), Cell::F(s.x), Cell::F(s.value)]);
        }
        Ok(())
    };
    for s in &a.nu {
        let nu = parse_nu(s, setup)?;
        state(&mut t, format!("nu={}", format_float(nu)), nu)?;
    }
    let limit = limit_point(&a.point)?;
    match (limit, a.point.nu_mode) {
        (Some(p), _) => {
            let nu = wavefn::limit_nu(setup, p);
            for &x in &xs {
                let v = wavefn::upsilon(setup, p, x)?;
                t.push(vec![Cell::S(point_label(p)), Cell::F(nu), Cell::S("limit".into()), Cell::F(x), Cell::F(v)]);
            }
        }
        (None, Some(n)) => state(&mut t, format!("nu_{n}"), nu_n(setup, n))?,
        (None, None) => {}
    }
    for &n in &a.phi {
        let nu = nu_n(setup, n);
        for &x in &xs {
            let v = phi_mode(setup, n, x)?;
            t.push(vec![Cell::S(format!("phi_{n}")), Cell::F(nu), Cell::S("free".into()), Cell::F(x), Cell::F(v)]);
        }
    }
    if let (Some(j), true) = (a.interval, a.snapshots) {
        for (i, nu) in snapshot_nus(setup, j).into_iter().enumerate() {
            state(&mut t, format!("snapshot_{}", i + 1), nu)?;
        }
    }
    if t.rows.is_empty() {
        return usage("nothing to sample: pass --nu, --nu-mode, --limit, --phi or --interval with --snapshots");
    }
    Ok(t)
}

pub fn cmd_limit(setup: &Setup<f64>, p: &PointArgs, grid: usize) -> Result<Table> {
    let Some(point) = limit_point(p)? else {
        return usage("limit needs --limit");
    };
    let r = wavefn::limit_residual(setup, point, grid)?;
    let mut t = Table::new(&["point", "nu", "kappa_over_c", "jump", "jump_error", "ode", "boundary"]);
    t.push(vec![
        Cell::S(point_label(point)),
        Cell::F(wavefn::limit_nu(setup, point)),
        Cell::F(r.kappa_over_c),
        Cell::F(r.jump),
        Cell::F(r.jump_error()),
        Cell::F(r.ode),
        Cell::F(r.boundary),
    ]);
    Ok(t)
}

pub fn cmd_fourier(setup: &Setup<f64>, a: &FourierArgs) -> Result<Table> {
    if a.modes == 0 {
        return usage("--modes must be positive");
    }
    let limit = limit_point(&a.point)?;
    let nu = match (&a.nu, a.point.nu_mode) {
        (Some(s), _) => Some(parse_nu(s, setup)?),
        (None, Some(n)) => Some(nu_n(setup, n)),
        (None, None) => None,
    };
    let (expansion, direct): (FourierExpansion, Box<dyn Fn(f64) -> deltawell::Result<f64> + '_>) = match (limit, nu) {
        (Some(p), _) => (fourier::coeffs_limit(setup, p, a.modes)?, Box::new(move |x| wavefn::upsilon(setup, p, x))),
        (None, Some(nu)) => {
            (fourier::coeffs_general(setup, nu, a.modes)?, Box::new(move |x| wavefn::eval_normalized(setup, nu, x)))
        }
        (None, None) => return usage("fourier needs --nu, --nu-mode or --limit"),
    };
    if a.summary {
        let mut t = Table::new(&["modes", "prefactor", "sum_squares", "parseval_defect", "tail_bound"]);
        t.push(vec![
            Cell::U(expansion.truncation() as u64),
            Cell::F(expansion.prefactor),
            Cell::F(expansion.sum_squares()),
            Cell::F(expansion.parseval_defect()),
            Cell::F(expansion.tail_bound()),
        ]);
        return Ok(t);
    }
    if let Some(points) = a.points {
        let mut t = Table::new(&["x", "partial", "direct", "error"]);
        for x in wavefn::grid(setup, points.max(2)) {
            let p = fourier::partial_sum(&expansion, x);
            let d = direct(x)?;
            t.push(vec![Cell::F(x), Cell::F(p), Cell::F(d), Cell::F(p - d)]);
        }
        return Ok(t);
    }
    let mut t = Table::new(&["m", "a"]);
    for (i, &c) in expansion.coefficients.iter().enumerate() {
        t.push(vec![Cell::U(i as u64 + 1), Cell::F(c)]);
    }
    Ok(t)
}

/// Grid points off the lattice, plus points of K (where r and E(x) extend
/// continuously).
fn grid_nus(setup: &Setup<f64>, a: &GridArgs) -> Result<Vec<f64>> {
    let lo = parse_nu(&a.nu_min, setup)?;
    let hi = parse_nu(&a.nu_max, setup)?;
    if !(lo < hi) {
        return usage("--nu-min must be below --nu-max");
    }
    Ok(uniform(lo, hi, a.samples.max(2))
        .into_iter()
        .filter(|&nu| match lattice::locate(setup, nu) {
            Location::Point(p) => p.is_both(),
            Location::Interval(_) => true,
        })
        .collect())
}

pub fn cmd_ratio(setup: &Setup<f64>, a: &GridArgs) -> Result<Table> {
    let mut t = Table::new(&["nu", "r"]);
    for nu in grid_nus(setup, a)? {
        t.push(vec![Cell::F(nu), Cell::F(observables::prob_ratio(setup, nu).r)]);
    }
    Ok(t)
}

pub fn cmd_expectation(setup: &Setup<f64>, a: &GridArgs) -> Result<Table> {
    let mut t = Table::new(&["nu", "ex"]);
    for nu in grid_nus(setup, a)? {
        t.push(vec![Cell::F(nu), Cell::F(observables::expectation_x(setup, nu)?)]);
    }
    Ok(t)
}

pub fn cmd_amplitude(n: u64, n_max: Option<u64>) -> Result<Table> {
    let last = n_max.unwrap_or(n);
    if n % 2 == 0 || last < n {
        return usage("--n must be odd and not above --n-max");
    }
    let mut t = Table::new(&["n", "extremum", "gamma", "value", "bracket_lo", "bracket_hi"]);
    let row = |t: &mut Table, name: &str, e: &AmplitudeExtremum| {
        t.push(vec![
            Cell::U(e.n),
            Cell::S(name.into()),
            Cell::F(e.gamma_crit),
            Cell::F(e.value),
            Cell::F(e.bracket.0),
            Cell::F(e.bracket.1),
        ]);
    };
    for k in (n..=last).step_by(2) {
        let (mx, mn) = observables::amplitude::<f64>(k)?;
        row(&mut t, "max", &mx);
        row(&mut t, "min", &mn);
    }
    Ok(t)
}

pub fn cmd_oracle(setup: &Setup<f64>, alpha: f64, grid: usize, count: usize, snap: bool) -> Result<Table> {
    let r = oracle::compare(setup, alpha, grid, count, snap)?;
    let mut t = Table::new(&["index", "nu", "analytic", "oracle", "energy_error", "wave_error"]);
    for l in &r.levels {
        t.push(vec![
            Cell::U(l.index as u64),
            Cell::F(l.nu),
            Cell::F(l.analytic),
            Cell::F(l.oracle),
            Cell::F(l.energy_error),
            Cell::F(l.wave_error),
        ]);
    }
    Ok(t)
}

/// A command line (after the program name) that regenerates the data behind
/// one figure.
#[derive(Debug, Clone, Copy)]
pub struct FigureCommand {
    pub figure: &'static str,
    pub args: &'static str,
}

pub const FIGURE_COMMANDS: &[FigureCommand] = &[
    FigureCommand { figure: "fig1", args: "sweep --x0 rational:1/4 --nu-min 0 --nu-max 10nu1 --samples 4000" },
    FigureCommand { figure: "fig2", args: "sweep --x0 rational:1/4 --nu-min -10nu1 --nu-max 0 --samples 400" },
    FigureCommand { figure: "x_nu", args: "spectrum --alpha 20 --levels 6 --x0-sweep 64" },
    FigureCommand { figure: "x_nu", args: "spectrum --alpha 0 --levels 6 --x0-sweep 64" },
    FigureCommand { figure: "x_nu", args: "spectrum --alpha -20 --levels 6 --x0-sweep 64" },
    FigureCommand { figure: "line", args: "partition --x0 rational:1/4 --nu-max 9nu1" },
    FigureCommand { figure: "line-zero", args: "partition --x0 rational:0/1 --nu-max 7nu1" },
    FigureCommand { figure: "x0", args: "wavefunction --x0 rational:0/1 --interval 2 --snapshots" },
    FigureCommand { figure: "negative", args: "wavefunction --x0 rational:1/4 --nu -9nu1 --nu -3nu1 --nu -0.1nu1" },
    FigureCommand { figure: "um", args: "wavefunction --x0 rational:1/4 --interval 0 --snapshots" },
    FigureCommand { figure: "dois", args: "wavefunction --x0 rational:1/4 --interval 1 --snapshots" },
    FigureCommand { figure: "tres", args: "wavefunction --x0 rational:1/4 --interval 2 --snapshots" },
    FigureCommand { figure: "quatro", args: "wavefunction --x0 rational:1/4 --interval 3 --snapshots" },
    FigureCommand { figure: "sete", args: "wavefunction --x0 rational:1/4 --interval 6 --snapshots" },
    FigureCommand { figure: "oito", args: "wavefunction --x0 rational:1/4 --phi 8 --nu-mode 8 --limit hat" },
    FigureCommand { figure: "nove", args: "wavefunction --x0 rational:1/4 --interval 7 --snapshots" },
    FigureCommand { figure: "exemplo", args: "wavefunction --x0 rational:3/4 --nu-mode 16 --limit hat --phi 16 --points 512" },
    FigureCommand { figure: "right", args: "wavefunction --x0 real:0.12598815766974242 --nu 48.11818941929711" },
    FigureCommand { figure: "ratio", args: "ratio --x0 rational:1/4 --nu-min 0 --nu-max 10nu1 --samples 4000" },
    FigureCommand { figure: "media8", args: "expectation --x0 rational:1/4 --nu-min 0 --nu-max 10nu1 --samples 4000" },
    FigureCommand { figure: "media63", args: "expectation --x0 real:0.12598815766974242 --nu-min 0 --nu-max 10nu1 --samples 4000" },
    FigureCommand { figure: "ratio45", args: "ratio --x0 rational:3/4 --nu-min 0 --nu-max 10nu1 --samples 4000" },
    FigureCommand { figure: "media34", args: "expectation --x0 rational:3/4 --nu-min 0 --nu-max 10nu1 --samples 4000" },
    FigureCommand { figure: "ratio50", args: "ratio --x0 real:0.07071067811865475 --nu-min 0 --nu-max 10nu1 --samples 4000" },
    FigureCommand { figure: "ratio14", args: "ratio --x0 rational:1/7 --nu-min 0 --nu-max 10nu1 --samples 4000" },
    FigureCommand { figure: "muitopequeno", args: "ratio --x0 rational:1/500 --nu-min 0 --nu-max 10nu1 --samples 4000" },
    FigureCommand { figure: "media0", args: "expectation --x0 rational:1/500 --nu-min 0 --nu-max 10nu1 --samples 4000" },
    FigureCommand { figure: "superimposed", args: "ratio --x0 real:0.4225771273642583 --nu-min 0 --nu-max 10nu1 --samples 4000" },
    FigureCommand { figure: "superimposed", args: "ratio --x0 rational:11/13 --nu-min 0 --nu-max 10nu1 --samples 4000" },
];

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Setup<f64> {
        Setup::unit(X0Spec::Rational { p: 1, q: 4 }).unwrap()
    }

    #[test]
    fn float_format() {
        assert_eq!(format_float(0.1), "0.1");
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(1.5e-7), "1.5e-7");
        assert_eq!(format_float(2e16), "2e16");
        assert_eq!(format_float(f64::INFINITY), "inf");
        assert_eq!(format_float(f64::NEG_INFINITY), "-inf");
        let x = std::f64::consts::PI;
        assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn x0_grammar() {
        assert_eq!(parse_x0("rational:1/4").unwrap(), X0Spec::Rational { p: 1, q: 4 });
        assert_eq!(parse_x0("real:0.125").unwrap(), X0Spec::Real { value: 0.125 });
        assert!(parse_x0("0.125").is_err());
        assert!(parse_x0("rational:1").is_err());
    }

    #[test]
    fn nu_grammar() {
        let s = unit();
        let nu1 = 2.0 * std::f64::consts::PI;
        assert_eq!(parse_nu("3.5", &s).unwrap(), 3.5);
        assert_eq!(parse_nu("-9nu1", &s).unwrap(), -9.0 * nu1);
        assert_eq!(parse_nu("nu1", &s).unwrap(), nu1);
        assert!(parse_nu("9nu", &s).is_err());
    }

    #[test]
    fn json_marks_infinities_as_strings() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec![Cell::F(f64::INFINITY), Cell::F(0.5)]);
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v[0]["a"], "inf");
        assert_eq!(v[0]["b"], 0.5);
    }

    #[test]
    fn error_codes() {
        assert_eq!(run_args(["partition", "--x0", "bogus"]).unwrap_err().exit_code(), 2);
        assert_eq!(run_args(["partition", "--x0", "rational:5/4"]).unwrap_err().exit_code(), 3);
        assert_eq!(run_args(["fourier", "--x0", "rational:1/4", "--limit", "hat", "--nu-mode", "3"]).unwrap_err().exit_code(), 3);
        assert_eq!(run_args(["amplitude", "--n", "2"]).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn snapshot_points_are_ordered() {
        let s = unit();
        for j in 0..8 {
            let v = snapshot_nus(&s, j);
            assert!(v.windows(2).all(|w| w[0] < w[1]), "{j} {v:?}");
        }
    }
}
