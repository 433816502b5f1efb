//! The `qdeform` command line. Exit codes: 0 success, 1 computation error, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::{DeformationKind, StructureSeq, TwoParamParams, UnifiedParams};
use crate::coherent::{coherent_state, completeness_check, moment_target, normalization_sq, weight_measure};
use crate::config::{Format, RunConfig};
use crate::error::Error;
use crate::fockrep::{build_lowest_weight, full_report, ResidualReport};
use crate::kerr::{deviation_scaling, kerr_spectrum, matched_spectrum, KerrParams, Matcher, ScalingReport};
use crate::qcalc::{QBase, SeriesPolicy};
use crate::qhermite::{gram_target, hermite_explicit, hermite_recurrence, orthogonality_check};
use crate::repclass::{classify, Diagnostics, RepCase, RepParams, Window, DEFAULT_SCAN_DEPTH};
use crate::verify;

#[derive(Debug, Parser)]
#[command(name = "qdeform", version, about = "Deformed oscillator algebras, q^-1-Hermite polynomials and coherent states")]
pub struct Cli {
    /// TOML file with `format`, `output`, `seed` and a `[series]` table
    /// (`rel_tol`, default 1e-15; `max_terms`, default 10000). Flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output format [default: json]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file [default: stdout]
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for randomized sweeps [default: the built-in verify seed]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Relative truncation tolerance of series and products
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    /// Term budget of series and products
    #[arg(long, global = true)]
    pub max_terms: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure function f(n), closed form against recurrence
    Structure(StructureArgs),
    /// Classify the representation fixed by (lambda0, kappa0, B)
    Classify(ClassifyArgs),
    /// Lowest-weight matrices and their relation residuals
    Rep(RepArgs),
    /// q^-1-Hermite polynomial values or the Gram table
    Hermite(HermiteArgs),
    /// Coherent state coefficients and eigen-residual
    Coherent(CoherentArgs),
    /// Moment-problem measure: moments and resolution of unity
    Moments(MomentsArgs),
    /// Deformed spectra matched to the Kerr Hamiltonian
    Kerr(KerrArgs),
    /// Run the acceptance checks and print a pass/fail table (JSON with --format json)
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindName {
    ArikCoon,
    Bm,
    Chung,
    Bdy,
    NuModified,
    QNu,
    Unified,
    Abc,
    TwoParam,
}

#[derive(Debug, Clone, Args)]
pub struct DeformationArgs {
    #[arg(long, value_enum, default_value = "unified")]
    pub kind: KindName,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    /// `a` of the (q; a, b, c) form
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// `b` of the (q; a, b, c) form
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// `c` of the (q; a, b, c) form
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// `p` of the two-parameter family
    #[arg(long)]
    pub p: Option<f64>,
    /// `l` of the two-parameter family
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<i32>,
}

#[derive(Debug, Args)]
pub struct StructureArgs {
    #[command(flatten)]
    pub deformation: DeformationArgs,
    #[arg(long, default_value_t = 10)]
    pub n_max: u32,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub q: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub nu: f64,
    #[arg(long, default_value_t = 0.0)]
    pub lambda0: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub kappa0: f64,
    #[arg(long = "B", allow_hyphen_values = true, default_value_t = 0.0)]
    pub b: f64,
    #[arg(long, default_value_t = DEFAULT_SCAN_DEPTH)]
    pub scan_depth: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
}

#[derive(Debug, Args)]
pub struct RepArgs {
    #[command(flatten)]
    pub deformation: DeformationArgs,
    #[arg(long, default_value_t = 40)]
    pub dim: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub report: ReportFormat,
}

#[derive(Debug, Args)]
pub struct HermiteArgs {
    #[arg(long)]
    pub q: f64,
    /// Degree of the polynomial to evaluate
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub x: f64,
    /// Print the Gram table instead of a value
    #[arg(long)]
    pub gram: bool,
    #[arg(long, default_value_t = 10)]
    pub n_max: u32,
}

#[derive(Debug, Args)]
pub struct CoherentArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub z_re: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub z_im: f64,
    #[arg(long)]
    pub q: f64,
    /// Truncate once the dropped norm weight is below this fraction
    #[arg(long, default_value_t = 1e-24)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[arg(long)]
    pub q: f64,
    #[arg(long, default_value_t = 20)]
    pub n_max: u32,
    #[arg(long, default_value_t = 60)]
    pub k_range: i32,
}

#[derive(Debug, Args)]
pub struct KerrArgs {
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: f64,
    #[arg(long, default_value_t = 6)]
    pub n_max: u32,
    #[arg(long, value_enum, default_value = "equal")]
    pub matcher: Matcher,
}

impl ValueEnum for Matcher {
    fn value_variants<'a>() -> &'a [Self] {
        &[Matcher::Equal, Matcher::Nu0, Matcher::EqualBalanced]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            Matcher::Equal => "equal",
            Matcher::Nu0 => "nu0",
            Matcher::EqualBalanced => "equal-balanced",
        }))
    }
}

/// Failure of a subcommand, mapped to an exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(m) => Failure::Usage(m),
            e => Failure::Compute(e),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Usage(msg.into()))
}

struct Settings {
    format: Format,
    /// Whether the format was asked for rather than defaulted.
    format_given: bool,
    output: Option<PathBuf>,
    seed: u64,
    policy: SeriesPolicy,
}

impl Settings {
    fn resolve(cli: &Cli) -> Outcome<Self> {
        let cfg = match &cli.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let mut merged = cfg.clone();
        merged.series.rel_tol = cli.rel_tol.or(cfg.series.rel_tol);
        merged.series.max_terms = cli.max_terms.or(cfg.series.max_terms);
        Ok(Settings {
            format: cli.format.or(cfg.format).unwrap_or_default(),
            format_given: cli.format.or(cfg.format).is_some(),
            output: cli.output.clone().or(cfg.output),
            seed: cli.seed.or(cfg.seed).unwrap_or(verify::DEFAULT_SEED),
            policy: merged.policy()?,
        })
    }
}

fn qbase(q: Option<f64>) -> Outcome<QBase> {
    match q {
        Some(q) => Ok(QBase::new(q)?),
        None => usage("--q is required for this kind"),
    }
}

fn need(v: Option<f64>, flag: &str) -> Outcome<f64> {
    v.map_or_else(|| usage(format!("--{flag} is required for this kind")), Ok)
}

impl DeformationArgs {
    pub fn kind(&self) -> Outcome<DeformationKind> {
        let d = self;
        Ok(match d.kind {
            KindName::ArikCoon => DeformationKind::ArikCoon { q: qbase(d.q)? },
            KindName::Bm => DeformationKind::BiedenharnMacfarlane { q: qbase(d.q)? },
            KindName::Chung => DeformationKind::ChungEtAl {
                q: qbase(d.q)?,
                alpha: need(d.alpha, "alpha")?,
                beta: d.beta.unwrap_or(0.0),
            },
            KindName::Bdy => DeformationKind::Bdy {
                q: qbase(d.q)?,
                alpha: need(d.alpha, "alpha")?,
                beta: d.beta.unwrap_or(0.0),
                gamma: need(d.gamma, "gamma")?,
            },
            KindName::NuModified => DeformationKind::NuModified { nu: need(d.nu, "nu")? },
            KindName::QNu => DeformationKind::QNu {
                q: qbase(d.q)?,
                nu: need(d.nu, "nu")?,
            },
            KindName::Unified => DeformationKind::Unified(UnifiedParams::new(
                need(d.q, "q")?,
                d.alpha.unwrap_or(0.0),
                d.beta.unwrap_or(0.0),
                d.gamma.unwrap_or(1.0),
                d.nu.unwrap_or(0.0),
            )?),
            KindName::Abc => DeformationKind::Abc {
                q: qbase(d.q)?,
                a: need(d.a, "a")?,
                b: need(d.b, "b")?,
                c: need(d.c, "c")?,
            },
            KindName::TwoParam => DeformationKind::TwoParam(TwoParamParams::new(
                need(d.p, "p")?,
                need(d.q, "q")?,
                need(d.alpha, "alpha")?,
                d.beta.unwrap_or(0.0),
                d.l.map_or_else(|| usage("--l is required for this kind"), Ok)?,
            )?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureRow {
    pub n: u32,
    pub f_closed: f64,
    pub f_recurrence: Option<f64>,
    pub abs_diff: Option<f64>,
}

pub fn structure_rows(kind: DeformationKind, n_max: u32) -> Vec<StructureRow> {
    let closed = StructureSeq::closed(kind).values(n_max);
    let rec = StructureSeq::recurrence(kind).ok().map(|s| s.values(n_max));
    closed
        .iter()
        .enumerate()
        .map(|(n, &f)| {
            let r = rec.as_ref().map(|r| r[n]);
            StructureRow {
                n: n as u32,
                f_closed: f,
                f_recurrence: r,
                abs_diff: r.map(|r| (r - f).abs()),
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyOutput {
    pub case: RepCase,
    pub window: Window,
    pub lambda_head: Vec<f64>,
    pub diagnostics: Diagnostics,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepOutput {
    pub kind: DeformationKind,
    pub dim: usize,
    pub report: ResidualReport,
    pub lambda_head: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HermiteValue {
    pub n: u32,
    pub q: f64,
    pub x: f64,
    pub explicit: f64,
    pub recurrence: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramRow {
    pub m: u32,
    pub n: u32,
    pub value: f64,
    pub target: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoherentOutput {
    pub z: Complex64,
    pub q: f64,
    pub terms: usize,
    pub coeffs: Vec<Complex64>,
    pub eigen_residual: f64,
    pub norm_sq_series: f64,
    pub norm_sq_product: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentRow {
    pub n: u32,
    pub target: f64,
    pub measured: f64,
    pub rel_err: f64,
    /// Resolution-of-unity diagonal `G_nn` for `n <= 10`.
    pub gram_diagonal: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KerrRow {
    pub n: u32,
    pub kerr: f64,
    pub deformed: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct KerrOutput {
    pub omega0: f64,
    pub kappa: f64,
    pub matcher: Matcher,
    pub perturbative: bool,
    pub levels: Vec<KerrRow>,
    pub scaling: Option<ScalingReport>,
}

/// What a subcommand produced.
enum Emit {
    Json(serde_json::Value),
    Table(serde_json::Value, Vec<Vec<(String, String)>>),
    Text(String, bool),
}

fn json<T: Serialize>(v: &T) -> Outcome<serde_json::Value> {
    serde_json::to_value(v).map_err(|e| Failure::Compute(Error::Domain(e.to_string())))
}

/// Rows of a table as ordered `(column, value)` pairs, from their JSON form.
fn table<T: Serialize>(rows: &[T]) -> Outcome<Emit> {
    let value = json(&rows)?;
    let flat = value
        .as_array()
        .map(|rows| {
            rows.iter()
                .map(|row| {
                    row.as_object()
                        .map(|o| o.iter().map(|(k, v)| (k.clone(), csv_cell(v))).collect())
                        .unwrap_or_default()
                })
                .collect()
        })
        .unwrap_or_default();
    Ok(Emit::Table(value, flat))
}

fn csv_cell(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Null => String::new(),
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn run_command(cmd: &Command, settings: &Settings) -> Outcome<Emit> {
    match cmd {
        Command::Structure(a) => table(&structure_rows(a.deformation.kind()?, a.n_max)),
        Command::Classify(a) => {
            let u = UnifiedParams::new(a.q, a.alpha, a.beta, a.gamma, a.nu)?;
            let c = classify(&RepParams::new(u, a.lambda0, a.kappa0, a.b)?, a.scan_depth)?;
            let head = (0..10).filter_map(|n| c.lambda.get(n)).collect();
            Ok(Emit::Json(json(&ClassifyOutput {
                case: c.case,
                window: c.window,
                lambda_head: head,
                diagnostics: c.diagnostics,
            })?))
        }
        Command::Rep(a) => {
            let kind = a.deformation.kind()?;
            let u = kind
                .to_unified()
                .ok_or_else(|| Failure::Compute(Error::Domain("the two-parameter family has no unified matrices".into())))?;
            let seq = StructureSeq::closed(kind);
            let quad = build_lowest_weight(&seq, 0.0, 1.0, a.dim)?;
            Ok(Emit::Json(json(&RepOutput {
                kind,
                dim: a.dim,
                report: full_report(&quad, &u)?,
                lambda_head: seq.values(9),
            })?))
        }
        Command::Hermite(a) => {
            let q = QBase::new(a.q)?;
            if a.gram {
                let g = orthogonality_check(q, a.n_max)?;
                let mut rows = Vec::new();
                for m in 0..g.nrows() {
                    for n in 0..g.ncols() {
                        rows.push(GramRow {
                            m: m as u32,
                            n: n as u32,
                            value: g[(m, n)],
                            target: if m == n { gram_target(q, n as u32) } else { 0.0 },
                        });
                    }
                }
                table(&rows)
            } else {
                table(&[HermiteValue {
                    n: a.n,
                    q: a.q,
                    x: a.x,
                    explicit: hermite_explicit(a.n, q, a.x),
                    recurrence: hermite_recurrence(a.n, q).eval(a.x),
                }])
            }
        }
        Command::Coherent(a) => {
            let q = QBase::new(a.q)?;
            let z = Complex64::new(a.z_re, a.z_im);
            let s = coherent_state(z, q, a.tol)?;
            let n2 = normalization_sq(z.norm_sqr(), q, &settings.policy)?;
            Ok(Emit::Json(json(&CoherentOutput {
                z,
                q: a.q,
                terms: s.len(),
                eigen_residual: s.eigen_residual()?,
                coeffs: s.coeffs,
                norm_sq_series: n2.series,
                norm_sq_product: n2.product,
            })?))
        }
        Command::Moments(a) => {
            let q = QBase::new(a.q)?;
            let sol = weight_measure(q, a.k_range)?;
            let g = completeness_check(q, a.n_max.min(10), a.k_range)?;
            let rows = (0..=a.n_max)
                .map(|n| {
                    let target = moment_target(n, q)?;
                    let measured = sol.moment(n);
                    Ok(MomentRow {
                        n,
                        target,
                        measured,
                        rel_err: (measured - target).abs() / target,
                        gram_diagonal: (n <= 10).then(|| g[(n as usize, n as usize)]),
                    })
                })
                .collect::<Outcome<Vec<_>>>()?;
            table(&rows)
        }
        Command::Kerr(a) => {
            let p = KerrParams::new(a.omega0, a.kappa)?;
            let kerr = kerr_spectrum(&p, a.n_max);
            let def = matched_spectrum(&p, a.matcher, a.n_max)?;
            let levels: Vec<KerrRow> = kerr
                .iter()
                .zip(&def)
                .enumerate()
                .map(|(n, (&k, &d))| KerrRow {
                    n: n as u32,
                    kerr: k,
                    deformed: d,
                    deviation: d - k,
                })
                .collect();
            if settings.format == Format::Csv {
                return table(&levels);
            }
            let scaling = if a.kappa > 0.0 { Some(deviation_scaling(&p, a.matcher, a.n_max)?) } else { None };
            Ok(Emit::Json(json(&KerrOutput {
                omega0: a.omega0,
                kappa: a.kappa,
                matcher: a.matcher,
                perturbative: p.in_perturbative_regime(),
                levels,
                scaling,
            })?))
        }
        Command::Verify => {
            let outcomes = verify::run_all(settings.seed);
            let all = outcomes.iter().all(|o| o.passed);
            match (settings.format_given, settings.format) {
                (true, Format::Json) => Ok(Emit::Text(
                    serde_json::to_string_pretty(&outcomes).map_err(|e| Failure::Compute(Error::Domain(e.to_string())))?,
                    all,
                )),
                _ => {
                    let mut text = outcomes.iter().map(verify::format_line).collect::<Vec<_>>().join("\n");
                    text.push_str(&format!("\n{} of {} checks passed", outcomes.iter().filter(|o| o.passed).count(), outcomes.len()));
                    Ok(Emit::Text(text, all))
                }
            }
        }
    }
}

fn render(emit: &Emit, format: Format) -> Outcome<(String, bool)> {
    match (emit, format) {
        (Emit::Text(t, ok), _) => Ok((t.clone(), *ok)),
        (Emit::Json(v), Format::Json) | (Emit::Table(v, _), Format::Json) => Ok((
            serde_json::to_string_pretty(v).map_err(|e| Failure::Compute(Error::Domain(e.to_string())))?,
            true,
        )),
        (Emit::Table(_, rows), Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if let Some(first) = rows.first() {
                w.write_record(first.iter().map(|(k, _)| k)).map_err(csv_err)?;
            }
            for row in rows {
                w.write_record(row.iter().map(|(_, v)| v)).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| csv_err(e.into_error().into()))?;
            Ok((String::from_utf8_lossy(&bytes).trim_end().to_string(), true))
        }
        (Emit::Json(_), Format::Csv) => usage("csv output is only available for tabular subcommands"),
    }
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::Compute(Error::Domain(e.to_string()))
}

fn exec(cli: &Cli) -> Outcome<bool> {
    let settings = Settings::resolve(cli)?;
    let emit = run_command(&cli.command, &settings)?;
    let (text, ok) = render(&emit, settings.format)?;
    match &settings.output {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Compute(Error::Domain(format!("{}: {e}", path.display()))))?,
        None => {
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "{text}");
        }
    }
    Ok(ok)
}

/// Parses `args` (program name first) and runs the subcommand; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match exec(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\n{}", Cli::command_usage());
            2
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

impl Cli {
    fn command_usage() -> String {
        use clap::CommandFactory;
        Cli::command().render_usage().to_string()
    }
}

pub fn main() -> i32 {
    run(std::env::args_os())
}
