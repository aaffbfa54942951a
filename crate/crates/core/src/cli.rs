//! Batch front end: `table`, `generators`, `verify` and `preset-list`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input parse error,
//! 3 dimension or shape error.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::GaussianRational;
use crate::complex::{
    assemble_sigma_matrix, classify_generator, euler_characteristic, full_table, rref, sigma_squared_vanishes,
    CellCohomology, CohomologySummary, GeneratorType, TableOptions,
};
use crate::dense::DenseMatrix;
use crate::error::Error;
use crate::exterior::{enumerate_cell, Monomial, MultiVector, WedgeIndex};
use crate::schouten::{schouten_bracket, sigma, sigma_generic};
use crate::toric::{build_pi, preset, HermitianForm, PRESET_NAMES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SHAPE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "toric-poisson", version, about = "Exact Poisson cohomology of quadratic toric Poisson structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Table of dim H^p_[d] for 0 <= d <= dmax, 0 <= p <= 2n.
    Table(JobArgs),
    /// Cohomology representatives for one cell or a sweep.
    Generators(JobArgs),
    /// Run the structural and theorem checks up to dmax.
    Verify(JobArgs),
    /// List the built-in coefficient matrices.
    PresetList,
}

#[derive(Args, Debug, Clone)]
pub struct JobArgs {
    /// Number of z/w coordinate pairs.
    #[arg(long = "n")]
    pub n: Option<usize>,
    /// Coefficient matrix, rows split by ';' and entries by ',' (e.g. "2,1;1,2").
    #[arg(long = "b", allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Built-in matrix (see preset-list).
    #[arg(long, conflicts_with = "b")]
    pub preset: Option<String>,
    #[arg(long, default_value_t = 8, allow_hyphen_values = true)]
    pub dmax: i64,
    #[arg(long = "d", allow_hyphen_values = true)]
    pub d: Option<i64>,
    #[arg(long = "p", allow_hyphen_values = true)]
    pub p: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    pub format: Format,
    /// Tag representatives with their generator type.
    #[arg(long)]
    pub classify: bool,
    /// Accept a non-Hermitian matrix.
    #[arg(long)]
    pub raw: bool,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JobCommand {
    Table,
    Generators,
    Verify,
}

/// A validated job.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: JobCommand,
    pub n: usize,
    pub b: HermitianForm,
    pub dmax: i64,
    pub d: Option<i64>,
    pub p: Option<i64>,
    pub format: Format,
    pub classify: bool,
    pub raw: bool,
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError { code: EXIT_PARSE, message: message.into() }
    }

    fn shape(message: impl Into<String>) -> Self {
        CliError { code: EXIT_SHAPE, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::UnknownPreset { .. } | Error::NotHermitian => EXIT_PARSE,
            Error::Dimension(_) | Error::Grading(_) => EXIT_SHAPE,
            _ => EXIT_VERIFY_FAILED,
        };
        CliError { code, message: e.to_string() }
    }
}

impl JobSpec {
    pub fn resolve(command: JobCommand, args: &JobArgs) -> Result<Self, CliError> {
        let b = match (&args.b, &args.preset) {
            (Some(text), None) => {
                let m = DenseMatrix::parse(text).map_err(|e| match e {
                    Error::Parse { .. } => CliError::parse(format!("--b: {e}")),
                    other => CliError::shape(format!("--b: {other}")),
                })?;
                let form = HermitianForm::raw(m);
                if !form.is_hermitian() && !args.raw {
                    return Err(CliError::parse("--b: matrix is not Hermitian (pass --raw to accept it)"));
                }
                form
            }
            (None, Some(name)) => preset(name)?,
            (None, None) => return Err(CliError::parse("one of --b or --preset is required")),
            (Some(_), Some(_)) => return Err(CliError::parse("--b and --preset are mutually exclusive")),
        };
        let n = b.n();
        if let Some(given) = args.n {
            if given != n {
                return Err(CliError::shape(format!("--n {given} does not match the {n}x{n} matrix")));
            }
        }
        if args.dmax < 0 {
            return Err(CliError::shape("--dmax must be >= 0"));
        }
        if let Some(d) = args.d {
            if d < 0 {
                return Err(CliError::shape("--d must be >= 0"));
            }
        }
        if let Some(p) = args.p {
            if p < 0 || p > 2 * n as i64 {
                return Err(CliError::shape(format!("--p must lie in 0..={}", 2 * n)));
            }
        }
        Ok(JobSpec {
            command,
            n,
            b,
            dmax: args.dmax,
            d: args.d,
            p: args.p,
            format: args.format,
            classify: args.classify,
            raw: args.raw,
            jobs: args.jobs,
        })
    }

    fn memory_warning(&self) -> Option<String> {
        (self.n >= 2 && self.dmax > 14).then(|| {
            format!(
                "warning: dmax = {} with n = {} builds cells of size C(d+{},{})*C({},p); this may need a lot of memory",
                self.dmax,
                self.n,
                2 * self.n - 1,
                2 * self.n - 1,
                2 * self.n
            )
        })
    }
}

/// Machine-readable report shared by `table` and `generators`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub n: usize,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
    pub dmax: i64,
    pub table: Vec<JsonRow>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generators: Option<Vec<JsonGenerator>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRow {
    pub d: i64,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonGenerator {
    pub d: i64,
    pub p: i64,
    pub terms: Vec<String>,
    #[serde(rename = "type")]
    pub kind: Option<GeneratorType>,
}

impl JsonReport {
    fn new(summary: &CohomologySummary, generators: Option<Vec<JsonGenerator>>) -> Self {
        JsonReport {
            n: summary.n,
            b: summary.b.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
            dmax: summary.dmax,
            table: summary
                .grid()
                .into_iter()
                .enumerate()
                .map(|(d, dims)| JsonRow { d: d as i64, dims })
                .collect(),
            generators,
        }
    }

    /// The coefficient matrix, re-parsed from its canonical strings.
    pub fn matrix(&self) -> Result<DenseMatrix, Error> {
        DenseMatrix::from_rows(
            self.b
                .iter()
                .map(|r| r.iter().map(|s| GaussianRational::parse(s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?,
        )
    }
}

const CORNER: &str = "dim H_[d]^p";

pub fn format_ascii_table(summary: &CohomologySummary) -> String {
    let grid = summary.grid();
    let ncols = 2 * summary.n + 1;
    let width = grid
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .chain(std::iter::once(ncols.to_string().len()))
        .max()
        .unwrap_or(1);
    let label_w = CORNER.len().max(summary.dmax.to_string().len());
    let mut out = String::new();
    let _ = write!(out, "{CORNER:>label_w$} |");
    for p in 0..ncols {
        let _ = write!(out, " {p:>width$}");
    }
    out.push('\n');
    let _ = writeln!(out, "{}-+{}", "-".repeat(label_w), "-".repeat(ncols * (width + 1)));
    for (d, row) in grid.iter().enumerate() {
        let _ = write!(out, "{d:>label_w$} |");
        for v in row {
            let _ = write!(out, " {v:>width$}");
        }
        out.push('\n');
    }
    out
}

pub fn format_csv_table(summary: &CohomologySummary) -> String {
    let mut out = String::from("d");
    for p in 0..=2 * summary.n {
        let _ = write!(out, ",h{p}");
    }
    out.push('\n');
    for (d, row) in summary.grid().iter().enumerate() {
        let _ = write!(out, "{d}");
        for v in row {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn run_table(spec: &JobSpec) -> Result<String, CliError> {
    let pi = build_pi(&spec.b);
    let opts = TableOptions { jobs: spec.jobs, ..Default::default() };
    let summary = full_table(&pi, spec.dmax, &opts)?;
    Ok(match spec.format {
        Format::Ascii => format_ascii_table(&summary),
        Format::Csv => format_csv_table(&summary),
        Format::Json => to_json(&JsonReport::new(&summary, None)),
    })
}

struct GeneratorCell {
    d: i64,
    p: i64,
    fields: Vec<MultiVector>,
    types: Vec<GeneratorType>,
}

fn compute_generators(spec: &JobSpec) -> Result<(Vec<GeneratorCell>, i64), CliError> {
    let pi = build_pi(&spec.b);
    let top = 2 * spec.n as i64;
    let dmax = spec.d.unwrap_or(spec.dmax);
    let ds: Vec<i64> = match spec.d {
        Some(d) => vec![d],
        None => (0..=spec.dmax).collect(),
    };
    let ps: Vec<i64> = match spec.p {
        Some(p) => vec![p],
        None => (0..=top).collect(),
    };
    let keys: Vec<(i64, i64)> = ds.iter().flat_map(|&d| ps.iter().map(move |&p| (d, p))).collect();
    let work = || -> Result<Vec<GeneratorCell>, Error> {
        keys.par_iter()
            .map(|&(d, p)| {
                let fields = CellCohomology::compute(spec.n, d, p, &pi)?.representative_fields();
                let types = fields.iter().map(classify_generator).collect();
                Ok(GeneratorCell { d, p, fields, types })
            })
            .collect()
    };
    let cells = match spec.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| CliError::shape(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    Ok((cells, dmax))
}

pub fn run_generators(spec: &JobSpec) -> Result<String, CliError> {
    let (cells, table_dmax) = compute_generators(spec)?;
    let single = spec.d.is_some() && spec.p.is_some();
    let mut out = String::new();
    match spec.format {
        Format::Ascii => {
            for cell in &cells {
                if cell.fields.is_empty() && !single {
                    continue;
                }
                let _ = writeln!(out, "H^{}_[{}]  dim {}", cell.p, cell.d, cell.fields.len());
                for (f, t) in cell.fields.iter().zip(&cell.types) {
                    if spec.classify {
                        let _ = writeln!(out, "  {f}  [{t}]");
                    } else {
                        let _ = writeln!(out, "  {f}");
                    }
                }
            }
        }
        Format::Csv => {
            out.push_str("d,p,type,representative\n");
            for cell in &cells {
                for (f, t) in cell.fields.iter().zip(&cell.types) {
                    let kind = if spec.classify { t.to_string() } else { String::new() };
                    let _ = writeln!(out, "{},{},{},\"{}\"", cell.d, cell.p, kind, f);
                }
            }
        }
        Format::Json => {
            let pi = build_pi(&spec.b);
            let summary = full_table(&pi, table_dmax, &TableOptions { jobs: spec.jobs, ..Default::default() })?;
            let gens = cells
                .iter()
                .flat_map(|cell| {
                    cell.fields.iter().zip(&cell.types).map(move |(f, t)| JsonGenerator {
                        d: cell.d,
                        p: cell.p,
                        terms: f.term_strings(),
                        kind: spec.classify.then_some(*t),
                    })
                })
                .collect();
            out = to_json(&JsonReport::new(&summary, Some(gens)));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

fn check(name: &str, ok: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: detail.into(),
    }
}

fn euler_fields(n: usize) -> Vec<MultiVector> {
    (0..2 * n).map(|k| MultiVector::basis(Monomial::variable(n, k), WedgeIndex::single(k))).collect()
}

/// All checks of the `verify` command, in report order.
pub fn verify_checks(b: &HermitianForm, dmax: i64, jobs: Option<usize>) -> Result<Vec<CheckResult>, Error> {
    let n = b.n();
    let top = 2 * n as i64;
    let pi = build_pi(b);
    let opts = TableOptions { jobs, ..Default::default() };
    let mut out = Vec::new();

    let jac = schouten_bracket(pi.bivector(), pi.bivector())?;
    out.push(check("jacobi", jac.is_zero(), "[pi_B, pi_B] = 0"));

    let cells: Vec<(i64, i64)> = (0..=dmax).flat_map(|d| (0..=top).map(move |p| (d, p))).collect();
    let squares: Vec<bool> = cells
        .par_iter()
        .map(|&(d, p)| sigma_squared_vanishes(n, d, p, &pi))
        .collect::<Result<_, _>>()?;
    let bad = squares.iter().filter(|ok| !**ok).count();
    out.push(check("sigma_squared", bad == 0, format!("{} matrix products, {bad} nonzero", squares.len())));

    let mut compared = 0usize;
    let mut mismatches = 0usize;
    for d in 0..=dmax {
        for p in 0..=1 {
            let cell = enumerate_cell(n, d, p);
            for i in 0..cell.dim() {
                let y = cell.basis_vector(i);
                compared += 1;
                if sigma(&y, &pi)? != sigma_generic(&y, &pi)? {
                    mismatches += 1;
                }
            }
        }
    }
    out.push(check(
        "closed_forms",
        mismatches == 0,
        format!("{compared} basis elements of wedge degree <= 1, {mismatches} mismatches"),
    ));

    let rn: Vec<bool> = cells
        .par_iter()
        .map(|&(d, p)| {
            let m = assemble_sigma_matrix(n, d, p, &pi)?;
            let r = rref(&m.matrix);
            Ok(r.rank() + r.nullspace().len() == m.matrix.ncols())
        })
        .collect::<Result<_, Error>>()?;
    let bad = rn.iter().filter(|ok| !**ok).count();
    out.push(check("rank_nullity", bad == 0, format!("{} matrices, {bad} violations", rn.len())));

    let table = full_table(&pi, dmax, &opts)?;
    let reps: Vec<(usize, bool)> = cells
        .par_iter()
        .map(|&(d, p)| {
            let coh = CellCohomology::compute(n, d, p, &pi)?;
            let fields = coh.representative_fields();
            let closed = fields.iter().map(|f| sigma(f, &pi).map(|s| s.is_zero())).collect::<Result<Vec<_>, _>>()?;
            Ok((fields.len(), closed.into_iter().all(|x| x) && fields.len() == table.dim(d, p)))
        })
        .collect::<Result<_, Error>>()?;
    let bad = reps.iter().filter(|(_, ok)| !ok).count();
    let total: usize = reps.iter().map(|(k, _)| k).sum();
    out.push(check(
        "representatives",
        bad == 0,
        format!("{total} representatives in {} cells are cocycles matching the table, {bad} bad cells", reps.len()),
    ));

    let mut shifts = 0;
    let mut euler_bad = Vec::new();
    for s in -top..=dmax - top {
        let (chain, homology) = euler_characteristic(n, s, &pi)?;
        shifts += 1;
        if chain != homology {
            euler_bad.push(s);
        }
    }
    out.push(check(
        "euler_characteristic",
        euler_bad.is_empty(),
        format!("{shifts} shifted subcomplexes, failures at shifts {euler_bad:?}"),
    ));

    let h0 = table.column(0);
    if b.is_invertible() {
        let ok = h0.iter().enumerate().all(|(d, &v)| v == usize::from(d == 0));
        out.push(check("h0_theorem", ok, format!("H^0 column {h0:?}")));
    } else {
        out.push(check("h0_theorem", false, format!("hypothesis fails: det B = 0; H^0 column {h0:?}")));
    }

    let h1 = table.column(1);
    if !b.is_invertible() {
        out.push(check("h1_theorem", false, format!("hypothesis fails: det B = 0; H^1 column {h1:?}")));
    } else if !b.is_symmetric() {
        out.push(CheckResult {
            name: "h1_theorem".into(),
            status: CheckStatus::Skip,
            detail: format!("B is not symmetric; H^1 column {h1:?} reported only"),
        });
    } else {
        let dims_ok = h1.iter().enumerate().all(|(d, &v)| v == if d == 1 { 2 * n } else { 0 });
        let span_ok = dmax < 1 || CellCohomology::compute(n, 1, 1, &pi)?.spans_same_classes(&euler_fields(n))?;
        out.push(check(
            "h1_theorem",
            dims_ok && span_ok,
            format!("H^1 column {h1:?}; Euler fields span H^1_[1]: {span_ok}"),
        ));
    }

    let mut scaled_ok = true;
    for c in [GaussianRational::from(2), GaussianRational::from_ints(-3, 1)] {
        let other = full_table(&build_pi(&b.scale(&c)), dmax, &opts)?;
        scaled_ok &= other.grid() == table.grid();
    }
    out.push(check("scalar_invariance", scaled_ok, "tables for B, 2B and (-3+i)B agree"));

    if n == 1 && b.is_invertible() {
        let expected = |d: i64, p: i64| usize::from(matches!((d, p), (0, 0) | (0, 2) | (2, 2))) + 2 * usize::from((d, p) == (1, 1));
        let ok = cells.iter().all(|&(d, p)| table.dim(d, p) == expected(d, p));
        out.push(check("n1_table", ok, "matches H = <1, z dz, w dw, dz^dw, zw dz^dw>"));
    }
    Ok(out)
}

pub fn run_verify(spec: &JobSpec) -> Result<(String, bool), CliError> {
    let checks = verify_checks(&spec.b, spec.dmax, spec.jobs)?;
    let failed = checks.iter().any(|c| c.status == CheckStatus::Fail);
    let text = match spec.format {
        Format::Json => to_json(&serde_json::json!({
            "n": spec.n,
            "B": spec.b.to_string(),
            "dmax": spec.dmax,
            "passed": !failed,
            "checks": checks,
        })),
        Format::Csv => {
            let mut s = String::from("check,status,detail\n");
            for c in &checks {
                let _ = writeln!(s, "{},{:?},\"{}\"", c.name, c.status, c.detail.replace('"', "'"));
            }
            s
        }
        Format::Ascii => {
            let mut s = format!("verify n={} B={} dmax={}\n", spec.n, spec.b, spec.dmax);
            for c in &checks {
                let tag = match c.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Skip => "SKIP",
                };
                let _ = writeln!(s, "{tag} {:<22} {}", c.name, c.detail);
            }
            let _ = writeln!(s, "{}", if failed { "RESULT: FAILED" } else { "RESULT: ok" });
            s
        }
    };
    Ok((text, !failed))
}

pub fn run_preset_list() -> String {
    let mut out = String::new();
    for name in PRESET_NAMES {
        let b = preset(name).expect("built-in preset");
        let _ = writeln!(out, "{name:<12} {b}");
    }
    out
}

/// Captured result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let (command, args) = match cli.command {
        Command::PresetList => return Outcome { code: EXIT_OK, stdout: run_preset_list(), stderr: String::new() },
        Command::Table(a) => (JobCommand::Table, a),
        Command::Generators(a) => (JobCommand::Generators, a),
        Command::Verify(a) => (JobCommand::Verify, a),
    };
    let mut stderr = String::new();
    let result = JobSpec::resolve(command, &args).and_then(|spec| {
        if let Some(w) = spec.memory_warning() {
            stderr.push_str(&w);
            stderr.push('\n');
        }
        match command {
            JobCommand::Table => run_table(&spec).map(|s| (s, EXIT_OK)),
            JobCommand::Generators => run_generators(&spec).map(|s| (s, EXIT_OK)),
            JobCommand::Verify => run_verify(&spec).map(|(s, ok)| (s, if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })),
        }
    });
    match result {
        Ok((stdout, code)) => Outcome { code, stdout, stderr },
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            Outcome { code: e.code, stdout: String::new(), stderr }
        }
    }
}
