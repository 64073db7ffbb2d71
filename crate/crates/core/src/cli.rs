//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification claim fails, 2 on
//! usage or domain errors (message on stderr).

use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::closed_forms::{square_closed_form, trace_closed_form, PerturbationPattern};
use crate::dtt::{build_matrix, SquareMatrix, TransformKind};
use crate::error::{DttError, Result};
use crate::spectrum::analytic_spectrum;
use crate::trig_sums::{check_lattice, closed_form, IdentityId, SumParams};
use crate::verifier::{sweep, Tolerances, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "dtt-spectra",
    version,
    about = "Spectra of symmetric DCT/DST matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct KindAndSize {
    #[arg(long, value_parser = parse_kind)]
    pub kind: TransformKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the transform matrix.
    Matrix(KindAndSize),
    /// Print the closed form of A^2 and the trace formula.
    Square(KindAndSize),
    /// Print analytic eigenvalues with multiplicities.
    Spectrum(KindAndSize),
    /// Check every analytic claim against direct computation.
    Verify {
        /// Verify all eight kinds (the default when no --kind is given).
        #[arg(long, conflicts_with = "kind")]
        all: bool,
        #[arg(long, value_parser = parse_kind)]
        kind: Vec<TransformKind>,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 16)]
        n_max: usize,
        #[arg(long)]
        fail_fast: bool,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Compare identity closed forms with direct summation.
    Identities {
        #[arg(long)]
        max_m: usize,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
}

fn parse_kind(s: &str) -> std::result::Result<TransformKind, String> {
    s.parse()
        .map_err(|e: crate::dtt::UnknownKind| e.to_string())
}

/// Rendered output plus exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

/// Parse `args` (including the program name) and run; everything is
/// written to the given streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.stdout.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::Matrix(p) => cmd_matrix(p.kind, p.n, p.format),
        Command::Square(p) => cmd_square(p.kind, p.n, p.format),
        Command::Spectrum(p) => cmd_spectrum(p.kind, p.n, p.format),
        Command::Verify {
            all: _,
            kind,
            n_min,
            n_max,
            fail_fast,
            format,
        } => {
            let kinds = if kind.is_empty() {
                TransformKind::ALL.to_vec()
            } else {
                kind.clone()
            };
            cmd_verify(&kinds, *n_min, *n_max, *fail_fast, *format)
        }
        Command::Identities { max_m, format } => cmd_identities(*max_m, *format),
    }
}

fn ok(stdout: String) -> Result<Outcome> {
    Ok(Outcome {
        stdout,
        code: EXIT_OK,
    })
}

/// Single JSON document with the fixed top-level keys.
fn document(command: &str, params: Value, results: Value) -> String {
    let doc = json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "params": params,
        "results": results,
    });
    render_json(&doc)
}

/// Canonical rendering: sorted keys, shortest round-trip floats, trailing LF.
pub fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// `%g`-style formatting with `digits` significant digits.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{}", if x == 0.0 { 0.0 } else { x });
    }
    let exp = x.abs().log10().floor() as i32;
    let p = digits as i32;
    if exp < -5 || exp >= p {
        let s = format!("{:.*e}", digits - 1, x);
        let (mantissa, e) = s.split_once('e').expect("exponent present");
        format!("{}e{}", trim_zeros(mantissa), e)
    } else {
        let decimals = (p - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        s.push_str(&fields.join(","));
        s.push('\n');
    }
    s
}

/// Right-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let padded: Vec<String> = cells
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(&mut header.iter().copied());
    for row in rows {
        s.push_str(&line(&mut row.iter().map(String::as_str)));
    }
    s
}

fn matrix_rows(m: &SquareMatrix, fmt: impl Fn(f64) -> String) -> Vec<Vec<String>> {
    m.rows()
        .into_iter()
        .map(|r| r.into_iter().map(&fmt).collect())
        .collect()
}

fn column_names(n: usize) -> Vec<String> {
    (0..n).map(|l| format!("c{l}")).collect()
}

pub fn cmd_matrix(kind: TransformKind, n: usize, format: OutputFormat) -> Result<Outcome> {
    let m = build_matrix(kind, n)?;
    let cols = column_names(n);
    let header: Vec<&str> = cols.iter().map(String::as_str).collect();
    ok(match format {
        OutputFormat::Json => document(
            "matrix",
            json!({ "kind": kind, "n": n }),
            json!({ "entries": m.rows() }),
        ),
        OutputFormat::Csv => csv(&header, matrix_rows(&m, |x| format!("{x}"))),
        OutputFormat::Table => {
            let mut s = format!("{kind}, n = {n}\n");
            let rows = matrix_rows(&m, |x| format_sig(x, 6));
            let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
            for row in rows {
                let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                s.push_str(&cells.join("  "));
                s.push('\n');
            }
            s
        }
    })
}

fn pattern_name(p: PerturbationPattern) -> &'static str {
    match p {
        PerturbationPattern::None => "none",
        PerturbationPattern::AllOnesHalf => "all_ones_half",
        PerturbationPattern::ParityP => "parity",
        PerturbationPattern::AlternatingHalf => "alternating_half",
    }
}

pub fn cmd_square(kind: TransformKind, n: usize, format: OutputFormat) -> Result<Outcome> {
    let form = square_closed_form(kind, n)?;
    let trace = trace_closed_form(kind, n)?.value;
    let m = form.materialize();
    let cols = column_names(n);
    let header: Vec<&str> = cols.iter().map(String::as_str).collect();
    ok(match format {
        OutputFormat::Json => document(
            "square",
            json!({ "kind": kind, "n": n }),
            json!({
                "diagonal": form.diagonal,
                "perturbation": pattern_name(form.perturbation),
                "square": m.rows(),
                "trace": trace,
            }),
        ),
        OutputFormat::Csv => csv(&header, matrix_rows(&m, |x| format!("{x}"))),
        OutputFormat::Table => {
            let diag: Vec<String> = form
                .diagonal
                .as_slice()
                .iter()
                .map(|&x| format_sig(x, 6))
                .collect();
            let mut s = format!("{kind}, n = {n}\n");
            let _ = writeln!(
                s,
                "A^2 = diag({}) + {}",
                diag.join(", "),
                pattern_name(form.perturbation)
            );
            s.push_str(&table(&header, &matrix_rows(&m, |x| format_sig(x, 6))));
            let _ = writeln!(s, "trace(A) = {}", format_sig(trace, 6));
            s
        }
    })
}

pub fn cmd_spectrum(kind: TransformKind, n: usize, format: OutputFormat) -> Result<Outcome> {
    let analytic = analytic_spectrum(kind, n)?;
    let trace = trace_closed_form(kind, n)?.value;
    ok(match format {
        OutputFormat::Json => document(
            "spectrum",
            json!({ "kind": kind, "n": n }),
            json!({
                "pairs": analytic.pairs,
                "trace_from_spectrum": analytic.trace(),
                "trace_formula": trace,
                "total_multiplicity": analytic.total_multiplicity(),
            }),
        ),
        OutputFormat::Csv => csv(
            &["value", "multiplicity", "exact"],
            analytic.pairs.iter().map(|p| {
                vec![
                    format!("{}", p.value),
                    p.multiplicity.to_string(),
                    p.exact.to_string(),
                ]
            }),
        ),
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = analytic
                .pairs
                .iter()
                .map(|p| {
                    vec![
                        format_sig(p.value, 6),
                        p.multiplicity.to_string(),
                        p.exact.to_string(),
                    ]
                })
                .collect();
            let mut s = format!("{kind}, n = {n}\n");
            s.push_str(&table(&["value", "multiplicity", "exact"], &rows));
            let _ = writeln!(
                s,
                "trace: sum(value * multiplicity) = {}, formula = {}",
                format_sig(analytic.trace(), 6),
                format_sig(trace, 6)
            );
            s
        }
    })
}

fn report_json(report: &VerificationReport) -> Value {
    serde_json::to_value(report).expect("reports serialize")
}

pub fn cmd_verify(
    kinds: &[TransformKind],
    n_min: usize,
    n_max: usize,
    fail_fast: bool,
    format: OutputFormat,
) -> Result<Outcome> {
    let report = sweep(kinds, n_min, n_max, &Tolerances::default(), fail_fast)?;
    let code = if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    let stdout = match format {
        OutputFormat::Json => {
            let results = report_json(&report);
            document(
                "verify",
                json!({
                    "kinds": report.config.kinds,
                    "n_min": n_min,
                    "n_max": n_max,
                    "fail_fast": fail_fast,
                }),
                results,
            )
        }
        OutputFormat::Csv => csv(
            &[
                "id",
                "kind",
                "n",
                "measured",
                "tolerance",
                "passed",
                "detail",
            ],
            report.claims.iter().map(|c| {
                vec![
                    c.id.name().to_string(),
                    c.kind.map_or(String::new(), |k| k.name().to_string()),
                    c.n.to_string(),
                    format!("{}", c.measured),
                    format!("{}", c.tolerance),
                    c.passed.to_string(),
                    c.detail.clone(),
                ]
            }),
        ),
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = report
                .summary
                .by_id
                .iter()
                .map(|(id, t)| {
                    vec![
                        id.clone(),
                        t.total.to_string(),
                        t.passed.to_string(),
                        t.failed.to_string(),
                    ]
                })
                .collect();
            let mut s = table(&["claim", "total", "passed", "failed"], &rows);
            for c in report.failures() {
                let _ = writeln!(
                    s,
                    "FAIL {} {} n={}: measured {} > tolerance {} ({})",
                    c.id.name(),
                    c.kind.map_or("identity", |k| k.name()),
                    c.n,
                    format_sig(c.measured, 6),
                    format_sig(c.tolerance, 6),
                    c.detail
                );
            }
            for note in &report.notes {
                let _ = writeln!(s, "note: {note}");
            }
            let t = report.summary.total;
            let _ = writeln!(
                s,
                "{} claims, {} passed, {} failed",
                t.total, t.passed, t.failed
            );
            s
        }
    };
    Ok(Outcome { stdout, code })
}

/// One aggregated row of the identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityRow {
    pub identity: IdentityId,
    pub n_min: usize,
    pub n_max: usize,
    pub points: usize,
    pub max_abs_dev: f64,
    /// Largest `deviation / tolerance`; at most 1 when passing.
    pub max_scaled_dev: f64,
    pub worst_n: usize,
    pub worst_param: Option<i64>,
    /// Gauss sums only: closed form at `m = n_max`.
    pub value_at_max: Option<f64>,
    pub passed: bool,
}

/// Linear identities over `n = 2..=max_m`, Gauss sums over `m = 1..=max_m`.
pub fn identity_rows(max_m: usize) -> Result<Vec<IdentityRow>> {
    if max_m == 0 {
        return Err(DttError::ZeroParameter {
            identity: "identities --max-m",
        });
    }
    let mut rows = Vec::new();
    for id in IdentityId::ALL {
        let start = if id.is_gauss() { 1 } else { 2 };
        if start > max_m {
            continue;
        }
        let mut row = IdentityRow {
            identity: id,
            n_min: start,
            n_max: max_m,
            points: 0,
            max_abs_dev: 0.0,
            max_scaled_dev: 0.0,
            worst_n: start,
            worst_param: None,
            value_at_max: None,
            passed: true,
        };
        for n in start..=max_m {
            let c = check_lattice(id, n as u64)?;
            row.points += c.points;
            let scaled = c.max_abs_dev / c.tolerance;
            if scaled > row.max_scaled_dev {
                row.max_scaled_dev = scaled;
                row.worst_n = n;
                row.worst_param = c.worst_param;
            }
            row.max_abs_dev = row.max_abs_dev.max(c.max_abs_dev);
            row.passed &= c.passed();
        }
        if id.is_gauss() {
            row.value_at_max = Some(closed_form(id, SumParams::gauss(max_m as u64))?);
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn cmd_identities(max_m: usize, format: OutputFormat) -> Result<Outcome> {
    let rows = identity_rows(max_m)?;
    let code = if rows.iter().all(|r| r.passed) {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    let opt_f = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v}"));
    let opt_i = |x: Option<i64>| x.map_or(String::new(), |v| v.to_string());
    let stdout = match format {
        OutputFormat::Json => document(
            "identities",
            json!({ "max_m": max_m }),
            json!({
                "rows": rows.iter().map(|r| json!({
                    "identity": r.identity.name(),
                    "n_min": r.n_min,
                    "n_max": r.n_max,
                    "points": r.points,
                    "max_abs_dev": r.max_abs_dev,
                    "max_scaled_dev": r.max_scaled_dev,
                    "worst_n": r.worst_n,
                    "worst_param": r.worst_param,
                    "value_at_max": r.value_at_max,
                    "passed": r.passed,
                })).collect::<Vec<_>>(),
            }),
        ),
        OutputFormat::Csv => csv(
            &[
                "identity",
                "n_min",
                "n_max",
                "points",
                "max_abs_dev",
                "max_scaled_dev",
                "worst_n",
                "worst_param",
                "value_at_max",
                "passed",
            ],
            rows.iter().map(|r| {
                vec![
                    r.identity.name().to_string(),
                    r.n_min.to_string(),
                    r.n_max.to_string(),
                    r.points.to_string(),
                    format!("{}", r.max_abs_dev),
                    format!("{}", r.max_scaled_dev),
                    r.worst_n.to_string(),
                    opt_i(r.worst_param),
                    opt_f(r.value_at_max),
                    r.passed.to_string(),
                ]
            }),
        ),
        OutputFormat::Table => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.identity.name().to_string(),
                        format!("{}..{}", r.n_min, r.n_max),
                        r.points.to_string(),
                        format_sig(r.max_abs_dev, 6),
                        format_sig(r.max_scaled_dev, 6),
                        r.value_at_max.map_or(String::new(), |v| format_sig(v, 6)),
                        if r.passed { "pass" } else { "FAIL" }.to_string(),
                    ]
                })
                .collect();
            table(
                &[
                    "identity",
                    "range",
                    "points",
                    "max_dev",
                    "dev/tol",
                    "value@max",
                    "result",
                ],
                &body,
            )
        }
    };
    Ok(Outcome { stdout, code })
}
