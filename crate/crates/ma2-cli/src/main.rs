//! Command line front end for the `ma2` crate.
//!
//! Five subcommands cover the library surface: `acf` maps parameters to
//! autocovariances, `identify` recovers the invertible parameterization of
//! one or many triples, `enumerate` lists every process sharing a triple,
//! `classify` places a parameter point in the region case table, and
//! `simulate` generates a seeded sample path and reports its sample
//! autocovariances, optionally re-identifying the parameters from them.
//!
//! `--format` selects the report style: `human` rounds to six significant
//! digits, `json` emits one object per input row at full precision, and
//! `csv` emits a fixed header plus full-precision rows. Exit codes are 0 on
//! success, 2 on invalid parameters or malformed input, and 3 when every
//! requested row failed.

use std::fmt::Display;
use std::fs;
use std::io::{self, Read as _, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ma2::{
    classify_region, identify_invertible, sample_acf, simplified_rule, simulate_path, AcfTriple,
    BoundaryTag, Invertibility, Ma2Params, SimConfig, Version,
};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "ma2",
    version,
    about = "MA(2) autocovariances, identification, version enumeration, \
             region classification, and simulation"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the autocovariances, invertibility status, and region of a process.
    Acf {
        #[arg(allow_negative_numbers = true)]
        theta1: f64,
        #[arg(allow_negative_numbers = true)]
        theta2: f64,
        #[arg(allow_negative_numbers = true)]
        sigma2: f64,
    },
    /// Recover the invertible parameterization of autocovariance triples.
    Identify {
        #[command(flatten)]
        input: TripleInput,
    },
    /// List every MA(2) process sharing each autocovariance triple.
    Enumerate {
        #[command(flatten)]
        input: TripleInput,
    },
    /// Place a parameter point in the region case table.
    Classify {
        #[arg(allow_negative_numbers = true)]
        theta1: f64,
        #[arg(allow_negative_numbers = true)]
        theta2: f64,
    },
    /// Simulate a seeded sample path and print its sample autocovariances.
    Simulate {
        #[arg(allow_negative_numbers = true)]
        theta1: f64,
        #[arg(allow_negative_numbers = true)]
        theta2: f64,
        #[arg(allow_negative_numbers = true)]
        sigma2: f64,
        /// Number of observations.
        n: usize,
        /// PRNG seed; equal seeds reproduce the path exactly.
        seed: u64,
        /// Also identify the invertible parameterization from the sample
        /// autocovariances.
        #[arg(long)]
        then_identify: bool,
    },
}

/// Either one triple on the command line or a batch file of them.
#[derive(Args)]
struct TripleInput {
    /// The triple gamma0 gamma1 gamma2.
    #[arg(
        value_name = "GAMMA",
        num_args = 3,
        allow_negative_numbers = true,
        required_unless_present = "input",
        conflicts_with = "input"
    )]
    triple: Vec<f64>,

    /// Read gamma0,gamma1,gamma2 rows from FILE instead; `-` means stdin.
    /// Blank lines and lines starting with `#` are skipped, and a leading
    /// header row is tolerated.
    #[arg(long, value_name = "FILE")]
    input: Option<String>,
}

/// Failures during a run: a diagnostic worth exit code 2, or an output
/// write error. A broken pipe (the consumer stopped reading, as under
/// `ma2 ... | head`) ends the run quietly with exit code 0.
enum RunError {
    Msg(String),
    Io(io::Error),
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Io(e)
    }
}

impl From<csv::Error> for RunError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(ioe) => RunError::Io(ioe),
            other => RunError::Msg(format!("csv output: {other:?}")),
        }
    }
}

/// Shorthand for mapping a domain error into the exit-code-2 path.
fn msg(e: impl Display) -> RunError {
    RunError::Msg(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(RunError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(RunError::Io(e)) => {
            eprintln!("error: writing output: {e}");
            2
        }
        Err(RunError::Msg(m)) => {
            eprintln!("error: {m}");
            2
        }
    };
    ExitCode::from(code)
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<u8, RunError> {
    match &cli.command {
        Command::Acf {
            theta1,
            theta2,
            sigma2,
        } => cmd_acf(out, cli.format, *theta1, *theta2, *sigma2),
        Command::Identify { input } => cmd_identify(out, cli.format, input),
        Command::Enumerate { input } => cmd_enumerate(out, cli.format, input),
        Command::Classify { theta1, theta2 } => cmd_classify(out, cli.format, *theta1, *theta2),
        Command::Simulate {
            theta1,
            theta2,
            sigma2,
            n,
            seed,
            then_identify,
        } => cmd_simulate(
            out,
            cli.format,
            *theta1,
            *theta2,
            *sigma2,
            *n,
            *seed,
            *then_identify,
        ),
    }
}

/// Six significant digits, then the shortest decimal that displays them.
fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(5 - magnitude);
    format!("{}", (x * factor).round() / factor)
}

/// CSV cell for an optional value; absent values become empty cells.
fn cell(x: Option<f64>) -> String {
    x.map(|v| format!("{v}")).unwrap_or_default()
}

/// Human-mode text for an optional value; the x1/x2 pair is absent exactly
/// when those candidates are complex.
fn human_opt(x: Option<f64>) -> String {
    x.map(sig6).unwrap_or_else(|| "complex".to_string())
}

fn invertibility_fields(inv: &Invertibility) -> (&'static str, Option<String>, Option<f64>) {
    match inv {
        Invertibility::Invertible => ("invertible", None, None),
        Invertibility::NonInvertible => ("non-invertible", None, None),
        Invertibility::Boundary(tag) => {
            let (text, lambda) = match tag {
                BoundaryTag::RootAtPlusOne => ("root at +1".to_string(), None),
                BoundaryTag::RootAtMinusOne => ("root at -1".to_string(), None),
                BoundaryTag::ComplexUnitRoot { lambda } => {
                    ("complex pair on the unit circle".to_string(), Some(*lambda))
                }
            };
            ("boundary", Some(text), lambda)
        }
    }
}

fn csv_out(out: &mut impl Write, header: &[&str], rows: &[Vec<String>]) -> Result<(), RunError> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(header)?;
    for row in rows {
        wtr.write_record(row)?;
    }
    wtr.flush()?;
    Ok(())
}

fn json_line<T: Serialize>(out: &mut impl Write, value: &T) -> Result<(), RunError> {
    let line = serde_json::to_string(value).map_err(msg)?;
    writeln!(out, "{line}")?;
    Ok(())
}

// ---------------------------------------------------------------------------
// acf

#[derive(Serialize)]
struct AcfReport {
    theta1: f64,
    theta2: f64,
    sigma2: f64,
    gamma0: f64,
    gamma1: f64,
    gamma2: f64,
    invertibility: String,
    boundary: Option<String>,
    lambda: Option<f64>,
    case: String,
    correct_sigma: Option<String>,
}

fn cmd_acf(
    out: &mut impl Write,
    format: Format,
    theta1: f64,
    theta2: f64,
    sigma2: f64,
) -> Result<u8, RunError> {
    let params = Ma2Params::new(theta1, theta2, sigma2).map_err(msg)?;
    let acf = params.acf();
    let inv = params.invertibility();
    let region = classify_region(theta1, theta2).map_err(msg)?;
    let (inv_text, boundary, lambda) = invertibility_fields(&inv);

    let report = AcfReport {
        theta1,
        theta2,
        sigma2,
        gamma0: acf.gamma0(),
        gamma1: acf.gamma1(),
        gamma2: acf.gamma2(),
        invertibility: inv_text.to_string(),
        boundary,
        lambda,
        case: region.case_id.to_string(),
        correct_sigma: region.correct_sigma.map(|c| c.to_string()),
    };

    match format {
        Format::Human => {
            writeln!(
                out,
                "theta1 = {}, theta2 = {}, sigma2 = {}",
                sig6(theta1),
                sig6(theta2),
                sig6(sigma2)
            )?;
            writeln!(
                out,
                "gamma0 = {}, gamma1 = {}, gamma2 = {}",
                sig6(report.gamma0),
                sig6(report.gamma1),
                sig6(report.gamma2)
            )?;
            match (&report.boundary, report.lambda) {
                (Some(b), Some(l)) => {
                    writeln!(out, "invertibility: boundary ({b}, lambda = {})", sig6(l))?;
                    writeln!(
                        out,
                        "warning: a characteristic root sits on the unit circle; \
                         no invertible version exists"
                    )?;
                }
                (Some(b), None) => {
                    writeln!(out, "invertibility: boundary ({b})")?;
                    writeln!(
                        out,
                        "warning: a characteristic root sits on the unit circle; \
                         no invertible version exists"
                    )?;
                }
                _ => writeln!(out, "invertibility: {}", report.invertibility)?,
            }
            match &report.correct_sigma {
                Some(c) => writeln!(
                    out,
                    "region: case {} (correct variance candidate {c})",
                    report.case
                )?,
                None => writeln!(out, "region: case {}", report.case)?,
            }
        }
        Format::Json => json_line(out, &report)?,
        Format::Csv => csv_out(
            out,
            &[
                "theta1",
                "theta2",
                "sigma2",
                "gamma0",
                "gamma1",
                "gamma2",
                "invertibility",
                "boundary",
                "lambda",
                "case",
                "correct_sigma",
            ],
            &[vec![
                format!("{theta1}"),
                format!("{theta2}"),
                format!("{sigma2}"),
                format!("{}", report.gamma0),
                format!("{}", report.gamma1),
                format!("{}", report.gamma2),
                report.invertibility.clone(),
                report.boundary.clone().unwrap_or_default(),
                cell(report.lambda),
                report.case.clone(),
                report.correct_sigma.clone().unwrap_or_default(),
            ]],
        )?,
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// identify

#[derive(Serialize)]
struct CandidateFields {
    x1: Option<f64>,
    x2: Option<f64>,
    x3: f64,
    x4: f64,
    g: f64,
    h_minus: Option<f64>,
    h_plus: f64,
}

#[derive(Serialize)]
struct IdentifyRow {
    row: usize,
    gamma0: f64,
    gamma1: f64,
    gamma2: f64,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    candidates: Option<CandidateFields>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn identify_one(row: usize, g0: f64, g1: f64, g2: f64) -> IdentifyRow {
    let mut rec = IdentifyRow {
        row,
        gamma0: g0,
        gamma1: g1,
        gamma2: g2,
        ok: false,
        theta1: None,
        theta2: None,
        sigma2: None,
        candidates: None,
        residual: None,
        error: None,
    };
    match AcfTriple::new(g0, g1, g2).and_then(|acf| identify_invertible(&acf)) {
        Ok(res) => {
            rec.ok = true;
            rec.theta1 = Some(res.invertible.theta1());
            rec.theta2 = Some(res.invertible.theta2());
            rec.sigma2 = Some(res.invertible.sigma2());
            rec.candidates = Some(CandidateFields {
                x1: res.candidates.x1,
                x2: res.candidates.x2,
                x3: res.candidates.x3,
                x4: res.candidates.x4,
                g: res.candidates.g,
                h_minus: res.candidates.h_minus,
                h_plus: res.candidates.h_plus,
            });
            rec.residual = Some(res.residual);
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    rec
}

fn cmd_identify(out: &mut impl Write, format: Format, input: &TripleInput) -> Result<u8, RunError> {
    let rows = gather_rows(input)?;
    let records: Vec<IdentifyRow> = rows
        .iter()
        .enumerate()
        .map(|(i, &(g0, g1, g2))| identify_one(i + 1, g0, g1, g2))
        .collect();

    match format {
        Format::Human => {
            for rec in &records {
                writeln!(
                    out,
                    "row {}: gamma = ({}, {}, {})",
                    rec.row,
                    sig6(rec.gamma0),
                    sig6(rec.gamma1),
                    sig6(rec.gamma2)
                )?;
                if let Some(err) = &rec.error {
                    writeln!(out, "  error: {err}")?;
                    continue;
                }
                writeln!(
                    out,
                    "  invertible: theta1 = {}, theta2 = {}, sigma2 = {}",
                    sig6(rec.theta1.unwrap()),
                    sig6(rec.theta2.unwrap()),
                    sig6(rec.sigma2.unwrap())
                )?;
                let c = rec.candidates.as_ref().unwrap();
                writeln!(
                    out,
                    "  candidates: x1 = {}, x2 = {}, x3 = {}, x4 = {}",
                    human_opt(c.x1),
                    human_opt(c.x2),
                    sig6(c.x3),
                    sig6(c.x4)
                )?;
                writeln!(
                    out,
                    "  intermediates: g = {}, h_minus = {}, h_plus = {}",
                    sig6(c.g),
                    human_opt(c.h_minus),
                    sig6(c.h_plus)
                )?;
                writeln!(out, "  residual = {}", sig6(rec.residual.unwrap()))?;
            }
        }
        Format::Json => {
            for rec in &records {
                json_line(out, rec)?;
            }
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|rec| {
                    let c = rec.candidates.as_ref();
                    vec![
                        format!("{}", rec.row),
                        format!("{}", rec.gamma0),
                        format!("{}", rec.gamma1),
                        format!("{}", rec.gamma2),
                        if rec.ok { "ok" } else { "error" }.to_string(),
                        cell(rec.theta1),
                        cell(rec.theta2),
                        cell(rec.sigma2),
                        cell(c.and_then(|c| c.x1)),
                        cell(c.and_then(|c| c.x2)),
                        cell(c.map(|c| c.x3)),
                        cell(c.map(|c| c.x4)),
                        cell(c.map(|c| c.g)),
                        cell(c.and_then(|c| c.h_minus)),
                        cell(c.map(|c| c.h_plus)),
                        cell(rec.residual),
                        rec.error.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            csv_out(
                out,
                &[
                    "row", "gamma0", "gamma1", "gamma2", "status", "theta1", "theta2", "sigma2",
                    "x1", "x2", "x3", "x4", "g", "h_minus", "h_plus", "residual", "error",
                ],
                &rows,
            )?;
        }
    }

    Ok(if records.iter().any(|r| r.ok) { 0 } else { 3 })
}

// ---------------------------------------------------------------------------
// enumerate

#[derive(Serialize)]
struct VersionFields {
    flip: String,
    theta1: f64,
    theta2: f64,
    sigma2: f64,
    invertible: bool,
}

impl VersionFields {
    fn from_version(v: &Version) -> Self {
        VersionFields {
            flip: v.flip_pattern.to_string(),
            theta1: v.params.theta1(),
            theta2: v.params.theta2(),
            sigma2: v.params.sigma2(),
            invertible: v.invertible,
        }
    }
}

#[derive(Serialize)]
struct EnumerateRow {
    row: usize,
    gamma0: f64,
    gamma1: f64,
    gamma2: f64,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    invertible_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    versions: Option<Vec<VersionFields>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn enumerate_one(row: usize, g0: f64, g1: f64, g2: f64) -> EnumerateRow {
    let mut rec = EnumerateRow {
        row,
        gamma0: g0,
        gamma1: g1,
        gamma2: g2,
        ok: false,
        count: None,
        invertible_index: None,
        versions: None,
        error: None,
    };
    match AcfTriple::new(g0, g1, g2).and_then(|acf| ma2::versions_from_acf(&acf)) {
        Ok(set) => {
            rec.ok = true;
            rec.count = Some(set.versions.len());
            rec.invertible_index = set.invertible_index;
            rec.versions = Some(
                set.versions
                    .iter()
                    .map(VersionFields::from_version)
                    .collect(),
            );
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    rec
}

fn cmd_enumerate(
    out: &mut impl Write,
    format: Format,
    input: &TripleInput,
) -> Result<u8, RunError> {
    let rows = gather_rows(input)?;
    let records: Vec<EnumerateRow> = rows
        .iter()
        .enumerate()
        .map(|(i, &(g0, g1, g2))| enumerate_one(i + 1, g0, g1, g2))
        .collect();

    match format {
        Format::Human => {
            for rec in &records {
                if let Some(err) = &rec.error {
                    writeln!(
                        out,
                        "row {}: gamma = ({}, {}, {})",
                        rec.row,
                        sig6(rec.gamma0),
                        sig6(rec.gamma1),
                        sig6(rec.gamma2)
                    )?;
                    writeln!(out, "  error: {err}")?;
                    continue;
                }
                writeln!(
                    out,
                    "row {}: gamma = ({}, {}, {}), {} versions",
                    rec.row,
                    sig6(rec.gamma0),
                    sig6(rec.gamma1),
                    sig6(rec.gamma2),
                    rec.count.unwrap()
                )?;
                for v in rec.versions.as_ref().unwrap() {
                    let marker = if v.invertible { "  [invertible]" } else { "" };
                    writeln!(
                        out,
                        "  {:<9}: theta1 = {}, theta2 = {}, sigma2 = {}{marker}",
                        v.flip,
                        sig6(v.theta1),
                        sig6(v.theta2),
                        sig6(v.sigma2)
                    )?;
                }
            }
        }
        Format::Json => {
            for rec in &records {
                json_line(out, rec)?;
            }
        }
        Format::Csv => {
            let mut lines = Vec::new();
            for rec in &records {
                let base = [
                    format!("{}", rec.row),
                    format!("{}", rec.gamma0),
                    format!("{}", rec.gamma1),
                    format!("{}", rec.gamma2),
                ];
                match &rec.versions {
                    Some(versions) => {
                        for (i, v) in versions.iter().enumerate() {
                            let mut line = base.to_vec();
                            line.extend([
                                "ok".to_string(),
                                format!("{i}"),
                                v.flip.clone(),
                                format!("{}", v.theta1),
                                format!("{}", v.theta2),
                                format!("{}", v.sigma2),
                                format!("{}", v.invertible),
                                String::new(),
                            ]);
                            lines.push(line);
                        }
                    }
                    None => {
                        let mut line = base.to_vec();
                        line.extend([
                            "error".to_string(),
                            String::new(),
                            String::new(),
                            String::new(),
                            String::new(),
                            String::new(),
                            String::new(),
                            rec.error.clone().unwrap_or_default(),
                        ]);
                        lines.push(line);
                    }
                }
            }
            csv_out(
                out,
                &[
                    "row",
                    "gamma0",
                    "gamma1",
                    "gamma2",
                    "status",
                    "version",
                    "flip",
                    "theta1",
                    "theta2",
                    "sigma2",
                    "invertible",
                    "error",
                ],
                &lines,
            )?;
        }
    }

    Ok(if records.iter().any(|r| r.ok) { 0 } else { 3 })
}

// ---------------------------------------------------------------------------
// classify

#[derive(Serialize)]
struct ClassifyReport {
    theta1: f64,
    theta2: f64,
    case: String,
    a: String,
    b: String,
    c: String,
    d: String,
    correct_sigma: Option<String>,
    simplified: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    simplified_note: Option<String>,
}

fn cmd_classify(
    out: &mut impl Write,
    format: Format,
    theta1: f64,
    theta2: f64,
) -> Result<u8, RunError> {
    let region = classify_region(theta1, theta2).map_err(msg)?;
    let (simplified, simplified_note) = match simplified_rule(theta1, theta2) {
        Ok(choice) => (Some(choice.to_string()), None),
        Err(e) => (None, Some(e.to_string())),
    };

    let report = ClassifyReport {
        theta1,
        theta2,
        case: region.case_id.to_string(),
        a: region.a_holds.to_string(),
        b: region.b_holds.to_string(),
        c: region.c_holds.to_string(),
        d: region.d_holds.to_string(),
        correct_sigma: region.correct_sigma.map(|c| c.to_string()),
        simplified,
        simplified_note,
    };

    match format {
        Format::Human => {
            writeln!(out, "theta1 = {}, theta2 = {}", sig6(theta1), sig6(theta2))?;
            writeln!(out, "case: {}", report.case)?;
            writeln!(
                out,
                "predicates: A {}, B {}, C {}, D {}",
                report.a, report.b, report.c, report.d
            )?;
            match &report.correct_sigma {
                Some(c) => writeln!(out, "correct variance candidate: {c}")?,
                None => writeln!(out, "correct variance candidate: none")?,
            }
            match (&report.simplified, &report.simplified_note) {
                (Some(s), _) => writeln!(out, "simplified rule: {s}")?,
                (None, Some(note)) => writeln!(out, "simplified rule: unavailable ({note})")?,
                (None, None) => {}
            }
        }
        Format::Json => json_line(out, &report)?,
        Format::Csv => csv_out(
            out,
            &[
                "theta1",
                "theta2",
                "case",
                "a",
                "b",
                "c",
                "d",
                "correct_sigma",
                "simplified",
            ],
            &[vec![
                format!("{theta1}"),
                format!("{theta2}"),
                report.case.clone(),
                report.a.clone(),
                report.b.clone(),
                report.c.clone(),
                report.d.clone(),
                report.correct_sigma.clone().unwrap_or_default(),
                report.simplified.clone().unwrap_or_default(),
            ]],
        )?,
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// simulate

#[derive(Serialize)]
struct FitFields {
    theta1: f64,
    theta2: f64,
    sigma2: f64,
    invertibility: String,
}

#[derive(Serialize)]
struct SimulateReport {
    theta1: f64,
    theta2: f64,
    sigma2: f64,
    n: usize,
    seed: u64,
    gamma0_hat: f64,
    gamma1_hat: f64,
    gamma2_hat: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    fit: Option<FitFields>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fit_error: Option<String>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    out: &mut impl Write,
    format: Format,
    theta1: f64,
    theta2: f64,
    sigma2: f64,
    n: usize,
    seed: u64,
    then_identify: bool,
) -> Result<u8, RunError> {
    let params = Ma2Params::new(theta1, theta2, sigma2).map_err(msg)?;
    let cfg = SimConfig::new(params, n, seed).map_err(msg)?;
    let path = simulate_path(&cfg);
    let est = sample_acf(&path).map_err(msg)?;

    let mut report = SimulateReport {
        theta1,
        theta2,
        sigma2,
        n,
        seed,
        gamma0_hat: est.gamma0_hat(),
        gamma1_hat: est.gamma1_hat(),
        gamma2_hat: est.gamma2_hat(),
        fit: None,
        fit_error: None,
    };
    if then_identify {
        match est.to_acf().and_then(|acf| identify_invertible(&acf)) {
            Ok(res) => {
                let (inv_text, _, _) = invertibility_fields(&res.invertible.invertibility());
                report.fit = Some(FitFields {
                    theta1: res.invertible.theta1(),
                    theta2: res.invertible.theta2(),
                    sigma2: res.invertible.sigma2(),
                    invertibility: inv_text.to_string(),
                });
            }
            Err(e) => report.fit_error = Some(e.to_string()),
        }
    }

    match format {
        Format::Human => {
            writeln!(
                out,
                "theta1 = {}, theta2 = {}, sigma2 = {}, n = {}, seed = {}",
                sig6(theta1),
                sig6(theta2),
                sig6(sigma2),
                n,
                seed
            )?;
            writeln!(
                out,
                "sample acf: gamma0_hat = {}, gamma1_hat = {}, gamma2_hat = {}",
                sig6(report.gamma0_hat),
                sig6(report.gamma1_hat),
                sig6(report.gamma2_hat)
            )?;
            if let Some(fit) = &report.fit {
                writeln!(
                    out,
                    "identified: theta1 = {}, theta2 = {}, sigma2 = {} ({})",
                    sig6(fit.theta1),
                    sig6(fit.theta2),
                    sig6(fit.sigma2),
                    fit.invertibility
                )?;
            }
            if let Some(err) = &report.fit_error {
                writeln!(out, "identification failed: {err}")?;
            }
        }
        Format::Json => json_line(out, &report)?,
        Format::Csv => {
            let fit = report.fit.as_ref();
            csv_out(
                out,
                &[
                    "theta1",
                    "theta2",
                    "sigma2",
                    "n",
                    "seed",
                    "gamma0_hat",
                    "gamma1_hat",
                    "gamma2_hat",
                    "fit_theta1",
                    "fit_theta2",
                    "fit_sigma2",
                    "fit_invertibility",
                    "fit_error",
                ],
                &[vec![
                    format!("{theta1}"),
                    format!("{theta2}"),
                    format!("{sigma2}"),
                    format!("{n}"),
                    format!("{seed}"),
                    format!("{}", report.gamma0_hat),
                    format!("{}", report.gamma1_hat),
                    format!("{}", report.gamma2_hat),
                    cell(fit.map(|f| f.theta1)),
                    cell(fit.map(|f| f.theta2)),
                    cell(fit.map(|f| f.sigma2)),
                    fit.map(|f| f.invertibility.clone()).unwrap_or_default(),
                    report.fit_error.clone().unwrap_or_default(),
                ]],
            )?;
        }
    }

    Ok(if report.fit_error.is_some() { 3 } else { 0 })
}

// ---------------------------------------------------------------------------
// batch input

fn gather_rows(input: &TripleInput) -> Result<Vec<(f64, f64, f64)>, RunError> {
    let Some(path) = &input.input else {
        return Ok(vec![(input.triple[0], input.triple[1], input.triple[2])]);
    };
    let text = if path == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| RunError::Msg(format!("reading stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| RunError::Msg(format!("reading {path}: {e}")))?
    };
    let rows = parse_rows(&text)?;
    if rows.is_empty() {
        return Err(RunError::Msg(format!("no data rows in {path}")));
    }
    Ok(rows)
}

/// Parses `gamma0,gamma1,gamma2` lines. Blank lines and `#` comments are
/// skipped; if the first remaining line has a non-numeric field it is taken
/// to be a header and skipped too. Any later malformed line is an error.
fn parse_rows(text: &str) -> Result<Vec<(f64, f64, f64)>, RunError> {
    let mut rows = Vec::new();
    let mut seen_data = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let numeric: Option<Vec<f64>> = fields.iter().map(|f| f.parse().ok()).collect();
        match numeric {
            Some(values) if values.len() == 3 => {
                rows.push((values[0], values[1], values[2]));
                seen_data = true;
            }
            Some(values) => {
                return Err(RunError::Msg(format!(
                    "line {}: expected 3 comma-separated values, found {}",
                    idx + 1,
                    values.len()
                )));
            }
            None if !seen_data && rows.is_empty() => {
                // Header row.
                seen_data = true;
            }
            None => {
                return Err(RunError::Msg(format!(
                    "line {}: non-numeric field in {line:?}",
                    idx + 1
                )));
            }
        }
    }
    Ok(rows)
}
