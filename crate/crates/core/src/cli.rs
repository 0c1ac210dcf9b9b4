//! Command-line front end. Exit status: 0 when every check passes, 1 on a
//! verification failure (the report carries witnesses), 2 on bad input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::builders::ag2;
use crate::collineation::{
    classify_translation, enumerate_dilations_from, enumerate_translations_from, BASE_POINT,
};
use crate::endo::{
    check_trace_preserving_endo, endomorphism_violation, trace_violation, EndoFile, TrEndo,
};
use crate::field::{FieldError, FiniteField};
use crate::incidence::{AffinePlane, PlaneError, PointId};
use crate::report::{Check, VerificationReport};
use crate::skewfield::{
    check_multiplicative_commutativity, generate_tp_endos, invert_at, oracle_check,
    verify_skew_field, Provenance,
};
use crate::trgroup::{build_group, verify_group, verify_transitive};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "affine-endo",
    version,
    about = "Affine planes, translation groups and the skew-field of trace-preserving endomorphisms",
    after_help = "Default moduli for --q: x^2+x+1 (q=4), x^3+x+1 (q=8), x^2+1 (q=9), x^4+x+1 (q=16)."
)]
pub struct Cli {
    /// More output on stdout (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    #[serde(flatten)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Write the incidence JSON of AG(2, q).
    BuildPlane {
        #[arg(long)]
        q: usize,
        /// Modulus coefficients, constant term first, e.g. `1,1,0,1` for x^3+x+1.
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the three affine-plane axioms.
    CheckAxioms {
        #[command(flatten)]
        #[serde(flatten)]
        source: PlaneSource,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// List all translations or all dilations.
    Enumerate {
        #[command(flatten)]
        #[serde(flatten)]
        source: PlaneSource,
        #[arg(long, value_enum)]
        what: What,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the translation group and run the group-level checks.
    VerifyGroup {
        #[command(flatten)]
        #[serde(flatten)]
        source: PlaneSource,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Generate the trace-preserving endomorphisms and verify the skew-field.
    VerifySkewfield {
        #[command(flatten)]
        #[serde(flatten)]
        source: PlaneSource,
        #[arg(long, default_value_t = 0)]
        base_point: u32,
        /// Cross-check against the brute-force generator-image oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Check an endomorphism table `{"group_order": n, "image": [...]}`.
        #[arg(long)]
        endo: Option<PathBuf>,
        /// Write every generated element in the endomorphism JSON format.
        #[arg(long)]
        export_endos: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
#[group(required = true, multiple = true)]
pub struct PlaneSource {
    /// Incidence JSON file.
    #[arg(long, conflicts_with = "q")]
    pub plane: Option<PathBuf>,
    /// Build AG(2, q) in memory.
    #[arg(long)]
    pub q: Option<usize>,
    /// Modulus for --q, constant term first.
    #[arg(long, requires = "q")]
    pub poly: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum What {
    Translations,
    Dilations,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Plane { path: PathBuf, source: PlaneError },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{0}")]
    Usage(String),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn check_output_path(path: &Option<PathBuf>) -> Result<(), CliError> {
    if let Some(p) = path {
        let parent = p.parent().filter(|d| !d.as_os_str().is_empty());
        if let Some(dir) = parent {
            if !dir.is_dir() {
                return Err(CliError::Usage(format!(
                    "output directory {} does not exist",
                    dir.display()
                )));
            }
        }
    }
    Ok(())
}

fn parse_poly(s: &str) -> Result<Vec<u32>, CliError> {
    s.split(',')
        .map(|c| {
            c.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("bad polynomial coefficient {c:?}")))
        })
        .collect()
}

fn field_for(q: usize, poly: Option<&str>) -> Result<FiniteField, CliError> {
    let coeffs = poly.map(parse_poly).transpose()?;
    Ok(FiniteField::of_order(q, coeffs.as_deref())?)
}

/// Loads and axiom-checks the requested plane. The report holds the axiom
/// checks for file input and is empty for a built AG(2, q).
fn load_source(source: &PlaneSource) -> Result<(AffinePlane, VerificationReport), CliError> {
    match (&source.plane, source.q) {
        (Some(path), _) => {
            let text = read(path)?;
            let mut plane = AffinePlane::from_json_str(&text)
                .map_err(|e| CliError::Plane { path: path.clone(), source: e })?;
            let report = plane.check_axioms();
            Ok((plane, report))
        }
        (None, Some(q)) => {
            let field = field_for(q, source.poly.as_deref())?;
            Ok((ag2(&field), VerificationReport::new()))
        }
        (None, None) => Err(CliError::Usage("one of --plane or --q is required".into())),
    }
}

fn plane_summary(plane: &AffinePlane) -> Value {
    json!({
        "num_points": plane.num_points(),
        "num_lines": plane.num_lines(),
        "num_directions": plane.num_directions(),
    })
}

fn header(cli: &Cli) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert(
        "tool".into(),
        json!({ "name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION") }),
    );
    m.insert("config".into(), serde_json::to_value(cli).expect("config serializes"));
    m
}

/// Outcome of one command: the JSON document and whether all checks passed.
pub struct RunOutput {
    pub document: Value,
    pub report: VerificationReport,
}

fn finish(
    cli: &Cli,
    mut doc: serde_json::Map<String, Value>,
    report: &VerificationReport,
) -> RunOutput {
    doc.insert("checks".into(), serde_json::to_value(&report.checks).expect("checks serialize"));
    doc.insert("summary".into(), json!({ "passed": report.passed(), "failed": report.failed() }));
    let mut full = header(cli);
    full.extend(doc);
    RunOutput { document: Value::Object(full), report: report.clone() }
}

fn print_checks(
    out: &mut dyn Write,
    report: &VerificationReport,
    verbose: u8,
) -> std::io::Result<()> {
    for c in &report.checks {
        match &c.witness {
            None => {
                if verbose > 0 {
                    writeln!(out, "PASS {}", c.name)?;
                }
            }
            Some(w) => writeln!(out, "FAIL {}: {}", c.name, w)?,
        }
    }
    writeln!(out, "{} passed, {} failed", report.passed(), report.failed())
}

/// Runs one parsed command line, writing a summary to `out`. Returns the
/// process exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> i32 {
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let io = |e: std::io::Error| CliError::Io { path: "<stdout>".into(), source: e };
    let (result, report_path) = match &cli.command {
        Command::BuildPlane { q, poly, out: path } => {
            check_output_path(&Some(path.clone()))?;
            let field = field_for(*q, poly.as_deref())?;
            let plane = ag2(&field);
            write(path, &plane.to_json_string())?;
            writeln!(
                out,
                "AG(2,{q}): {} points, {} lines -> {}",
                plane.num_points(),
                plane.num_lines(),
                path.display()
            )
            .map_err(io)?;
            return Ok(EXIT_OK);
        }
        Command::CheckAxioms { source, report } => {
            check_output_path(report)?;
            let (plane, mut checks) = load_source(source)?;
            if source.plane.is_none() {
                let mut p = plane.clone();
                checks = p.check_axioms();
            }
            let mut doc = serde_json::Map::new();
            doc.insert("plane".into(), plane_summary(&plane));
            (finish(cli, doc, &checks), report.clone())
        }
        Command::Enumerate { source, what, out: path } => {
            check_output_path(path)?;
            let (plane, axioms) = load_source(source)?;
            if !axioms.all_passed() {
                print_checks(out, &axioms, cli.verbose).map_err(io)?;
                return Ok(EXIT_VERIFICATION_FAILED);
            }
            let doc = enumerate_doc(cli, &plane, *what);
            let text = serde_json::to_string_pretty(&doc).expect("json");
            match path {
                Some(p) => {
                    write(p, &text)?;
                    writeln!(out, "{} {:?} -> {}", doc["count"], what, p.display()).map_err(io)?;
                }
                None => writeln!(out, "{text}").map_err(io)?,
            }
            return Ok(EXIT_OK);
        }
        Command::VerifyGroup { source, report } => {
            check_output_path(report)?;
            let (plane, mut checks) = load_source(source)?;
            let mut doc = serde_json::Map::new();
            doc.insert("plane".into(), plane_summary(&plane));
            if checks.all_passed() {
                let translations = enumerate_translations_from(&plane, BASE_POINT);
                match build_group(&plane, translations) {
                    Err(e) => checks.push(Check::fail("cayley_closed", e.witness())),
                    Ok(group) => {
                        let dilations = enumerate_dilations_from(&plane, BASE_POINT);
                        doc.insert(
                            "group".into(),
                            json!({
                                "order": group.order(),
                                "exponent": group.exponent(),
                                "transitive": group.is_transitive(),
                                "num_dilations": dilations.len(),
                            }),
                        );
                        checks.extend(verify_group(&plane, &group, &dilations));
                    }
                }
            }
            (finish(cli, doc, &checks), report.clone())
        }
        Command::VerifySkewfield { source, base_point, oracle, report, endo, export_endos } => {
            check_output_path(report)?;
            check_output_path(export_endos)?;
            let imported = endo
                .as_ref()
                .map(|p| -> Result<EndoFile, CliError> {
                    serde_json::from_str(&read(p)?)
                        .map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
                })
                .transpose()?;
            let (plane, checks) = load_source(source)?;
            let base = PointId(*base_point);
            if base.idx() >= plane.num_points() {
                return Err(CliError::Usage(format!(
                    "base point {base} is outside the plane ({} points)",
                    plane.num_points()
                )));
            }
            let (result, exported) = skewfield_doc(cli, &plane, checks, base, *oracle, imported);
            if let (Some(path), Some(list)) = (export_endos, exported) {
                write(path, &serde_json::to_string_pretty(&list).expect("json"))?;
            }
            (result, report.clone())
        }
    };

    if let Some(path) = &report_path {
        write(path, &serde_json::to_string_pretty(&result.document).expect("json"))?;
    }
    print_checks(out, &result.report, cli.verbose).map_err(io)?;
    if let Some(path) = &report_path {
        writeln!(out, "report written to {}", path.display()).map_err(io)?;
    }
    Ok(if result.report.all_passed() { EXIT_OK } else { EXIT_VERIFICATION_FAILED })
}

fn enumerate_doc(cli: &Cli, plane: &AffinePlane, what: What) -> Value {
    let items: Vec<Value> = match what {
        What::Translations => enumerate_translations_from(plane, BASE_POINT)
            .iter()
            .map(|t| {
                json!({
                    "image": t.map().image(),
                    "kind": if t.is_identity() { "identity" } else { "translation" },
                    "direction": t.direction(),
                })
            })
            .collect(),
        What::Dilations => enumerate_dilations_from(plane, BASE_POINT)
            .iter()
            .map(|d| {
                let t = classify_translation(plane, d);
                let kind = match (&t, d.fixed_points().len()) {
                    (Some(t), _) if t.is_identity() => "identity",
                    (Some(_), _) => "translation",
                    (None, 1) => "homothety",
                    (None, _) => "dilation",
                };
                json!({
                    "image": d.map().image(),
                    "kind": kind,
                    "fixed_points": d.fixed_points(),
                    "direction": t.and_then(|t| t.direction()),
                })
            })
            .collect(),
    };
    let mut doc = header(cli);
    doc.insert("plane".into(), plane_summary(plane));
    doc.insert("what".into(), json!(what));
    doc.insert("count".into(), json!(items.len()));
    doc.insert("items".into(), Value::Array(items));
    Value::Object(doc)
}

fn skewfield_doc(
    cli: &Cli,
    plane: &AffinePlane,
    mut checks: VerificationReport,
    base: PointId,
    oracle: bool,
    imported: Option<EndoFile>,
) -> (RunOutput, Option<Vec<EndoFile>>) {
    let mut doc = serde_json::Map::new();
    doc.insert("plane".into(), plane_summary(plane));
    if !checks.all_passed() {
        return (finish(cli, doc, &checks), None);
    }
    let group = match build_group(plane, enumerate_translations_from(plane, base)) {
        Ok(g) => g,
        Err(e) => {
            checks.push(Check::fail("cayley_closed", e.witness()));
            return (finish(cli, doc, &checks), None);
        }
    };
    checks.push(Check::pass("cayley_closed"));
    checks.extend(verify_transitive(plane, &group));
    doc.insert("group".into(), json!({ "order": group.order(), "exponent": group.exponent() }));

    let set = match generate_tp_endos(plane, &group, base) {
        Ok(s) => s,
        Err(e) => {
            checks.push(Check::fail("tp_endo_generation", json!({ "error": e.to_string() })));
            return (finish(cli, doc, &checks), None);
        }
    };
    checks.push(Check::pass("tp_endo_generation"));
    checks.extend(verify_skew_field(plane, &group, &set));
    if oracle {
        checks.push(oracle_check(&group, &set));
    }

    let elements: Vec<Value> = set
        .elements()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let provenance = match set.provenance(i) {
                Provenance::Zero => json!("zero"),
                Provenance::Dilation(d) => json!({ "dilation": d.map().image() }),
            };
            json!({ "index": i, "image": e.image(), "provenance": provenance })
        })
        .collect();
    doc.insert("base_point".into(), json!(base));
    doc.insert("num_elements".into(), json!(set.len()));
    doc.insert("elements".into(), Value::Array(elements));
    let (commutative, witness) = check_multiplicative_commutativity(&set);
    doc.insert(
        "diagnostics".into(),
        json!({ "multiplicative_commutative": commutative, "witness": witness.map(|(a, b)| [a, b]) }),
    );
    if let Some((add, mul)) = set.tables(&group) {
        doc.insert("tables".into(), json!({ "add": add, "mul": mul }));
    }

    if let Some(file) = imported {
        let mut info = serde_json::Map::new();
        match file.into_endo(&group) {
            Err(e) => {
                checks.push(Check::fail("imported_endo_valid", json!({ "error": e.to_string() })))
            }
            Ok(alpha) => {
                checks.push(Check::pass("imported_endo_valid"));
                checks.push(Check::from_witness(
                    "imported_endo_is_endomorphism",
                    endomorphism_violation(&group, &alpha).map(|(a, b)| json!({ "pair": [a, b] })),
                ));
                checks.push(Check::from_witness(
                    "imported_endo_trace_preserving",
                    trace_violation(&group, &alpha).map(|s| json!({ "translation": s })),
                ));
                let member = set.index_of(&alpha);
                checks.push(Check::from_witness(
                    "imported_endo_in_set",
                    member.is_none().then(|| json!({ "image": alpha.image() })),
                ));
                info.insert("index".into(), json!(member));
                if check_trace_preserving_endo(&group, &alpha).is_ok() && !alpha.is_zero() {
                    if let Ok(inv) = invert_at(plane, &group, &alpha, base) {
                        info.insert("inverse".into(), serde_json::to_value(inv.to_file()).unwrap());
                    }
                }
            }
        }
        doc.insert("imported_endo".into(), Value::Object(info));
    }

    let exported = set.elements().iter().map(TrEndo::to_file).collect();
    (finish(cli, doc, &checks), Some(exported))
}
