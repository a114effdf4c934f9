//! Command-line front end: validate triples, evaluate bivectors and
//! derivatives, run seeded scans, compute actions and equation-of-motion
//! residuals.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use manin_sigma::adjoint::GroupPoint;
use manin_sigma::catalog::{self, CatalogEntry};
use manin_sigma::error::{Error, ParseError};
use manin_sigma::io;
use manin_sigma::lie::{assemble_double, ManinTriple, ALGEBRA_TOL};
use manin_sigma::matrix::Matrix;
use manin_sigma::poisson::{DerivativeConvention, PoissonBivector};
use manin_sigma::report::{exit_code, CheckResult, Discrepancy, RunReport};
use manin_sigma::scan::{self, ScanConfig};
use manin_sigma::sigma;

#[derive(Parser)]
#[command(
    name = "manin-sigma",
    about = "Poisson-Lie sigma models from Manin-triple structure constants",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or inspect the built-in triples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the algebraic validation suite on a triple.
    Validate {
        #[command(flatten)]
        source: TripleSource,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the Poisson bivector at a point.
    Bivector {
        #[command(flatten)]
        source: TripleSource,
        /// Coordinates X_1,..,X_n of the evaluation point.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        at: Vec<f64>,
        /// Also evaluate the stored closed reference form and print deltas.
        #[arg(long)]
        paper_form: bool,
        #[arg(long)]
        json: bool,
    },
    /// Seeded random-point scan: Jacobi, antisymmetry, linearization.
    Scan {
        #[command(flatten)]
        source: TripleSource,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0.4)]
        radius: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the worldsheet action on a field configuration.
    Action {
        #[command(flatten)]
        source: TripleSource,
        /// Field file (JSON).
        #[arg(long)]
        fields: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate equation-of-motion residuals on a field configuration.
    Eom {
        #[command(flatten)]
        source: TripleSource,
        /// Field file (JSON).
        #[arg(long)]
        fields: PathBuf,
        #[arg(long, value_enum, default_value_t = Convention::AtPoint)]
        convention: Convention,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// One line per entry.
    List,
    /// Dimension, brackets, and reference availability for one entry.
    Show {
        name: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
    },
}

/// Where the triple comes from: a catalog name or a triple file.
#[derive(Args)]
struct TripleSource {
    /// Catalog entry name (see `catalog list`).
    #[arg(long)]
    catalog: Option<String>,
    /// Parameter for typeA4.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Triple file (JSON), alternative to --catalog.
    file: Option<PathBuf>,
}

/// Failure outside the report flow, carrying the contract exit code.
enum Failure {
    Evaluation(String),
    Parse(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Evaluation(_) => exit_code::EVALUATION,
            Failure::Parse(_) => exit_code::PARSE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Evaluation(m) | Failure::Parse(m) => m,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownCatalogEntry { .. }
            | Error::InvalidParameter { .. }
            | Error::NoReferenceForm { .. }
            | Error::DimensionMismatch { .. }
            | Error::DimensionTooLarge { .. }
            | Error::OutOfRange { .. } => Failure::Parse(e.to_string()),
            other => Failure::Evaluation(other.to_string()),
        }
    }
}

fn resolve_source(source: &TripleSource) -> Result<(ManinTriple, Option<CatalogEntry>), Failure> {
    match (&source.catalog, &source.file) {
        (Some(name), None) => {
            let entry = catalog::get(name, source.beta)?;
            Ok((entry.triple.clone(), Some(entry)))
        }
        (None, Some(path)) => {
            if source.beta.is_some() {
                return Err(Failure::Parse(
                    "--beta applies to catalog entries only".into(),
                ));
            }
            Ok((io::read_triple_file(path)?, None))
        }
        _ => Err(Failure::Parse(
            "supply exactly one triple source: --catalog NAME or a FILE argument".into(),
        )),
    }
}

/// Comparison tolerance for reference-form deltas; overridable through
/// MANIN_SIGMA_TOL.
fn compare_tolerance() -> f64 {
    std::env::var("MANIN_SIGMA_TOL")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(1e-8)
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
        .collect()
}

fn print_matrix(label: &str, m: &Matrix) {
    println!("{label}:");
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|c| format!("{:+.9e}", m.get(r, c)))
            .collect();
        println!("  [ {} ]", row.join("  "));
    }
}

fn emit(report: &RunReport, json: bool) {
    if json {
        println!("{}", report.render_json());
    } else {
        print!("{}", report.render_text());
    }
}

fn source_inputs(source: &TripleSource) -> Vec<String> {
    let mut v = Vec::new();
    if let Some(c) = &source.catalog {
        v.push(format!("catalog:{c}"));
    }
    if let Some(b) = source.beta {
        v.push(format!("beta:{b}"));
    }
    if let Some(f) = &source.file {
        v.push(format!("file:{}", f.display()));
    }
    v
}

fn format_brackets(
    sc: &manin_sigma::lie::StructureConstants,
    sym: &str,
    upper: bool,
) -> Vec<String> {
    let base = |k: usize| {
        if upper {
            format!("{sym}{}", k + 1)
        } else {
            format!("{sym}_{}", k + 1)
        }
    };
    let mut lines = Vec::new();
    let n = sc.dim();
    for i in 0..n {
        for j in i + 1..n {
            let mut terms = Vec::new();
            for k in 0..n {
                let v = sc.get(i, j, k);
                if v != 0.0 {
                    if v == 1.0 {
                        terms.push(base(k));
                    } else if v == -1.0 {
                        terms.push(format!("-{}", base(k)));
                    } else {
                        terms.push(format!("{v} {}", base(k)));
                    }
                }
            }
            if !terms.is_empty() {
                lines.push(format!(
                    "[{}, {}] = {}",
                    base(i),
                    base(j),
                    terms.join(" + ").replace("+ -", "- ")
                ));
            }
        }
    }
    if lines.is_empty() {
        lines.push("(abelian)".to_string());
    }
    lines
}

fn cmd_catalog(action: &CatalogAction) -> Result<i32, Failure> {
    match action {
        CatalogAction::List => {
            println!(
                "{:<14} {:>3}  {:>9}  nonzero brackets (c / f)",
                "name", "dim", "reference"
            );
            for entry in catalog::all_default() {
                let c_cnt = entry.triple.c().nonzero_entries().len();
                let f_cnt = entry.triple.f().nonzero_entries().len();
                println!(
                    "{:<14} {:>3}  {:>9}  {c_cnt} / {f_cnt}",
                    entry.name,
                    entry.triple.dim(),
                    if entry.reference.is_some() { "yes" } else { "no" },
                );
            }
            Ok(exit_code::SUCCESS)
        }
        CatalogAction::Show { name, beta } => {
            let entry = catalog::get(name, *beta)?;
            println!("name:      {}", entry.name);
            println!(
                "dimension: {} (double {})",
                entry.triple.dim(),
                2 * entry.triple.dim()
            );
            if let Some(b) = entry.beta {
                println!("beta:      {b}");
            }
            println!("first subalgebra brackets:");
            for line in format_brackets(entry.triple.c(), "T", false) {
                println!("  {line}");
            }
            println!("dual subalgebra brackets:");
            for line in format_brackets(entry.triple.f(), "T~^", true) {
                println!("  {line}");
            }
            println!(
                "reference bivector: {}",
                if entry.reference.is_some() {
                    "available"
                } else {
                    "none"
                }
            );
            if let Some(comment) = entry.comment {
                println!("note: {comment}");
            }
            Ok(exit_code::SUCCESS)
        }
    }
}

fn cmd_validate(source: &TripleSource, json: bool) -> Result<i32, Failure> {
    let (triple, entry) = resolve_source(source)?;
    let mut report = RunReport::new(
        format!(
            "validate {}",
            entry.as_ref().map(|e| e.name).unwrap_or("FILE")
        ),
        &source_inputs(source),
    );

    let rc = triple.c().check_jacobi();
    report.push_check(
        CheckResult::new("jacobi (first subalgebra)", rc.max_residual, rc.tolerance)
            .with_detail(format!("worst at {:?}", rc.worst_indices_one_based())),
    );
    let rf = triple.f().check_jacobi();
    report.push_check(
        CheckResult::new("jacobi (dual subalgebra)", rf.max_residual, rf.tolerance)
            .with_detail(format!("worst at {:?}", rf.worst_indices_one_based())),
    );
    let double = assemble_double(&triple).map_err(Failure::from)?;
    report.push_check(CheckResult::new(
        "double antisymmetry",
        double.constants().antisymmetry_residual(),
        ALGEBRA_TOL,
    ));
    let rd = double.check_jacobi();
    report.push_check(
        CheckResult::new(
            "jacobi (double / bialgebra compatibility)",
            rd.max_residual,
            rd.tolerance,
        )
        .with_detail(format!("worst at {:?}", rd.worst_indices_one_based())),
    );
    let rp = double.check_pairing_invariance();
    report.push_check(
        CheckResult::new("pairing ad-invariance", rp.max_residual, rp.tolerance)
            .with_detail(format!("worst at {:?}", rp.worst_indices_one_based())),
    );

    emit(&report, json);
    Ok(report.exit_status)
}

fn cmd_bivector(
    source: &TripleSource,
    at: &[f64],
    paper_form: bool,
    json: bool,
) -> Result<i32, Failure> {
    let (triple, entry) = resolve_source(source)?;
    if at.len() != triple.dim() {
        return Err(Failure::Parse(format!(
            "--at needs {} coordinates, got {}",
            triple.dim(),
            at.len()
        )));
    }
    let pb = PoissonBivector::new(&triple).map_err(Failure::from)?;
    let point = GroupPoint::new(at.to_vec());
    let ev = pb.eval(&point).map_err(|e| match &e {
        Error::ChartBreakdown { det_a } => Failure::Evaluation(format!(
            "chart breakdown at the point: |det a| = {det_a:.3e}"
        )),
        _ => Failure::from(e),
    })?;

    let mut report = RunReport::new(
        format!(
            "bivector {} at {:?}",
            entry.as_ref().map(|e| e.name).unwrap_or("FILE"),
            at
        ),
        &source_inputs(source),
    );
    let mut payload = serde_json::json!({ "matrix": matrix_rows(&ev.matrix) });

    if !json {
        print_matrix("P(X)", &ev.matrix);
    }

    if paper_form {
        let name = entry.as_ref().map(|e| e.name).unwrap_or("FILE");
        let reference = entry
            .as_ref()
            .and_then(|e| e.reference.as_ref())
            .ok_or_else(|| {
                Failure::from(Error::NoReferenceForm {
                    name: name.to_string(),
                })
            })?;
        let rm = reference.eval(&point).map_err(Failure::from)?;
        let tol = compare_tolerance();
        let mut max_delta = 0.0f64;
        for i in 0..rm.rows() {
            for j in 0..rm.cols() {
                let delta = (rm.get(i, j) - ev.matrix.get(i, j)).abs();
                max_delta = max_delta.max(delta);
                if delta > tol {
                    report.push_discrepancy(Discrepancy {
                        entry: name.to_string(),
                        i: i + 1,
                        j: j + 1,
                        paper: rm.get(i, j),
                        computed: ev.matrix.get(i, j),
                        delta,
                    });
                }
            }
        }
        if !json {
            print_matrix("reference form", &rm);
            print_matrix("delta (reference - computed)", &rm.sub(&ev.matrix));
            println!("max |delta| = {max_delta:.3e} (tol {tol:.1e})");
        }
        payload["reference"] = serde_json::json!(matrix_rows(&rm));
        payload["max_delta"] = serde_json::json!(max_delta);
    }

    report.payload = Some(payload);
    emit(&report, json);
    Ok(report.exit_status)
}

fn cmd_scan(
    source: &TripleSource,
    samples: usize,
    radius: f64,
    seed: u64,
    json: bool,
) -> Result<i32, Failure> {
    if samples == 0 || !(radius > 0.0 && radius.is_finite()) {
        return Err(Failure::Parse(
            "scan needs --samples >= 1 and --radius > 0".into(),
        ));
    }
    let (triple, entry) = resolve_source(source)?;
    let pb = PoissonBivector::new(&triple).map_err(Failure::from)?;
    let cfg = ScanConfig {
        samples,
        radius,
        seed,
    };
    let summary = scan::run(&pb, &cfg).map_err(Failure::from)?;

    let mut report = RunReport::new(
        format!(
            "scan {} samples={samples} radius={radius} seed={seed}",
            entry.as_ref().map(|e| e.name).unwrap_or("FILE")
        ),
        &source_inputs(source),
    );
    report.push_check(CheckResult::new(
        "jacobi residual (max)",
        summary.max_jacobi,
        1e-6,
    ));
    report.push_check(CheckResult::new(
        "antisymmetry |P + P^T| (max)",
        summary.max_antisymmetry,
        1e-10,
    ));
    report.push_check(CheckResult::new(
        "origin |P(0)|",
        summary.origin_norm,
        1e-12,
    ));
    report.push_check(
        CheckResult::new(
            "linearization vs dual constants",
            summary.linearization_deviation,
            1e-6,
        )
        .with_detail(format!("fitted sigma = {:+}", summary.linearization_sigma)),
    );
    report.push_check(CheckResult::new(
        "samples failed after retries",
        summary.failed.len() as f64,
        0.0,
    ));
    report.payload = Some(serde_json::json!({
        "samples": summary.samples,
        "max_jacobi": summary.max_jacobi,
        "max_antisymmetry": summary.max_antisymmetry,
        "origin_norm": summary.origin_norm,
        "linearization_sigma": summary.linearization_sigma,
        "linearization_deviation": summary.linearization_deviation,
        "resampled": summary.resamples.len(),
    }));
    emit(&report, json);
    Ok(report.exit_status)
}

fn cmd_action(source: &TripleSource, fields_path: &Path, json: bool) -> Result<i32, Failure> {
    let (triple, entry) = resolve_source(source)?;
    let (grid, fields) = io::read_fields_file(fields_path)?;
    let pb = PoissonBivector::new(&triple).map_err(Failure::from)?;
    let value = sigma::action_s2(&pb, &grid, &fields).map_err(Failure::from)?;

    let mut report = RunReport::new(
        format!(
            "action {} fields={}",
            entry.as_ref().map(|e| e.name).unwrap_or("FILE"),
            fields_path.display()
        ),
        &source_inputs(source),
    );
    report.payload = Some(serde_json::json!({
        "grid": { "n1": grid.n1, "n2": grid.n2, "h1": grid.h1, "h2": grid.h2 },
        "action": value,
    }));
    if !json {
        println!("S2 = {value:+.12e}");
    }
    emit(&report, json);
    Ok(report.exit_status)
}

fn cmd_eom(
    source: &TripleSource,
    fields_path: &Path,
    convention: Convention,
    json: bool,
) -> Result<i32, Failure> {
    let (triple, entry) = resolve_source(source)?;
    let (grid, fields) = io::read_fields_file(fields_path)?;
    let pb = PoissonBivector::new(&triple).map_err(Failure::from)?;
    let residual =
        sigma::eom_residuals(&pb, &grid, &fields, convention.into()).map_err(Failure::from)?;

    let mut report = RunReport::new(
        format!(
            "eom {} fields={} convention={}",
            entry.as_ref().map(|e| e.name).unwrap_or("FILE"),
            fields_path.display(),
            match convention {
                Convention::AtPoint => "at-point",
                Convention::KSliceZero => "k-slice-zero",
            }
        ),
        &source_inputs(source),
    );
    report.payload = Some(serde_json::json!({
        "grid": { "n1": grid.n1, "n2": grid.n2, "h1": grid.h1, "h2": grid.h2 },
        "r1": { "max": residual.max_r1, "rms": residual.rms_r1 },
        "r2": { "max": residual.max_r2, "rms": residual.rms_r2 },
    }));
    if !json {
        println!(
            "dX + P A   : max {:.6e}  rms {:.6e}",
            residual.max_r1, residual.rms_r1
        );
        println!(
            "dA + P_k AA: max {:.6e}  rms {:.6e}",
            residual.max_r2, residual.rms_r2
        );
    }
    emit(&report, json);
    Ok(report.exit_status)
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Convention {
    /// Difference P at the point itself.
    AtPoint,
    /// Zero the k-th coordinate before differencing.
    KSliceZero,
}

impl From<Convention> for DerivativeConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::AtPoint => DerivativeConvention::AtPoint,
            Convention::KSliceZero => DerivativeConvention::KSliceZero,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => exit_code::PARSE,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };

    let result = match &cli.command {
        Command::Catalog { action } => cmd_catalog(action),
        Command::Validate { source, json } => cmd_validate(source, *json),
        Command::Bivector {
            source,
            at,
            paper_form,
            json,
        } => cmd_bivector(source, at, *paper_form, *json),
        Command::Scan {
            source,
            samples,
            radius,
            seed,
            json,
        } => cmd_scan(source, *samples, *radius, *seed, *json),
        Command::Action {
            source,
            fields,
            json,
        } => cmd_action(source, fields, *json),
        Command::Eom {
            source,
            fields,
            convention,
            json,
        } => cmd_eom(source, fields, *convention, *json),
    };

    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code() as u8)
        }
    }
}
