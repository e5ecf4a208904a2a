//! Command-line interface.
//!
//! Every run writes both a CSV and a JSON artifact into `--out` (current
//! directory by default) under fixed names; `--format` chooses what goes
//! to stdout: `csv` prints the artifact paths, `json` prints the JSON
//! summary itself.  Outputs are deterministic: rows are sorted, maps are
//! ordered, and reruns of the same job produce byte-identical artifacts.
//!
//! Exit codes: 0 on success, 2 on domain errors (with a machine-readable
//! `{"error": {...}}` document on stdout), 3 when an exact computation
//! exceeds its `--budget`.  `VALCONE_THREADS` caps worker parallelism.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::One;
use serde_json::json;

use crate::cone::{cone_consistency, ConeError, DegenerationTrace};
use crate::formats::{
    norm_value_string, parse_norm, parse_words, rat_f64, rat_string, write_csv, write_json,
    FlagsFile, FormatError, RepFile,
};
use crate::pinchtwist::{pinch_twist_demo, PinchTwistReport};
use valcone_core::char_variety::{
    minimize_real, trace_coordinates, CharVarError, MinimizeOutcome, DEFAULT_SIZE_CAP,
};
use valcone_core::cross_ratio::{chi_k_log, fixed_flags, period, CrossRatioError, Flag};
use valcone_core::degeneration::{length_function, theta, DegenError, LengthFunction};
use valcone_core::matrix_algebra::{Budget, GroupWord, MatrixError, Representation};
use valcone_core::puiseux_field::{FieldElem, PuiseuxError, Rat, Valuation};
use valcone_core::valued_spectra::{SpectraError, WeylNorm};

/// Success.
pub const EXIT_OK: i32 = 0;
/// Domain error, reported as JSON on stdout.
pub const EXIT_DOMAIN: i32 = 2;
/// An exact computation exceeded its budget.
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser)]
#[command(
    name = "valcone",
    about = "Exact arithmetic for degenerations of SL(n) representations",
    version
)]
struct Cli {
    /// Directory artifacts are written into.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// What stdout carries: artifact paths (csv) or the JSON summary.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Term budget for exact arithmetic; unlimited when absent.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Print the artifact paths.
    Csv,
    /// Print the JSON summary document.
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Exact boundary length vectors of words.
    Length(WordArgs),
    /// Length vectors normalized by the generator log size.
    Theta(WordArgs),
    /// Real specializations rescaled to the boundary, with deviations.
    Degenerate(DegenerateArgs),
    /// Traces of short conjugacy classes.
    Tracecoords(TracecoordsArgs),
    /// Conjugation flow of a real representation towards a minimal vector.
    Minvec(MinvecArgs),
    /// Cross-ratio period of a proximal element on its fixed flags.
    Crossratio(CrossratioArgs),
    /// Pinch and twist families with a common boundary length function.
    DemoPinchTwist,
}

#[derive(Args)]
struct WordArgs {
    /// Representation file (JSON).
    #[arg(long)]
    rep: PathBuf,
    /// Comma-separated words, e.g. "a,a b,b^-1 b^-1".
    #[arg(long)]
    words: String,
    /// Norms to scalarize with: euclid, sup, l1, roots, weight:k, lp:p.
    /// Repeatable and comma-splittable.
    #[arg(long)]
    norm: Vec<String>,
}

#[derive(Args)]
struct DegenerateArgs {
    /// Representation file (JSON).
    #[arg(long)]
    rep: PathBuf,
    /// Comma-separated words.
    #[arg(long)]
    words: String,
    /// Comma-separated evaluation parameters, > 1 and increasing,
    /// e.g. "1e2,1e4,1e6".
    #[arg(long)]
    specialize: String,
}

#[derive(Args)]
struct TracecoordsArgs {
    /// Representation file (JSON).
    #[arg(long)]
    rep: PathBuf,
    /// Largest matrix size accepted (the word list grows like 2ⁿ).
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    cap: usize,
}

#[derive(Args)]
struct MinvecArgs {
    /// Representation file (JSON, field "real").
    #[arg(long)]
    rep: PathBuf,
    /// Initial descent step.
    #[arg(long, default_value_t = 0.1)]
    step: f64,
    /// Residual tolerance declaring convergence.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Iteration cap.
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,
}

#[derive(Args)]
struct CrossratioArgs {
    /// Representation file (JSON).
    #[arg(long)]
    rep: PathBuf,
    /// The word whose period is measured.
    #[arg(long)]
    gamma: String,
    /// Flag file naming attracting, repelling, and x flags.  Optional
    /// for 2×2, where the fixed flags are solved exactly.
    #[arg(long)]
    flags: Option<PathBuf>,
}

/// A domain failure carrying its machine-readable classification.
struct CliError {
    kind: String,
    message: String,
    code: i32,
    detail: Option<serde_json::Value>,
}

impl CliError {
    fn new(kind: &str, message: String) -> Self {
        CliError {
            kind: kind.to_owned(),
            message,
            code: EXIT_DOMAIN,
            detail: None,
        }
    }

    fn budget(message: String) -> Self {
        CliError {
            kind: "BudgetExceeded".to_owned(),
            message,
            code: EXIT_BUDGET,
            detail: None,
        }
    }

    fn document(&self) -> serde_json::Value {
        let mut error = json!({
            "kind": self.kind,
            "message": self.message,
        });
        if let Some(detail) = &self.detail {
            error["detail"] = detail.clone();
        }
        json!({ "error": error })
    }
}

impl From<MatrixError> for CliError {
    fn from(e: MatrixError) -> Self {
        let kind = match &e {
            MatrixError::BudgetExceeded { .. } => return CliError::budget(e.to_string()),
            MatrixError::UnknownGenerator(_) => "UnknownGenerator",
            MatrixError::DimensionMismatch(_) => "DimensionMismatch",
            MatrixError::NotUnimodular(_) => "NotUnimodular",
            MatrixError::WordParse(_) => "WordParse",
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<PuiseuxError> for CliError {
    fn from(e: PuiseuxError) -> Self {
        let kind = match &e {
            PuiseuxError::DivisionByZero => "DivisionByZero",
            PuiseuxError::NotBigElement => "NotBigElement",
            PuiseuxError::NonPositive => "NonPositive",
            PuiseuxError::NotExactSquare => "NotExactSquare",
            PuiseuxError::Negative => "Negative",
            PuiseuxError::Parse(_) => "Parse",
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<SpectraError> for CliError {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::Matrix(inner) => inner.into(),
            SpectraError::Field(inner) => inner.into(),
            SpectraError::InvalidWeylVector(_) => {
                CliError::new("InvalidWeylVector", e.to_string())
            }
            SpectraError::InvalidNorm(_) => CliError::new("InvalidNorm", e.to_string()),
            SpectraError::SingularMatrix => CliError::new("SingularMatrix", e.to_string()),
        }
    }
}

impl From<DegenError> for CliError {
    fn from(e: DegenError) -> Self {
        match e {
            DegenError::Matrix(inner) => inner.into(),
            DegenError::Spectra(inner) => inner.into(),
            DegenError::NotBoundaryPoint => CliError::new("NotBoundaryPoint", e.to_string()),
            DegenError::ZeroLengthFunction => {
                CliError::new("ZeroLengthFunction", e.to_string())
            }
        }
    }
}

impl From<CharVarError> for CliError {
    fn from(e: CharVarError) -> Self {
        match e {
            CharVarError::Matrix(inner) => inner.into(),
            CharVarError::Spectra(inner) => inner.into(),
            CharVarError::BudgetExceeded { .. } => CliError::budget(e.to_string()),
            CharVarError::NotMinimal => CliError::new("NotMinimal", e.to_string()),
            CharVarError::NoConvergence(outcome) => {
                let message = "descent flow hit its iteration cap".to_owned();
                let mut err = CliError::new("NoConvergence", message);
                err.detail = Some(minvec_document(&outcome));
                err
            }
            CharVarError::UnsupportedSize(_) => {
                CliError::new("UnsupportedSize", e.to_string())
            }
            CharVarError::CrossCheckFailed(_) => {
                CliError::new("CrossCheckFailed", e.to_string())
            }
        }
    }
}

impl From<CrossRatioError> for CliError {
    fn from(e: CrossRatioError) -> Self {
        match e {
            CrossRatioError::Matrix(inner) => inner.into(),
            CrossRatioError::Field(inner) => inner.into(),
            CrossRatioError::Spectra(inner) => inner.into(),
            CrossRatioError::InvalidFlag(_) => CliError::new("InvalidFlag", e.to_string()),
            CrossRatioError::NotTransverse => CliError::new("NotTransverse", e.to_string()),
            CrossRatioError::NotPositive => CliError::new("NotPositive", e.to_string()),
            CrossRatioError::NotProximal => CliError::new("NotProximal", e.to_string()),
            CrossRatioError::FixedFlagMismatch => {
                CliError::new("FixedFlagMismatch", e.to_string())
            }
            CrossRatioError::NotExactlySolvable => {
                CliError::new("NotExactlySolvable", e.to_string())
            }
        }
    }
}

impl From<ConeError> for CliError {
    fn from(e: ConeError) -> Self {
        match e {
            ConeError::Matrix(inner) => inner.into(),
            ConeError::Spectra(inner) => inner.into(),
            ConeError::NumericBreakdown(m) => CliError::new("NumericBreakdown", m),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        let kind = match &e {
            FormatError::Io(_) => "Io",
            FormatError::Json(_) => "Json",
            FormatError::Invalid(_) => "InvalidInput",
        };
        CliError::new(kind, e.to_string())
    }
}

fn invalid(message: String) -> CliError {
    CliError::new("InvalidInput", message)
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version land here too; clap picks the stream and code.
            let _ = e.print();
            return if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
        }
    };
    if let Ok(threads) = std::env::var("VALCONE_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
    let budget = cli
        .budget
        .map(Budget::new)
        .unwrap_or_else(Budget::unlimited);
    let outcome = dispatch(&cli, &budget);
    match outcome {
        Ok(run_output) => {
            match cli.format {
                OutputFormat::Csv => {
                    for path in &run_output.artifacts {
                        println!("wrote {}", path.display());
                    }
                }
                OutputFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&run_output.summary)
                            .expect("summary serializes")
                    );
                }
            }
            EXIT_OK
        }
        Err(err) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&err.document()).expect("error serializes")
            );
            err.code
        }
    }
}

struct RunOutput {
    summary: serde_json::Value,
    artifacts: Vec<PathBuf>,
}

fn dispatch(cli: &Cli, budget: &Budget) -> Result<RunOutput, CliError> {
    std::fs::create_dir_all(&cli.out)
        .map_err(|e| invalid(format!("cannot create {}: {e}", cli.out.display())))?;
    match &cli.command {
        Command::Length(args) => run_length(args, &cli.out, budget),
        Command::Theta(args) => run_theta(args, &cli.out, budget),
        Command::Degenerate(args) => run_degenerate(args, &cli.out, budget),
        Command::Tracecoords(args) => run_tracecoords(args, &cli.out, budget),
        Command::Minvec(args) => run_minvec(args, &cli.out),
        Command::Crossratio(args) => run_crossratio(args, &cli.out, budget),
        Command::DemoPinchTwist => run_demo(&cli.out),
    }
}

fn load_field_rep(path: &Path) -> Result<Representation<FieldElem>, CliError> {
    Ok(RepFile::load(path)?.to_field()?)
}

fn parse_norm_args(tokens: &[String]) -> Result<Vec<WeylNorm>, CliError> {
    let mut norms = Vec::new();
    for token in tokens.iter().flat_map(|t| t.split(',')) {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let norm = parse_norm(token)?;
        if !norms.contains(&norm) {
            norms.push(norm);
        }
    }
    Ok(norms)
}

fn rat_json(r: &Rat) -> serde_json::Value {
    json!({ "exact": rat_string(r), "decimal": rat_f64(r) })
}

fn coords_json(coords: &[Rat]) -> serde_json::Value {
    json!({
        "coords": coords.iter().map(rat_string).collect::<Vec<_>>(),
        "decimal": coords.iter().map(rat_f64).collect::<Vec<_>>(),
    })
}

fn length_csv_rows(lengths: &LengthFunction, norms: &[WeylNorm]) -> (Vec<String>, Vec<Vec<String>>) {
    let n = lengths
        .values
        .values()
        .next()
        .map(|v| v.coords().len())
        .unwrap_or(0);
    let mut header: Vec<String> = vec!["word".into()];
    for i in 1..=n {
        header.push(format!("l_{i}"));
    }
    for i in 1..=n {
        header.push(format!("l_{i}_decimal"));
    }
    for norm in norms {
        header.push(format!("norm_{norm}"));
        header.push(format!("norm_{norm}_decimal"));
    }
    let mut rows = Vec::new();
    for (word, vector) in &lengths.values {
        let mut row = vec![word.to_string()];
        for c in vector.coords() {
            row.push(rat_string(c));
        }
        for c in vector.coords() {
            row.push(rat_f64(c).to_string());
        }
        for norm in norms {
            let value = &lengths.scalarizations[norm][word];
            row.push(norm_value_string(value));
            row.push(value.to_f64().to_string());
        }
        rows.push(row);
    }
    (header, rows)
}

fn length_json(lengths: &LengthFunction, norms: &[WeylNorm]) -> serde_json::Value {
    let values: BTreeMap<String, serde_json::Value> = lengths
        .values
        .iter()
        .map(|(w, v)| (w.to_string(), coords_json(v.coords())))
        .collect();
    let scalarizations: BTreeMap<String, serde_json::Value> = norms
        .iter()
        .map(|norm| {
            let per_word: BTreeMap<String, serde_json::Value> = lengths.scalarizations[norm]
                .iter()
                .map(|(w, value)| {
                    (
                        w.to_string(),
                        json!({
                            "exact": norm_value_string(value),
                            "decimal": value.to_f64(),
                        }),
                    )
                })
                .collect();
            (norm.to_string(), json!(per_word))
        })
        .collect();
    json!({
        "denominator": lengths.value_denominator().to_string(),
        "words": lengths.words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "values": values,
        "scalarizations": scalarizations,
    })
}

fn run_length(args: &WordArgs, out: &Path, budget: &Budget) -> Result<RunOutput, CliError> {
    let rep = load_field_rep(&args.rep)?;
    let words = parse_words(&args.words)?;
    let norms = parse_norm_args(&args.norm)?;
    let lengths = length_function(&rep, &words, &norms, budget)?;
    let (header, rows) = length_csv_rows(&lengths, &norms);
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let csv_path = out.join("length.csv");
    let json_path = out.join("length.json");
    write_csv(&csv_path, &header_refs, &rows)?;
    let summary = length_json(&lengths, &norms);
    write_json(&json_path, &summary)?;
    Ok(RunOutput {
        summary,
        artifacts: vec![csv_path, json_path],
    })
}

fn run_theta(args: &WordArgs, out: &Path, budget: &Budget) -> Result<RunOutput, CliError> {
    let rep = load_field_rep(&args.rep)?;
    let words = parse_words(&args.words)?;
    let norms = parse_norm_args(&args.norm)?;
    if !norms.is_empty() {
        return Err(invalid(
            "theta reports normalized vectors; norms apply to `length`".into(),
        ));
    }
    let value = theta(&rep, &words, budget)?;
    let n = value
        .normalized
        .values()
        .next()
        .map(|v| v.coords().len())
        .unwrap_or(0);
    let mut header: Vec<String> = vec!["word".into()];
    for i in 1..=n {
        header.push(format!("theta_{i}"));
    }
    for i in 1..=n {
        header.push(format!("theta_{i}_decimal"));
    }
    let mut rows = Vec::new();
    let mut values = BTreeMap::new();
    for (word, vector) in &value.normalized {
        let mut row = vec![word.to_string()];
        for c in vector.coords() {
            row.push(rat_string(c));
        }
        for c in vector.coords() {
            row.push(rat_f64(c).to_string());
        }
        rows.push(row);
        values.insert(word.to_string(), coords_json(vector.coords()));
    }
    let mut denominator = num_bigint::BigInt::from(1);
    for v in value.normalized.values() {
        for c in v.coords() {
            denominator = num_integer::Integer::lcm(&denominator, c.denom());
        }
    }
    let summary = json!({
        "log_size": rat_json(&value.denominator),
        "denominator": denominator.to_string(),
        "values": values,
    });
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let csv_path = out.join("theta.csv");
    let json_path = out.join("theta.json");
    write_csv(&csv_path, &header_refs, &rows)?;
    write_json(&json_path, &summary)?;
    Ok(RunOutput {
        summary,
        artifacts: vec![csv_path, json_path],
    })
}

fn run_degenerate(
    args: &DegenerateArgs,
    out: &Path,
    budget: &Budget,
) -> Result<RunOutput, CliError> {
    let rep = load_field_rep(&args.rep)?;
    let words = parse_words(&args.words)?;
    let mut params = Vec::new();
    for token in args.specialize.split(',') {
        let token = token.trim();
        let s: f64 = token
            .parse()
            .map_err(|_| invalid(format!("bad parameter '{token}'")))?;
        params.push(s);
    }
    if params.is_empty() {
        return Err(invalid("no evaluation parameters given".into()));
    }
    if params[0] <= 1.0 || params.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid(
            "parameters must exceed 1 and increase strictly".into(),
        ));
    }
    let trace = cone_consistency(&rep, &words, &params, budget)?;
    let csv_path = out.join("degenerate.csv");
    let json_path = out.join("degenerate.json");
    write_degenerate_csv(&csv_path, &trace)?;
    let summary = serde_json::to_value(&trace).expect("trace serializes");
    write_json(&json_path, &summary)?;
    Ok(RunOutput {
        summary,
        artifacts: vec![csv_path, json_path],
    })
}

fn write_degenerate_csv(path: &Path, trace: &DegenerationTrace) -> Result<(), FormatError> {
    let n = trace
        .extrapolation
        .values()
        .next()
        .map(|e| e.exact.len())
        .unwrap_or(0);
    let mut header: Vec<String> = vec!["word".into(), "s".into(), "lambda".into()];
    for i in 1..=n {
        header.push(format!("rescaled_{i}"));
    }
    header.push("deviation".into());
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut rows = Vec::new();
    for word in trace.extrapolation.keys() {
        for sample in &trace.samples {
            let mut row = vec![word.clone(), sample.s.to_string(), sample.lambda.to_string()];
            for c in &sample.rescaled[word] {
                row.push(c.to_string());
            }
            row.push(sample.deviation[word].to_string());
            rows.push(row);
        }
    }
    write_csv(path, &header_refs, &rows)
}

fn run_tracecoords(
    args: &TracecoordsArgs,
    out: &Path,
    budget: &Budget,
) -> Result<RunOutput, CliError> {
    let rep = load_field_rep(&args.rep)?;
    let coords = trace_coordinates(&rep, args.cap, budget)?;
    let mut rows = Vec::new();
    let mut entries = BTreeMap::new();
    for (word, trace) in &coords.entries {
        let val = match trace.val() {
            Valuation::Finite(v) => rat_string(&v),
            Valuation::Infinite => "infinity".to_owned(),
        };
        rows.push(vec![word.to_string(), trace.to_string(), val.clone()]);
        entries.insert(
            word.to_string(),
            json!({ "trace": trace.to_string(), "valuation": val }),
        );
    }
    let summary = json!({ "entries": entries });
    let csv_path = out.join("tracecoords.csv");
    let json_path = out.join("tracecoords.json");
    write_csv(&csv_path, &["word", "trace", "valuation"], &rows)?;
    write_json(&json_path, &summary)?;
    Ok(RunOutput {
        summary,
        artifacts: vec![csv_path, json_path],
    })
}

fn minvec_document(outcome: &MinimizeOutcome) -> serde_json::Value {
    let generators: BTreeMap<String, Vec<Vec<f64>>> = outcome
        .rep
        .names()
        .map(|name| {
            let m = outcome.rep.generator(name).expect("name from iterator");
            let rows: Vec<Vec<f64>> = (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| *m.at(i, j)).collect())
                .collect();
            (name.clone(), rows)
        })
        .collect();
    json!({
        "converged": outcome.converged,
        "iterations": outcome.iterations,
        "norm_sq": outcome.norm_sq,
        "max_residual": outcome.report.max_abs,
        "residuals": outcome.report.residuals,
        "generators": generators,
    })
}

fn run_minvec(args: &MinvecArgs, out: &Path) -> Result<RunOutput, CliError> {
    if !(args.step > 0.0) || !(args.tol > 0.0) {
        return Err(invalid("step and tol must be positive".into()));
    }
    let rep = RepFile::load(&args.rep)?.to_real()?;
    let outcome = minimize_real(&rep, args.step, args.tol, args.max_iters)?;
    let summary = minvec_document(&outcome);
    let mut rows = Vec::new();
    for name in outcome.rep.names() {
        let m = outcome.rep.generator(name).expect("name from iterator");
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                rows.push(vec![
                    name.clone(),
                    i.to_string(),
                    j.to_string(),
                    m.at(i, j).to_string(),
                ]);
            }
        }
    }
    let csv_path = out.join("minvec.csv");
    let json_path = out.join("minvec.json");
    write_csv(&csv_path, &["generator", "row", "col", "value"], &rows)?;
    write_json(&json_path, &summary)?;
    Ok(RunOutput {
        summary,
        artifacts: vec![csv_path, json_path],
    })
}

fn run_crossratio(
    args: &CrossratioArgs,
    out: &Path,
    budget: &Budget,
) -> Result<RunOutput, CliError> {
    let rep = load_field_rep(&args.rep)?;
    let gamma = GroupWord::parse(&args.gamma).map_err(CliError::from)?;
    let g = rep.eval_word(&gamma, budget)?;
    let (attracting, repelling, x) = match &args.flags {
        Some(path) => {
            let file = FlagsFile::load(path)?;
            let (a_small, a_big) = file.attracting.matrices()?;
            let (r_small, r_big) = file.repelling.matrices()?;
            let (x_small, x_big) = file.x.matrices()?;
            (
                Flag::new(a_small, a_big)?,
                Flag::new(r_small, r_big)?,
                Flag::new(x_small, x_big)?,
            )
        }
        None => {
            let (attracting, repelling) = fixed_flags(&g, budget)?;
            let x = Flag::line(vec![FieldElem::one(), FieldElem::one()])?;
            (attracting, repelling, x)
        }
    };
    let k = attracting.k();
    let value = period(&rep, &gamma, &attracting, &repelling, &x, budget)?;
    let chi = chi_k_log(&g, k, budget)?;
    let matches = value == chi;
    let summary = json!({
        "gamma": gamma.to_string(),
        "k": k,
        "period": rat_json(&value),
        "chi_log": rat_json(&chi),
        "period_matches_jordan": matches,
    });
    let rows = vec![vec![
        gamma.to_string(),
        k.to_string(),
        rat_string(&value),
        rat_f64(&value).to_string(),
        rat_string(&chi),
        rat_f64(&chi).to_string(),
        matches.to_string(),
    ]];
    let csv_path = out.join("crossratio.csv");
    let json_path = out.join("crossratio.json");
    write_csv(
        &csv_path,
        &[
            "gamma",
            "k",
            "period",
            "period_decimal",
            "chi_log",
            "chi_log_decimal",
            "period_matches_jordan",
        ],
        &rows,
    )?;
    write_json(&json_path, &summary)?;
    Ok(RunOutput {
        summary,
        artifacts: vec![csv_path, json_path],
    })
}

fn write_demo_csv(path: &Path, report: &PinchTwistReport) -> Result<(), FormatError> {
    let mut rows = Vec::new();
    for (family, samples) in [("pinch", &report.pinch), ("twist", &report.twist)] {
        for word in &report.words {
            for sample in samples.iter() {
                let pair = sample.rescaled[word];
                rows.push(vec![
                    family.to_owned(),
                    word.clone(),
                    sample.k.to_string(),
                    sample.lambda.to_string(),
                    sample.scale.to_string(),
                    sample.trace_gap.to_string(),
                    pair[0].to_string(),
                    pair[1].to_string(),
                ]);
            }
        }
    }
    write_csv(
        path,
        &[
            "family",
            "word",
            "k",
            "lambda",
            "scale",
            "trace_gap",
            "length_top",
            "length_bottom",
        ],
        &rows,
    )
}

fn run_demo(out: &Path) -> Result<RunOutput, CliError> {
    let report = pinch_twist_demo();
    let summary = serde_json::to_value(&report).expect("report serializes");
    let csv_path = out.join("pinchtwist.csv");
    let json_path = out.join("pinchtwist.json");
    write_demo_csv(&csv_path, &report)?;
    write_json(&json_path, &summary)?;
    Ok(RunOutput {
        summary,
        artifacts: vec![csv_path, json_path],
    })
}
