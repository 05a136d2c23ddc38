//! Command-line front end. [`run`] parses arguments, executes one command and
//! returns the rendered report with its exit code; the binary only prints.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bivector::Plane;
use crate::curvature::{
    ConeStatus, Model, OperatorError, OperatorFile, BIANCHI_TOL, CONE_TOL, SYMMETRY_TOL,
};
use crate::forms::{FormError, FormFile};
use crate::minimizer::{self, MinimizeError, MinimizeOptions};
use crate::sumword::{self, RewriteRules, SumWord, WordError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "biorth", version, about = "Biorthogonal curvature and 4-manifold classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Curvature quantities of an operator file or a named model.
    Curvature(CurvatureArgs),
    /// Classify an intersection form file or a connected-sum word.
    Classify(ClassifyArgs),
    /// List or export model operators.
    Models {
        #[command(subcommand)]
        action: ModelsAction,
    },
}

#[derive(Debug, Args)]
struct CurvatureArgs {
    /// Operator file (JSON with `dim` and `lambda2_matrix`).
    #[arg(conflicts_with = "model", required_unless_present = "model")]
    path: Option<PathBuf>,
    #[arg(long)]
    model: Option<String>,
    /// Dimension for the dimension-generic models.
    #[arg(long, requires = "model")]
    dim: Option<usize>,
    /// Cone boundary tolerance.
    #[arg(long, default_value_t = CONE_TOL)]
    tol: f64,
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Planes sampled by the independent oracle (0 disables it).
    #[arg(long, default_value_t = 100_000)]
    oracle_samples: usize,
    #[arg(long, default_value_t = 1e-10)]
    gtol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    /// Form file (JSON with `rank` and `matrix`).
    #[arg(conflicts_with = "word", required_unless_present = "word")]
    path: Option<PathBuf>,
    /// Connected-sum word such as "CP2 # 2*S2xS2".
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
    /// Treat definite forms as coming from smooth manifolds.
    #[arg(long)]
    assume_smoothable: bool,
    /// Rewrite only with CP2 # S2xS2 = 2*CP2 # CP2bar, not its mirror.
    #[arg(long)]
    paper_rules_only: bool,
}

#[derive(Debug, Subcommand)]
enum ModelsAction {
    List,
    Export {
        name: String,
        path: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
    },
}

/// A machine-readable report. Field order is fixed; nested maps are sorted.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub args: Vec<String>,
    pub input_digest: Option<String>,
    pub tool_version: &'static str,
    pub seed: Option<u64>,
    pub tolerances: Value,
    pub results: Value,
}

impl Report {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Outcome of one invocation: exactly one of `stdout` (a report, help or
/// version text) and `stderr` is non-empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl ToString) -> Self {
        Self { code, message: message.to_string() }
    }
}

impl From<OperatorError> for Failure {
    fn from(e: OperatorError) -> Self {
        let code = match &e {
            OperatorError::UnknownModel(_) => EXIT_USAGE,
            OperatorError::Minimize(MinimizeError::NoRestarts) => EXIT_USAGE,
            _ => EXIT_INVALID,
        };
        Failure::new(code, e)
    }
}

impl From<MinimizeError> for Failure {
    fn from(e: MinimizeError) -> Self {
        OperatorError::from(e).into()
    }
}

impl From<FormError> for Failure {
    fn from(e: FormError) -> Self {
        Failure::new(EXIT_INVALID, e)
    }
}

impl From<WordError> for Failure {
    fn from(e: WordError) -> Self {
        Failure::new(EXIT_INVALID, e)
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let args: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let result = match cli.command {
        Command::Curvature(a) => cmd_curvature(&a),
        Command::Classify(a) => cmd_classify(&a),
        Command::Models { action } => cmd_models(&action),
    };
    match result {
        Ok(mut report) => {
            report.args = args;
            Outcome { code: EXIT_OK, stdout: report.render(), stderr: String::new() }
        }
        Err(f) => Outcome { code: f.code, stdout: String::new(), stderr: format!("error: {}\n", f.message) },
    }
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_INVALID, format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::new(EXIT_INVALID, format!("{}: {e}", path.display())))
}

fn plane_json(p: &Plane) -> Value {
    json!({ "x": p.x(), "y": p.y() })
}

fn report(command: &str, digest: Option<String>, seed: Option<u64>, tolerances: Value, results: Value) -> Report {
    Report {
        command: command.into(),
        args: Vec::new(),
        input_digest: digest,
        tool_version: TOOL_VERSION,
        seed,
        tolerances,
        results,
    }
}

fn cmd_curvature(a: &CurvatureArgs) -> Result<Report, Failure> {
    let (op, source) = match (&a.path, &a.model) {
        (Some(path), _) => {
            let file: OperatorFile = read_json(path)?;
            (file.to_operator()?, json!({ "file": path.display().to_string() }))
        }
        (None, Some(name)) => {
            let model = Model::from_name(name, a.dim).map_err(|e| Failure::new(EXIT_USAGE, e))?;
            (model.operator()?, json!({ "model": model.name(), "dim": model.dim() }))
        }
        (None, None) => return Err(Failure::new(EXIT_USAGE, "an operator file or --model is required")),
    };
    let canonical = serde_json::to_vec(&OperatorFile::from_operator(&op)).expect("operator serializes");
    let opts = MinimizeOptions {
        restarts: a.restarts,
        seed: a.seed,
        gtol: a.gtol,
        max_iter: a.max_iter,
        ..MinimizeOptions::default()
    };
    let n = op.dim();

    let sec = op.min_sec(&opts)?;
    if !sec.converged {
        return Err(Failure::new(
            EXIT_NUMERICAL,
            format!("min sec: no restart reached gtol {} (best gradient norm {:e})", a.gtol, sec.grad_norm),
        ));
    }
    let mut results = json!({
        "source": source,
        "dim": n,
        "scal": op.scal(),
        "ricci_eigenvalues": op.ricci_eigenvalues(),
        "min_sec": {
            "value": sec.value,
            "witness": plane_json(&sec.witness),
            "restarts": sec.restarts_used,
            "converged_restarts": sec.converged_restarts,
        },
        "min_biorth": Value::Null,
        "cone": Value::Null,
    });
    if n >= 4 {
        let (value, witness, method) = if n == 4 {
            let (v, p) = op.min_biorth_exact4()?;
            (v, json!({ "sigma": plane_json(&p), "tau": plane_json(&p.orthogonal_plane().map_err(OperatorError::from)?) }), json!({ "method": "exact4" }))
        } else {
            let m = minimizer::minimize(&op, &opts)?;
            if !m.converged {
                return Err(Failure::new(
                    EXIT_NUMERICAL,
                    format!("min sec⊥: no restart reached gtol {} (best gradient norm {:e})", a.gtol, m.grad_norm),
                ));
            }
            (
                m.value,
                json!({ "sigma": plane_json(&m.witness.sigma()), "tau": plane_json(&m.witness.tau()) }),
                json!({
                    "method": "minimize",
                    "restarts": m.restarts_used,
                    "converged_restarts": m.converged_restarts,
                    "best_restart": m.best_restart,
                    "grad_norm": m.grad_norm,
                }),
            )
        };
        let oracle = if a.oracle_samples > 0 {
            json!({ "samples": a.oracle_samples, "min": minimizer::grid_oracle(&op, a.oracle_samples, a.seed)? })
        } else {
            Value::Null
        };
        let mut mb = method;
        mb["value"] = json!(value);
        mb["witness"] = witness;
        mb["oracle"] = oracle;
        results["min_biorth"] = mb;
        results["cone"] = json!({ "status": ConeStatus::classify(value, a.tol), "min_value": value, "tol": a.tol });
    }
    Ok(report(
        "curvature",
        Some(digest(&canonical)),
        Some(a.seed),
        json!({ "cone": a.tol, "gtol": a.gtol, "symmetry": SYMMETRY_TOL, "bianchi": BIANCHI_TOL }),
        results,
    ))
}

fn cmd_classify(a: &ClassifyArgs) -> Result<Report, Failure> {
    let rules = if a.paper_rules_only { RewriteRules::Literal } else { RewriteRules::WithMirror };
    let (verdict, input, canonical) = match (&a.path, &a.word) {
        (Some(path), _) => {
            let file: FormFile = read_json(path)?;
            let form = file.to_form()?;
            let canonical = serde_json::to_vec(&file).expect("form serializes");
            (crate::forms::theorem_verdict(&form, a.assume_smoothable)?, json!({ "file": path.display().to_string() }), canonical)
        }
        (None, Some(text)) => {
            let word = SumWord::parse(text)?;
            let rank = word_rank(&word);
            if rank > MAX_WORD_RANK {
                return Err(Failure::new(EXIT_INVALID, format!("word has rank {rank}, above the limit {MAX_WORD_RANK}")));
            }
            let mut input = json!({ "word": word.to_string() });
            if !word.has_e8() {
                input["normalized"] = json!(sumword::normalize(&word, rules)?.to_string());
            }
            (sumword::classify_word(&word, a.assume_smoothable, rules)?, input, word.to_string().into_bytes())
        }
        (None, None) => return Err(Failure::new(EXIT_USAGE, "a form file or --word is required")),
    };
    let mut results = serde_json::to_value(&verdict).expect("verdict serializes");
    results["input"] = input;
    results["rules"] = json!(if a.paper_rules_only { "literal" } else { "with_mirror" });
    results["assume_smoothable"] = json!(a.assume_smoothable);
    Ok(report("classify", Some(digest(&canonical)), None, json!({ "cone": CONE_TOL }), results))
}

/// Words are expanded into explicit matrices; this bounds their size.
pub const MAX_WORD_RANK: u64 = 1024;

fn word_rank(w: &SumWord) -> u64 {
    let [_, m, n, k, e, eb] = w.counts();
    m.saturating_add(n).saturating_add(k.saturating_mul(2)).saturating_add(e.saturating_add(eb).saturating_mul(8))
}

fn cmd_models(action: &ModelsAction) -> Result<Report, Failure> {
    match action {
        ModelsAction::List => {
            let models: Vec<Value> = Model::NAMES
                .iter()
                .map(|&name| {
                    let generic = Model::from_name(name, Some(5)).is_ok();
                    json!({ "name": name, "dimension_generic": generic })
                })
                .collect();
            Ok(report("models list", None, None, json!({}), json!({ "models": models })))
        }
        ModelsAction::Export { name, path, dim } => {
            let model = Model::from_name(name, *dim).map_err(|e| Failure::new(EXIT_USAGE, e))?;
            let file = OperatorFile::from_operator(&model.operator()?);
            let mut text = serde_json::to_string_pretty(&file).expect("operator serializes");
            text.push('\n');
            std::fs::write(path, &text)
                .map_err(|e| Failure::new(EXIT_INVALID, format!("cannot write {}: {e}", path.display())))?;
            let canonical = serde_json::to_vec(&file).expect("operator serializes");
            Ok(report(
                "models export",
                Some(digest(&canonical)),
                None,
                json!({}),
                json!({ "model": model.name(), "dim": model.dim(), "path": path.display().to_string() }),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("biorth").chain(args.iter().copied()))
    }

    fn results(out: &Outcome) -> Value {
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        serde_json::from_str::<Value>(&out.stdout).unwrap()["results"].clone()
    }

    #[test]
    fn curvature_models() {
        let r = results(&run_args(&["curvature", "--model", "S3xR", "--restarts", "8"]));
        assert!((r["min_biorth"]["value"].as_f64().unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(r["cone"]["status"], "inside");
        let r = results(&run_args(&["curvature", "--model", "S2xR2", "--restarts", "8"]));
        assert!(r["min_biorth"]["value"].as_f64().unwrap().abs() < 1e-12);
        assert_eq!(r["cone"]["status"], "boundary");
        let r = results(&run_args(&["curvature", "--model", "CP2_fubini_study", "--restarts", "8"]));
        assert!((r["min_sec"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
        assert!((r["min_biorth"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(r["cone"]["status"], "inside");
        let r = results(&run_args(&["curvature", "--model", "flat", "--dim", "5", "--restarts", "4", "--oracle-samples", "100"]));
        assert_eq!(r["scal"], 0.0);
        assert_eq!(r["min_sec"]["value"], 0.0);
        assert_eq!(r["min_biorth"]["value"], 0.0);
        let r = results(&run_args(&["curvature", "--model", "round_sphere", "--dim", "3", "--restarts", "4"]));
        assert!(r["min_biorth"].is_null() && r["cone"].is_null());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["curvature", "--model", "nope"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["curvature"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["curvature", "--model", "S3xR", "--dim", "5"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["bogus"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).code, EXIT_OK);
        assert_eq!(run_args(&["classify", "--word", "CP2 ## S4"]).code, EXIT_INVALID);
        assert_eq!(run_args(&["curvature", "/nonexistent/op.json"]).code, EXIT_INVALID);
        let bad = run_args(&["classify", "--word", "100000*E8"]);
        assert_eq!(bad.code, EXIT_INVALID);
        assert!(bad.stdout.is_empty());
    }

    #[test]
    fn classify_words() {
        let r = results(&run_args(&["classify", "--word", "E8 # S2xS2"]));
        assert_eq!(r["holds"], false);
        assert_eq!(r["a_hat"], "-1");
        let r = results(&run_args(&["classify", "--word", "CP2 # S2xS2"]));
        assert_eq!(r["class"]["tag"], "mCP2_nCP2bar");
        assert_eq!((r["class"]["m"].as_u64(), r["class"]["n"].as_u64()), (Some(2), Some(1)));
        assert_eq!(r["canonical_word"], "2*CP2 # CP2bar");
        let r = results(&run_args(&["classify", "--word", "-E8 # 2*S2xS2"]));
        assert_eq!(r["class"]["tag"], "E8_family");
        assert_eq!(r["a_hat"], "1");
    }

    #[test]
    fn models_list() {
        let r = results(&run_args(&["models", "list"]));
        assert_eq!(r["models"].as_array().unwrap().len(), 7);
    }
}
