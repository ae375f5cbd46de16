//! The `ktweb` command line: classification, batch processing, rank and
//! invariant queries, web rendering, the verification suite and the atlas.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ktweb::classify::{atlas, classify};
use ktweb::group::generator_matrix;
use ktweb::invariants::{surface_flags, Invariants, SurfaceFlags};
use ktweb::rational::format_rational;
use ktweb::testkit::{run_verify, VerifyOptions};
use ktweb::web::{render_svg, trace_web, WebRenderConfig};
use ktweb::{Error, KTParams};

pub mod records;

pub use records::{InvariantsRecord, ReportRecord, SingularSetRecord, TensorInputRecord};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    NotCharacteristic(String),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::NotCharacteristic(_) => 3,
            CliError::VerifyFailed(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "ktweb", version, about = "Orbit classification of Killing tensors in the Euclidean and Minkowski planes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct TensorArgs {
    /// Inline JSON record, path to a JSON file, or six comma-separated
    /// coefficients "A,B,C,alpha,beta,gamma". Reads standard input if absent.
    #[arg(long)]
    pub tensor: Option<String>,
    /// Metric for records without a "metric" field: euclidean or minkowski.
    #[arg(long)]
    pub metric: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify one tensor (or every record of a JSON file).
    Classify(TensorArgs),
    /// Classify newline-delimited JSON records, one report per line.
    Batch(TensorArgs),
    /// Rank of the generator matrix.
    Rank(TensorArgs),
    /// Fundamental invariants and surface membership.
    Invariants(TensorArgs),
    /// Render the separable web as SVG.
    Web {
        #[command(flatten)]
        input: TensorArgs,
        #[arg(long)]
        out: PathBuf,
        /// Drawing box "u0,u1,v0,v1".
        #[arg(long = "box", value_name = "u0,u1,v0,v1")]
        bbox: Option<String>,
        /// Seeds along the wider side of the box.
        #[arg(long)]
        seeds: Option<usize>,
        /// Integration step.
        #[arg(long)]
        step: Option<f64>,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Perturb a generator to check the suite notices.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Representative tensors of every orbit.
    Atlas,
}

/// Runs a parsed command line against the given streams.
pub fn run(cli: Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Classify(args) => {
            for (rec, k) in read_tensors(&args, stdin)? {
                let report = ReportRecord::new(rec.id, &k, &classify(&k));
                emit(out, &report)?;
            }
            Ok(())
        }
        Command::Batch(args) => batch(&args, stdin, out),
        Command::Rank(args) => {
            for (rec, k) in read_tensors(&args, stdin)? {
                let report = classify(&k);
                let m = generator_matrix(&k);
                let rows: Vec<Vec<String>> = (0..m.rows())
                    .map(|r| m.row(r).iter().map(format_rational).collect())
                    .collect();
                let mut v = json!({
                    "class": report.class.label(),
                    "rank": report.rank,
                    "expected_rank": report.class.expected_rank(),
                    "matrix": rows,
                });
                with_id(&mut v, rec.id);
                emit(out, &v)?;
            }
            Ok(())
        }
        Command::Invariants(args) => {
            for (rec, k) in read_tensors(&args, stdin)? {
                let mut v = json!({
                    "metric": k.signature.name(),
                    "invariants": InvariantsRecord::from(&Invariants::of(&k)),
                    "surfaces": surfaces(&k),
                });
                with_id(&mut v, rec.id);
                emit(out, &v)?;
            }
            Ok(())
        }
        Command::Web {
            input,
            out: path,
            bbox,
            seeds,
            step,
        } => {
            let tensors = read_tensors(&input, stdin)?;
            let [(_, k)] = <[_; 1]>::try_from(tensors)
                .map_err(|v: Vec<_>| CliError::Input(format!("web takes one tensor, got {}", v.len())))?;
            let mut cfg = WebRenderConfig::default();
            if let Some(b) = bbox {
                cfg = cfg.with_box(parse_box(&b)?);
            }
            if let Some(n) = seeds {
                cfg = cfg.with_seed_count(n);
            }
            if let Some(h) = step {
                cfg.step = h;
            }
            let doc = trace_web(&k, &cfg).map_err(|e| match e {
                Error::NotCharacteristic(c) => CliError::NotCharacteristic(format!(
                    "class {c} has no characteristic tensors; no web to draw"
                )),
                other => CliError::Input(other.to_string()),
            })?;
            write_atomic(&path, render_svg(&doc, &cfg).as_bytes())?;
            emit(
                out,
                &json!({
                    "out": path.display().to_string(),
                    "class": doc.class.map(|c| c.label()),
                    "solid": doc.foliation_solid.len(),
                    "dashed": doc.foliation_dashed.len(),
                    "regions": doc.singular_regions.len(),
                }),
            )
        }
        Command::Verify {
            trials,
            seed,
            inject_fault,
        } => {
            let report = run_verify(&VerifyOptions {
                trials,
                seed,
                inject_fault,
                ..VerifyOptions::default()
            });
            for item in &report.items {
                let tag = if item.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{tag} {}: {}", item.name, item.detail)?;
            }
            let items: Vec<Value> = report
                .items
                .iter()
                .map(|i| json!({"name": i.name, "passed": i.passed, "detail": i.detail}))
                .collect();
            emit(out, &json!({"passed": report.passed(), "items": items}))?;
            if report.passed() {
                Ok(())
            } else {
                let failed: Vec<&str> = report.items.iter().filter(|i| !i.passed).map(|i| i.name.as_str()).collect();
                Err(CliError::VerifyFailed(failed.join(", ")))
            }
        }
        Command::Atlas => {
            let entries: Vec<Value> = atlas()
                .into_iter()
                .map(|(class, k)| {
                    json!({
                        "class": class.label(),
                        "expected_rank": class.expected_rank(),
                        "web_name": class.web_name(),
                        "tensor": TensorInputRecord::from_params(&k, None),
                    })
                })
                .collect();
            emit(out, &entries)
        }
    }
}

fn emit<T: serde::Serialize>(out: &mut dyn Write, v: &T) -> Result<(), CliError> {
    let line = serde_json::to_string(v).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out, "{line}")?;
    Ok(())
}

fn with_id(v: &mut Value, id: Option<String>) {
    if let (Some(id), Some(obj)) = (id, v.as_object_mut()) {
        obj.insert("id".into(), Value::String(id));
    }
}

fn surfaces(k: &KTParams) -> BTreeMap<&'static str, bool> {
    match surface_flags(k) {
        SurfaceFlags::Euclidean(f) => BTreeMap::from([("S1", f.in_s1), ("S2", f.in_s2), ("S3", f.in_s3)]),
        SurfaceFlags::Minkowski(f) => BTreeMap::from([
            ("S1", f.in_s1),
            ("S2", f.in_s2),
            ("B1", f.in_b1),
            ("B2", f.in_b2),
            ("S3", f.in_s3),
            ("S4", f.in_s4()),
            ("S4_C1", f.in_s4_c1),
            ("S4_C2", f.in_s4_c2),
            ("S5", f.in_s5),
        ]),
    }
}

pub fn parse_box(s: &str) -> Result<[f64; 4], CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Input(format!("--box {s:?}: {e}")))?;
    <[f64; 4]>::try_from(parts).map_err(|_| CliError::Input(format!("--box needs four numbers, got {s:?}")))
}

/// Raw text behind `--tensor`: inline JSON, a file, or standard input.
fn tensor_text(args: &TensorArgs, stdin: &mut dyn Read) -> Result<String, CliError> {
    match args.tensor.as_deref() {
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            Ok(s)
        }
        Some(t) if t.trim_start().starts_with(['{', '[']) => Ok(t.to_string()),
        Some(t) if Path::new(t).is_file() => {
            std::fs::read_to_string(t).map_err(|e| CliError::Input(format!("{t}: {e}")))
        }
        Some(t) if t.contains(',') => Ok(t.to_string()),
        Some(t) => Err(CliError::Input(format!("--tensor {t:?} is neither JSON, a file nor a coefficient list"))),
    }
}

fn parse_record(v: Value, args: &TensorArgs) -> Result<(TensorInputRecord, KTParams), String> {
    let rec: TensorInputRecord = serde_json::from_value(v).map_err(|e| format!("invalid record: {e}"))?;
    let k = rec.to_params(args.metric.as_deref())?;
    Ok((rec, k))
}

fn coefficient_list(text: &str, args: &TensorArgs) -> Result<(TensorInputRecord, KTParams), String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [a, b, c, alpha, beta, gamma] =
        <[&str; 6]>::try_from(parts).map_err(|p| format!("expected six coefficients, got {}", p.len()))?;
    let s = |x: &str| Value::String(x.to_string());
    let rec = TensorInputRecord {
        metric: None,
        a: s(a),
        b: s(b),
        c: s(c),
        alpha: s(alpha),
        beta: s(beta),
        gamma: s(gamma),
        id: None,
    };
    let k = rec.to_params(args.metric.as_deref())?;
    Ok((rec, k))
}

/// Every tensor in the input: one JSON object, an array of them, a stream
/// of objects, or a coefficient list.
fn read_tensors(args: &TensorArgs, stdin: &mut dyn Read) -> Result<Vec<(TensorInputRecord, KTParams)>, CliError> {
    let text = tensor_text(args, stdin)?;
    let trimmed = text.trim();
    if !trimmed.starts_with(['{', '[']) {
        return coefficient_list(trimmed, args).map(|r| vec![r]).map_err(CliError::Input);
    }
    let mut values = Vec::new();
    for v in serde_json::Deserializer::from_str(trimmed).into_iter::<Value>() {
        match v.map_err(|e| CliError::Input(format!("invalid JSON: {e}")))? {
            Value::Array(items) => values.extend(items),
            other => values.push(other),
        }
    }
    if values.is_empty() {
        return Err(CliError::Input("no tensor given".into()));
    }
    values
        .into_iter()
        .map(|v| parse_record(v, args).map_err(CliError::Input))
        .collect()
}

fn batch(args: &TensorArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), CliError> {
    let reader: Box<dyn BufRead + '_> = match args.tensor.as_deref() {
        None => Box::new(BufReader::new(stdin)),
        Some(path) => Box::new(BufReader::new(
            std::fs::File::open(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?,
        )),
    };
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed = serde_json::from_str::<Value>(&line)
            .map_err(|e| format!("invalid JSON: {e}"))
            .and_then(|v| parse_record(v, args));
        match parsed {
            Ok((rec, k)) => emit(out, &ReportRecord::new(rec.id, &k, &classify(&k)))?,
            Err(msg) => emit(out, &json!({"line": n + 1, "error": msg}))?,
        }
    }
    Ok(())
}

/// Writes through a temporary file in the target directory so a failed run
/// never leaves a partial file behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}
